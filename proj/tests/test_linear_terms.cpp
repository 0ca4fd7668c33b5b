#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "malcev/closure.hpp"
#include "malcev/linear_terms.hpp"

using namespace malcev;

namespace {

const FiniteDomain b2{2};
const FiniteDomain b3{3};

const Signature mu_sig{{{"mu3", 3}}};

Term v(int i) { return Term::variable(i); }
Term f3(Term a, Term b, Term c) {
  return Term::apply(0, {std::move(a), std::move(b), std::move(c)});
}

// weight-based oracle for the mu family, written independently of mu()
Operation mu_oracle(int n, FiniteDomain dom) {
  std::vector<Value> table(dom.power(n), 0);
  for (std::uint64_t r = 0; r < table.size(); ++r) {
    int ones = 0;
    bool binary = true;
    std::uint64_t rest = r;
    for (int i = 0; i < n; ++i) {
      const auto digit = rest % dom.size;
      rest /= dom.size;
      if (digit > 1) binary = false;
      if (digit == 1) ++ones;
    }
    if (binary && (ones == 1 || ones == n - 1)) table[r] = 1;
  }
  return Operation(dom, n, std::move(table));
}

}  // namespace

TEST_CASE("linearity") {
  CHECK(is_linear(v(1)));
  CHECK(is_linear(f3(v(1), v(2), v(3))));
  CHECK_FALSE(is_linear(f3(v(1), v(1), v(2))));
  CHECK_FALSE(is_linear(f3(v(2), f3(v(1), v(3), v(4)), v(3))));
}

TEST_CASE("complexity") {
  CHECK(complexity(v(4)) == 0);
  CHECK(complexity(f3(v(1), v(2), v(3))) == 1);
  CHECK(complexity(f3(f3(v(1), v(2), v(3)), v(4), v(5))) == 2);
}

TEST_CASE("evaluation") {
  const std::vector<Operation> assignment{mu(3, b2)};
  for (int n = 1; n <= 3; ++n) {
    for (int i = 1; i <= n; ++i) {
      CHECK(eval_term(v(i), mu_sig, assignment, n) == projection(b2, n, i));
    }
  }
  CHECK(eval_term(f3(v(1), v(2), v(3)), mu_sig, assignment, 3) == mu(3, b2));
  CHECK(eval_term(f3(v(2), v(3), v(4)), mu_sig, assignment, 4) ==
        nabla(mu(3, b2)));
  CHECK_THROWS_AS(eval_term(f3(v(1), v(2), v(5)), mu_sig, assignment, 4),
                  input_error);
  CHECK_THROWS_AS(eval_term(Term::apply(0, {v(1)}), mu_sig, assignment, 3),
                  input_error);
}

TEST_CASE("mu tables") {
  CHECK(mu(3, b2).table() ==
        std::vector<Value>{0, 1, 1, 1, 1, 1, 1, 0});
  CHECK(mu(3, b2) == mu_oracle(3, b2));
  CHECK(mu(4, b2) == mu_oracle(4, b2));
  CHECK(mu(5, b2) == mu_oracle(5, b2));
  CHECK(mu(3, b3) == mu_oracle(3, b3));
  CHECK_THROWS_AS(mu(2, b2), input_error);
  CHECK_THROWS_AS(mu(3, FiniteDomain{1}), input_error);
}

TEST_CASE("mu on a larger domain vanishes off the 0/1 grid") {
  const Operation m = mu(3, b3);
  for (PointRank r = 0; r < b3.power(3); ++r) {
    const auto t = tuple_unrank(r, 3, b3);
    if (std::find(t.begin(), t.end(), Value{2}) != t.end()) {
      CHECK(m.value_at(r) == 0);
    }
  }
}

TEST_CASE("mu is totally symmetric") {
  for (int n = 3; n <= 5; ++n) {
    const Operation m = mu(n, b2);
    CHECK(zeta(m) == m);
    CHECK(tau(m) == m);
  }
  CHECK(zeta(mu(3, b3)) == mu(3, b3));
  CHECK(tau(mu(3, b3)) == mu(3, b3));
}

TEST_CASE("mu boundary values") {
  for (int n = 3; n <= 6; ++n) {
    const Operation m = mu(n, b2);
    CHECK(m.value_at(0) == 0);  // all-zero input
    // 1 followed by zeroes has weight 1
    CHECK(m.value_at(b2.power(n - 1)) == 1);
  }
}

TEST_CASE("complexity zero yields the projections") {
  const std::vector<Operation> assignment{mu(3, b2)};
  for (int n = 1; n <= 3; ++n) {
    const auto ops = linear_term_ops(mu_sig, assignment, n, 0);
    CHECK(ops.size() == static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
      CHECK(ops.count(projection(b2, n, i)) == 1);
    }
  }
}

TEST_CASE("one application adds only the generator at arity three") {
  const std::vector<Operation> assignment{mu(3, b2)};
  const auto ops = linear_term_ops(mu_sig, assignment, 3, 1);
  CHECK(ops.size() == 4);
  CHECK(ops.count(mu(3, b2)) == 1);
}

TEST_CASE("term enumeration saturates onto the closure fragment") {
  const std::vector<Operation> assignment{mu(3, b2)};
  const auto frag = generate(b2, {{"mu3", mu(3, b2)}}, 3, true, false);
  for (int n = 1; n <= 3; ++n) {
    const auto ops = linear_term_ops(mu_sig, assignment, n, 4);
    std::set<Operation> expected;
    for (const auto& table : frag.members[static_cast<std::size_t>(n)]) {
      expected.insert(Operation(b2, n, table));
    }
    CHECK(ops == expected);
    CHECK(linear_term_ops(mu_sig, assignment, n, 5) == ops);
    // every term operation lands in the closure
    for (const Operation& f : ops) CHECK(closure_contains(frag, f));
  }
}

TEST_CASE("terms over two symbols reach mixed compositions") {
  const Signature sig{{{"xor", 2}, {"not", 1}}};
  const Operation xor2(b2, 2, {0, 1, 1, 0});
  const Operation not1(b2, 1, {1, 0});
  const std::vector<Operation> assignment{xor2, not1};
  const auto ops = linear_term_ops(sig, assignment, 2, 3);
  CHECK(ops.count(xor2) == 1);
  CHECK(ops.count(Operation(b2, 2, {1, 0, 0, 1})) == 1);  // negated xor
  const auto frag = generate(
      b2, {{"xor", xor2}, {"not", not1}}, 2, true, false);
  for (const Operation& f : ops) CHECK(closure_contains(frag, f));
}
