#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "malcev/preservation.hpp"

using namespace malcev;

namespace {

const FiniteDomain b2{2};

Operation op(int arity, const std::string& digits) {
  std::vector<Value> table;
  for (char c : digits) table.push_back(static_cast<Value>(c - '0'));
  return Operation(b2, arity, std::move(table));
}

std::vector<Operation> boolean_ops_up_to(int max_arity) {
  std::vector<Operation> out;
  for (int n = 1; n <= max_arity; ++n) {
    const std::uint64_t cells = b2.power(n);
    std::vector<Value> table(cells, 0);
    for (std::uint64_t t = 0; t < (1ull << cells); ++t) {
      out.emplace_back(b2, n, table);
      std::size_t i = cells;
      while (i > 0) {
        --i;
        if (table[i] + 1 < 2) {
          ++table[i];
          break;
        }
        table[i] = 0;
      }
    }
  }
  return out;
}

const System ex1{b2, 1, 1, {Multiset(b2, 1, {0})}, {}};

}  // namespace

TEST_CASE("relation preservation") {
  const Relation leq(b2, 2, {0, 1, 3});
  const Relation neq(b2, 2, {1, 2});
  const Operation and2 = op(2, "0001");
  for (int n = 1; n <= 3; ++n) {
    for (int i = 1; i <= n; ++i) {
      CHECK(preserves_relation(projection(b2, n, i), leq));
      CHECK(preserves_relation(projection(b2, n, i), neq));
    }
  }
  CHECK(preserves_relation(and2, leq));
  CHECK_FALSE(preserves_relation(and2, neq));
  CHECK(preserves_relation(op(1, "10"), neq));  // negation swaps the pair
  CHECK(preserves_relation(and2, Relation(b2, 2, {})));
}

TEST_CASE("system preservation against the minimum-arity witness") {
  CHECK_FALSE(preserves_system(projection(b2, 1, 1), ex1));
  CHECK_FALSE(preserves_system(op(1, "10"), ex1));
  for (const Operation& f : boolean_ops_up_to(2)) {
    if (f.arity() == 2) CHECK(preserves_system(f, ex1));
  }
}

TEST_CASE("everything preserves the empty system") {
  const System empty = empty_system(b2, 1, 2);
  for (const Operation& f : boolean_ops_up_to(2)) {
    CHECK(preserves_system(f, empty));
  }
}

TEST_CASE("everything of small arity preserves the trivial system") {
  const System t2 = trivial_system(b2, 1, 2);
  for (const Operation& f : boolean_ops_up_to(2)) {
    CHECK(preserves_system(f, t2));
  }
}

TEST_CASE("characterized operations, no constraints") {
  const std::vector<System> w{empty_system(b2, 1, 1)};
  CHECK(characterized_ops(w, b2, 2).size() == 4 + 16);
  CHECK(characterized_ops({}, b2, 2).size() == 4 + 16);
}

TEST_CASE("characterized operations of the minimum-arity witness") {
  const std::vector<System> w{ex1};
  const auto ops = characterized_ops(w, b2, 2);
  CHECK(ops.size() == 16);
  for (const Operation& f : ops) CHECK(f.arity() == 2);
}

TEST_CASE("relation systems characterize polymorphisms") {
  const std::set<PointRank> tuples{0, 1, 3};
  const Relation leq(b2, 2, tuples);
  const System sys = system_from_relation(b2, 2, tuples, 3);
  const std::vector<System> w{sys};
  for (const Operation& f : characterized_ops(w, b2, 2)) {
    CHECK(preserves_relation(f, leq));
  }
  for (const Operation& f : boolean_ops_up_to(2)) {
    CHECK(preserves_relation(f, leq) == preserves_system(f, sys));
  }
}

TEST_CASE("all_preserve") {
  CHECK(all_preserve({}, ex1));
  std::vector<Operation> projections;
  for (int n = 1; n <= 2; ++n) {
    for (int i = 1; i <= n; ++i) projections.push_back(projection(b2, n, i));
  }
  for (std::uint32_t b = 0; b <= 3; ++b) {
    for (int m = 1; m <= 2; ++m) {
      CHECK(all_preserve(projections, equality_system(b2, m, b)));
    }
  }
  const std::vector<Operation> just_and{op(2, "0001")};
  CHECK(all_preserve(just_and, ex1));
}

TEST_CASE("preservation is monotone under shrinking ante, growing cons") {
  const System leq = system_from_relation(b2, 2, {0, 1, 3}, 2);
  std::set<Multiset> singles;
  for (const PointedMultiset& ps : leq.cons) singles.insert(ps.underlying());
  const System weaker = restrict_antecedent(leq, singles);
  for (const Operation& f : boolean_ops_up_to(2)) {
    if (preserves_system(f, leq)) CHECK(preserves_system(f, weaker));
  }
}

namespace {

// Raw oracle: lay every antecedent member out as a matrix in every column
// order, split off the first arity(f) columns, and test the image pair
// directly.  Quantifying over full orderings mirrors the matrix definition
// with no arrangement-level shortcuts.
bool oracle_preserves(const Operation& f, const System& sys) {
  const int n = f.arity();
  for (const Multiset& s : sys.ante) {
    const int total = static_cast<int>(s.cardinality());
    if (total < n) continue;
    for (const Arrangement& order : enumerate_arrangements(s, total)) {
      std::vector<std::vector<Value>> m1;
      for (int j = 0; j < n; ++j) {
        m1.push_back(tuple_unrank(order.chosen[static_cast<std::size_t>(j)],
                                  sys.arity, sys.dom));
      }
      std::vector<Value> image(static_cast<std::size_t>(sys.arity));
      std::vector<Value> row(static_cast<std::size_t>(n));
      for (int i = 0; i < sys.arity; ++i) {
        for (int j = 0; j < n; ++j) {
          row[static_cast<std::size_t>(j)] =
              m1[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        }
        image[static_cast<std::size_t>(i)] = f(row);
      }
      const std::vector<PointRank> leftover(
          order.chosen.begin() + n, order.chosen.end());
      const PointedMultiset probe{
          tuple_rank(image, sys.dom),
          Multiset(sys.dom, sys.arity, leftover)};
      if (sys.cons.count(probe) == 0) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("preservation agrees with the raw matrix oracle") {
  std::vector<System> family = {
      ex1,
      empty_system(b2, 1, 2),
      trivial_system(b2, 1, 2),
      trivial_system(b2, 2, 2),
      equality_system(b2, 2, 3),
      system_from_relation(b2, 2, {0, 1, 3}, 3),
      system_from_relation(b2, 2, {1, 2}, 3),
      system_from_relation(b2, 1, {1}, 3),
  };
  const System leq = system_from_relation(b2, 2, {0, 1, 3}, 2);
  std::set<Multiset> singles;
  for (const PointedMultiset& ps : leq.cons) singles.insert(ps.underlying());
  family.push_back(restrict_antecedent(leq, singles));
  for (const System& sys : family) {
    for (const Operation& f : boolean_ops_up_to(2)) {
      CHECK(preserves_system(f, sys) == oracle_preserves(f, sys));
    }
  }
}

TEST_CASE("characterized sets are closed under the operations") {
  const std::vector<std::vector<System>> families = {
      {ex1},
      {system_from_relation(b2, 2, {0, 1, 3}, 4)},
      {equality_system(b2, 2, 4)},
      {system_from_relation(b2, 2, {1, 2}, 4), ex1},
  };
  for (const auto& w : families) {
    const std::vector<Operation> members = characterized_ops(w, b2, 3);
    std::set<Operation> set(members.begin(), members.end());
    auto contains = [&](const Operation& f) { return set.count(f) != 0; };
    for (const Operation& f : members) {
      CHECK(contains(zeta(f)));
      CHECK(contains(tau(f)));
      if (f.arity() + 1 <= 3) CHECK(contains(nabla(f)));
      for (const Operation& g : members) {
        if (f.arity() + g.arity() - 1 <= 3) CHECK(contains(star(f, g)));
      }
    }
  }
}
