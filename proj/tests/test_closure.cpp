#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "malcev/closure.hpp"
#include "malcev/linear_terms.hpp"

using namespace malcev;

namespace {

const FiniteDomain b2{2};

Operation op(int arity, const std::string& digits) {
  std::vector<Value> table;
  for (char c : digits) table.push_back(static_cast<Value>(c - '0'));
  return Operation(b2, arity, std::move(table));
}

std::size_t member_count(const ClosedSetFragment& frag) {
  std::size_t total = 0;
  for (int n = 1; n <= frag.max_arity; ++n) {
    total += frag.members[static_cast<std::size_t>(n)].size();
  }
  return total;
}

}  // namespace

TEST_CASE("projections alone close to all projections") {
  const auto frag = generate(b2, {}, 3, true, false);
  CHECK(member_count(frag) == 1 + 2 + 3);
  for (int n = 1; n <= 3; ++n) {
    for (int i = 1; i <= n; ++i) {
      CHECK(closure_contains(frag, projection(b2, n, i)));
    }
  }
  CHECK(min_arity(frag) == 1);
}

TEST_CASE("no generators, no projections") {
  const auto frag = generate(b2, {}, 3, false, false);
  CHECK(member_count(frag) == 0);
  CHECK_THROWS_AS(min_arity(frag), input_error);
}

TEST_CASE("binary part of the mu3 closure has no fused variables") {
  const auto without = generate(b2, {{"mu3", mu(3, b2)}}, 2, true, false);
  CHECK(without.members[2] ==
        std::set<std::vector<Value>>{{0, 0, 1, 1}, {0, 1, 0, 1}});
  const auto with_delta = generate(b2, {{"mu3", mu(3, b2)}}, 2, true, true);
  CHECK(with_delta.members[2].count({0, 1, 1, 0}) == 1);
}

TEST_CASE("membership respects the arity bound") {
  const auto frag = generate(b2, {{"mu3", mu(3, b2)}}, 4, true, false);
  CHECK(closure_contains(frag, mu(3, b2)));
  CHECK_FALSE(closure_contains(frag, mu(4, b2)));
  CHECK_THROWS_AS(closure_contains(frag, projection(b2, 5, 1)), input_error);

  const auto both =
      generate(b2, {{"mu3", mu(3, b2)}, {"mu4", mu(4, b2)}}, 4, true, false);
  CHECK(closure_contains(both, mu(4, b2)));
}

TEST_CASE("minimum arity without projections") {
  const auto frag = generate(b2, {{"mu3", mu(3, b2)}}, 4, false, false);
  CHECK(min_arity(frag) == 3);
  const auto binary = generate(b2, {{"and", op(2, "0001")}}, 3, false, false);
  CHECK(min_arity(binary) == 2);
}

TEST_CASE("image sets") {
  const auto projections = generate(b2, {}, 3, true, false);
  const Matrix m(b2, 2, {{0, 1}, {1, 1}});
  const auto images = image_set(projections, m);
  CHECK(images == std::set<std::vector<Value>>{{0, 1}, {1, 1}});

  const Matrix single(b2, 2, {{1, 0}});
  CHECK(image_set(projections, single) ==
        std::set<std::vector<Value>>{{1, 0}});

  const auto with_mu = generate(b2, {{"mu3", mu(3, b2)}}, 3, true, false);
  std::vector<std::vector<Value>> cols(3, std::vector<Value>(8));
  for (int r = 0; r < 8; ++r) {
    const auto t = tuple_unrank(static_cast<PointRank>(r), 3, b2);
    for (int j = 0; j < 3; ++j) cols[j][r] = t[j];
  }
  const auto images8 = image_set(with_mu, Matrix(b2, 8, cols));
  CHECK(images8.count({0, 1, 1, 1, 1, 1, 1, 0}) == 1);
  for (int j = 0; j < 3; ++j) CHECK(images8.count(cols[j]) == 1);
  CHECK_THROWS_AS(image_set(with_mu, Matrix::empty(b2, 8)), input_error);
}

TEST_CASE("image sets grow along submatrices") {
  const auto frag = generate(b2, {{"mu3", mu(3, b2)}}, 3, true, false);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int rows = 2 + static_cast<int>(rng() % 3);
    auto column = [&]() {
      std::vector<Value> c(static_cast<std::size_t>(rows));
      for (Value& v : c) v = static_cast<Value>(rng() % 2);
      return c;
    };
    const int base_cols = 1 + static_cast<int>(rng() % 2);
    std::vector<std::vector<Value>> cols;
    for (int j = 0; j < base_cols; ++j) cols.push_back(column());
    const Matrix small(b2, rows, cols);
    cols.push_back(column());
    const Matrix big(b2, rows, cols);
    const auto small_images = image_set(frag, small);
    const auto big_images = image_set(frag, big);
    for (const auto& image : small_images) {
      CHECK(big_images.count(image) == 1);
    }
  }
}

TEST_CASE("generated fragments are fixpoints") {
  const std::vector<ClosedSetFragment> frags = {
      generate(b2, {{"mu3", mu(3, b2)}}, 4, true, false),
      generate(b2, {{"xor", op(2, "0110")}, {"not", op(1, "10")}}, 3, true,
               true),
      generate(b2, {{"and", op(2, "0001")}}, 3, false, false),
  };
  for (const auto& frag : frags) {
    const std::vector<Operation> members = fragment_members(frag);
    for (const Operation& f : members) {
      CHECK(closure_contains(frag, zeta(f)));
      CHECK(closure_contains(frag, tau(f)));
      if (frag.with_delta) CHECK(closure_contains(frag, delta(f)));
      if (f.arity() + 1 <= frag.max_arity) {
        CHECK(closure_contains(frag, nabla(f)));
      }
      for (const Operation& g : members) {
        if (f.arity() + g.arity() - 1 <= frag.max_arity) {
          CHECK(closure_contains(frag, star(f, g)));
        }
      }
    }
  }
}

TEST_CASE("arity bounding is sound") {
  const std::vector<std::vector<std::pair<std::string, Operation>>> seeds = {
      {},
      {{"mu3", mu(3, b2)}},
      {{"and", op(2, "0001")}},
      {{"xor", op(2, "0110")}, {"not", op(1, "10")}},
  };
  for (const auto& gens : seeds) {
    for (int n = 1; n <= 3; ++n) {
      const auto bounded = generate(b2, gens, n, true, false);
      const auto wider = generate(b2, gens, n + 1, true, false);
      for (int a = 1; a <= n; ++a) {
        CHECK(bounded.members[static_cast<std::size_t>(a)] ==
              wider.members[static_cast<std::size_t>(a)]);
      }
    }
  }
}

TEST_CASE("generation is monotone in generators and bound") {
  const auto less = generate(b2, {{"mu3", mu(3, b2)}}, 4, true, false);
  const auto more =
      generate(b2, {{"mu3", mu(3, b2)}, {"and", op(2, "0001")}}, 4, true,
               false);
  for (int n = 1; n <= 4; ++n) {
    for (const auto& table : less.members[static_cast<std::size_t>(n)]) {
      CHECK(more.contains_table(n, table));
    }
  }
}

TEST_CASE("separating a non-member from the projections") {
  const auto projections = generate(b2, {}, 3, true, false);
  const Operation and2 = op(2, "0001");
  const System sep = separating_system(projections, and2);
  CHECK(sep.arity == 4);
  CHECK(sep.breadth == 2);
  CHECK(is_valid(sep));
  for (const Operation& f : fragment_members(projections)) {
    CHECK(preserves_system(f, sep));
  }
  CHECK_FALSE(preserves_system(and2, sep));
}

TEST_CASE("separating rejects members") {
  const auto projections = generate(b2, {}, 3, true, false);
  CHECK_THROWS_AS(separating_system(projections, projection(b2, 2, 1)),
                  std::logic_error);
}

TEST_CASE("every non-member of the projections is separated") {
  const auto projections = generate(b2, {}, 2, true, false);
  for (int n = 1; n <= 2; ++n) {
    const std::uint64_t cells = b2.power(n);
    std::vector<Value> table(cells, 0);
    for (std::uint64_t t = 0; t < (1ull << cells); ++t) {
      const Operation g(b2, n, table);
      if (!closure_contains(projections, g)) {
        // construction-time assertions check both separation directions
        CHECK(is_valid(separating_system(projections, g)));
      }
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
}

TEST_CASE("separation from the empty fragment") {
  const auto empty = generate(b2, {}, 3, false, false);
  const Operation and2 = op(2, "0001");
  const System sep = separating_system(empty, and2);
  CHECK(sep.ante.size() == 1);
  CHECK(sep.cons.empty());
  CHECK_FALSE(preserves_system(and2, sep));
}

TEST_CASE("separation works without projections") {
  const auto frag = generate(b2, {{"xor", op(2, "0110")}}, 3, false, false);
  CHECK(min_arity(frag) == 2);
  const Operation and2 = op(2, "0001");
  REQUIRE_FALSE(closure_contains(frag, and2));
  const System sep = separating_system(frag, and2);
  CHECK(is_valid(sep));
  for (const Operation& f : fragment_members(frag)) {
    CHECK(preserves_system(f, sep));
  }
  CHECK_FALSE(preserves_system(and2, sep));
}
