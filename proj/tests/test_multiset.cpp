#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "malcev/multiset.hpp"

using namespace malcev;

namespace {

const FiniteDomain b2{2};
const FiniteDomain b3{3};

Multiset ms(std::vector<PointRank> points, int arity = 1,
            FiniteDomain dom = b2) {
  return Multiset(dom, arity, std::move(points));
}

// Independent partition oracle: enumerate set partitions of the expanded
// element list by index, map blocks to value multisets, and count the
// distinct outcomes.
int brute_force_partition_count(const Multiset& s, std::uint32_t min_block) {
  const std::vector<PointRank> items = s.expand();
  std::set<std::multiset<std::multiset<PointRank>>> seen;
  std::vector<std::vector<std::size_t>> blocks;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == items.size()) {
      std::multiset<std::multiset<PointRank>> shape;
      for (const auto& block : blocks) {
        if (block.size() < min_block) return;
        std::multiset<PointRank> values;
        for (std::size_t idx : block) values.insert(items[idx]);
        shape.insert(std::move(values));
      }
      seen.insert(std::move(shape));
      return;
    }
    const std::size_t count = blocks.size();
    for (std::size_t b = 0; b < count; ++b) {
      blocks[b].push_back(i);
      self(self, i + 1);
      blocks[b].pop_back();
    }
    blocks.push_back({i});
    self(self, i + 1);
    blocks.pop_back();
  };
  rec(rec, 0);
  return static_cast<int>(seen.size());
}

}  // namespace

TEST_CASE("join") {
  CHECK(join(ms({0}), ms({})) == ms({0}));
  CHECK(join(ms({0}), ms({0})) == ms({0, 0}));
}

TEST_CASE("join universes must match") {
  CHECK_THROWS_AS(join(ms({0}), ms({0}, 2)), input_error);
  CHECK_THROWS_AS(join(ms({0}), ms({0}, 1, b3)), input_error);
}

TEST_CASE("join adds multiplicities") {
  const Multiset a = ms({0, 1}, 1, b3);
  const Multiset b = ms({1, 2}, 1, b3);
  CHECK(join(a, b) == ms({0, 1, 1, 2}, 1, b3));
  CHECK(join(a, b).cardinality() == 4);
}

TEST_CASE("difference") {
  CHECK(difference(ms({0, 0, 1}), ms({0})) == ms({0, 1}));
  CHECK(difference(ms({0}), ms({0, 0})) == ms({}));
  const Multiset s = ms({0, 1, 1});
  CHECK(difference(s, ms({})) == s);
}

TEST_CASE("submultiset") {
  CHECK(is_submultiset(ms({}), ms({0, 0, 1})));
  CHECK_FALSE(is_submultiset(ms({0, 0}), ms({0})));
  CHECK(is_submultiset(ms({0, 1}), ms({0, 1, 1})));
}

TEST_CASE("submultiset is a partial order") {
  const std::vector<Multiset> sets = all_multisets(b2, 1, 3);
  for (const Multiset& a : sets) {
    CHECK(is_submultiset(a, a));
    for (const Multiset& b : sets) {
      if (is_submultiset(a, b) && is_submultiset(b, a)) CHECK(a == b);
      for (const Multiset& c : sets) {
        if (is_submultiset(a, b) && is_submultiset(b, c)) {
          CHECK(is_submultiset(a, c));
        }
      }
    }
  }
}

TEST_CASE("join and difference cancel") {
  const std::vector<Multiset> sets = all_multisets(b2, 1, 3);
  for (const Multiset& a : sets) {
    for (const Multiset& b : sets) {
      CHECK(difference(join(a, b), b) == a);
      CHECK(join(a, b) == join(b, a));
      for (const Multiset& c : sets) {
        CHECK(join(join(a, b), c) == join(a, join(b, c)));
      }
    }
  }
}

TEST_CASE("columns multiset") {
  CHECK(columns_multiset(Matrix::empty(b2, 2)) == Multiset(b2, 2));
  const Matrix twice(b2, 2, {{0, 1}, {0, 1}});
  CHECK(columns_multiset(twice) ==
        Multiset(b2, 2, {tuple_rank(std::vector<Value>{0, 1}, b2),
                         tuple_rank(std::vector<Value>{0, 1}, b2)}));
  const Matrix mixed(b2, 2, {{0, 0}, {1, 1}, {0, 0}});
  CHECK(columns_multiset(mixed) == Multiset(b2, 2, {0, 0, 3}));
}

TEST_CASE("submultiset enumeration") {
  CHECK(enumerate_submultisets(ms({})).size() == 1);
  const auto twice = enumerate_submultisets(ms({0, 0}));
  CHECK(twice == std::vector<Multiset>{ms({}), ms({0}), ms({0, 0})});
  CHECK(enumerate_submultisets(ms({0, 1})).size() == 4);
  // count is the product of multiplicity + 1
  const Multiset s = ms({0, 0, 0, 1, 1}, 1, b3);
  CHECK(enumerate_submultisets(s).size() == 4 * 3);
}

TEST_CASE("partitions") {
  const auto of_empty = enumerate_partitions(ms({}), 1);
  REQUIRE(of_empty.size() == 1);
  CHECK(of_empty.front().empty());

  const auto two = enumerate_partitions(ms({0, 1}), 1);
  CHECK(two.size() == 2);

  const auto four_distinct = enumerate_partitions(ms({0, 1, 2, 3}, 2), 1);
  CHECK(four_distinct.size() == 15);
  CHECK(brute_force_partition_count(ms({0, 1, 2, 3}, 2), 1) == 15);
}

TEST_CASE("partition blocks rejoin to the whole") {
  const Multiset s = ms({0, 0, 1, 2}, 2);
  for (std::uint32_t min_block = 1; min_block <= 3; ++min_block) {
    const auto partitions = enumerate_partitions(s, min_block);
    for (const auto& blocks : partitions) {
      Multiset total(b2, 2);
      for (const Multiset& block : blocks) {
        CHECK(block.cardinality() >= min_block);
        total = join(total, block);
      }
      CHECK(total == s);
    }
    CHECK(std::is_sorted(partitions.begin(), partitions.end()));
  }
}

TEST_CASE("partition counts match the brute-force oracle") {
  const std::vector<Multiset> cases = {
      ms({0}),           ms({0, 0}),          ms({0, 1}, 2),
      ms({0, 0, 1}, 2),  ms({0, 1, 2}, 2),    ms({0, 0, 1, 1}, 2),
      ms({0, 1, 2, 3}, 2), ms({0, 0, 1, 2, 3}, 2),
  };
  for (const Multiset& s : cases) {
    for (std::uint32_t min_block = 1; min_block <= 2; ++min_block) {
      CHECK(enumerate_partitions(s, min_block).size() ==
            static_cast<std::size_t>(
                brute_force_partition_count(s, min_block)));
    }
  }
}

TEST_CASE("arrangements") {
  const auto one_of_two = enumerate_arrangements(ms({0, 1}), 1);
  REQUIRE(one_of_two.size() == 2);
  CHECK(one_of_two[0].chosen == std::vector<PointRank>{0});
  CHECK(one_of_two[0].rest == ms({1}));
  CHECK(one_of_two[1].chosen == std::vector<PointRank>{1});
  CHECK(one_of_two[1].rest == ms({0}));

  const auto collapsed = enumerate_arrangements(ms({0, 0}), 2);
  REQUIRE(collapsed.size() == 1);
  CHECK(collapsed[0].chosen == std::vector<PointRank>{0, 0});
  CHECK(collapsed[0].rest.empty());

  CHECK(enumerate_arrangements(ms({0, 1}), 2).size() == 2);
  CHECK(enumerate_arrangements(ms({0}), 2).empty());
}

TEST_CASE("arrangements restore the whole multiset") {
  const Multiset s = ms({0, 0, 1, 3}, 2);
  for (int n = 0; n <= 4; ++n) {
    for (const Arrangement& arr : enumerate_arrangements(s, n)) {
      CHECK(join(Multiset(b2, 2, arr.chosen), arr.rest) == s);
    }
  }
  // distinct ordered tuples appear exactly once
  const auto arrangements = enumerate_arrangements(s, 2);
  std::set<std::vector<PointRank>> tuples;
  for (const Arrangement& arr : arrangements) tuples.insert(arr.chosen);
  CHECK(tuples.size() == arrangements.size());
}

TEST_CASE("all_multisets counts") {
  CHECK(all_multisets(b2, 1, 0).size() == 1);
  CHECK(all_multisets(b2, 1, 1).size() == 3);   // {}, {0}, {1}
  CHECK(all_multisets(b2, 1, 2).size() == 6);
  CHECK(all_multisets(b2, 2, 1).size() == 5);   // {} and four singletons
}
