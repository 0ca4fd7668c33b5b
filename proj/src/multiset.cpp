#include "malcev/multiset.hpp"

#include <algorithm>
#include <map>

namespace malcev {

namespace {

void check_point(PointRank p, FiniteDomain dom, int arity) {
  if (p >= dom.power(arity)) {
    throw input_error("point rank " + std::to_string(p) +
                      " out of range for k=" + std::to_string(dom.size) +
                      ", m=" + std::to_string(arity));
  }
}

void check_same_universe(const Multiset& s, const Multiset& t) {
  if (s.domain() != t.domain() || s.arity() != t.arity()) {
    throw input_error("multiset universe mismatch");
  }
}

}  // namespace

Multiset::Multiset(FiniteDomain dom, int arity) : dom_(dom), arity_(arity) {
  if (arity_ < 1) throw input_error("multiset universe arity must be >= 1");
  dom_.power(arity_);  // validates the domain and the rank space
}

Multiset::Multiset(FiniteDomain dom, int arity, std::vector<PointRank> points)
    : Multiset(dom, arity) {
  std::sort(points.begin(), points.end());
  for (PointRank p : points) {
    check_point(p, dom_, arity_);
    if (!entries_.empty() && entries_.back().first == p) {
      ++entries_.back().second;
    } else {
      entries_.emplace_back(p, 1);
    }
  }
}

Multiset Multiset::from_entries(FiniteDomain dom, int arity,
                                std::vector<Entry> entries) {
  Multiset s(dom, arity);
  std::sort(entries.begin(), entries.end());
  for (const Entry& e : entries) {
    if (e.second == 0) continue;
    check_point(e.first, dom, arity);
    if (!s.entries_.empty() && s.entries_.back().first == e.first) {
      s.entries_.back().second += e.second;
    } else {
      s.entries_.push_back(e);
    }
  }
  return s;
}

std::uint64_t Multiset::cardinality() const {
  std::uint64_t total = 0;
  for (const Entry& e : entries_) total += e.second;
  return total;
}

std::uint32_t Multiset::multiplicity(PointRank p) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), p,
      [](const Entry& e, PointRank q) { return e.first < q; });
  if (it != entries_.end() && it->first == p) return it->second;
  return 0;
}

std::vector<PointRank> Multiset::expand() const {
  std::vector<PointRank> points;
  points.reserve(cardinality());
  for (const Entry& e : entries_) {
    for (std::uint32_t i = 0; i < e.second; ++i) points.push_back(e.first);
  }
  return points;
}

std::strong_ordering operator<=>(const Multiset& a, const Multiset& b) {
  if (auto c = a.dom_.size <=> b.dom_.size; c != 0) return c;
  if (auto c = a.arity_ <=> b.arity_; c != 0) return c;
  return a.entries_ <=> b.entries_;
}

Multiset PointedMultiset::underlying() const {
  return join(Multiset(rest.domain(), rest.arity(), {point}), rest);
}

std::strong_ordering operator<=>(const PointedMultiset& a,
                                 const PointedMultiset& b) {
  if (auto c = a.point <=> b.point; c != 0) return c;
  return a.rest <=> b.rest;
}

Multiset join(const Multiset& s, const Multiset& t) {
  check_same_universe(s, t);
  std::vector<Multiset::Entry> merged = s.entries();
  merged.insert(merged.end(), t.entries().begin(), t.entries().end());
  return Multiset::from_entries(s.domain(), s.arity(), std::move(merged));
}

Multiset difference(const Multiset& s, const Multiset& t) {
  check_same_universe(s, t);
  std::vector<Multiset::Entry> out;
  for (const auto& [p, count] : s.entries()) {
    const std::uint32_t drop = t.multiplicity(p);
    if (count > drop) out.emplace_back(p, count - drop);
  }
  return Multiset::from_entries(s.domain(), s.arity(), std::move(out));
}

bool is_submultiset(const Multiset& s, const Multiset& t) {
  check_same_universe(s, t);
  for (const auto& [p, count] : s.entries()) {
    if (count > t.multiplicity(p)) return false;
  }
  return true;
}

Multiset columns_multiset(const Matrix& m) {
  std::vector<PointRank> points;
  points.reserve(static_cast<std::size_t>(m.cols()));
  for (const auto& col : m.columns()) points.push_back(tuple_rank(col, m.domain()));
  return Multiset(m.domain(), m.rows(), std::move(points));
}

std::vector<Multiset> enumerate_submultisets(const Multiset& s) {
  const auto& entries = s.entries();
  std::vector<Multiset> out;
  std::vector<std::uint32_t> counts(entries.size(), 0);
  for (;;) {
    std::vector<Multiset::Entry> picked;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (counts[i] > 0) picked.emplace_back(entries[i].first, counts[i]);
    }
    out.push_back(
        Multiset::from_entries(s.domain(), s.arity(), std::move(picked)));
    // odometer over 0..mult_i per position
    std::size_t i = 0;
    while (i < entries.size() && counts[i] == entries[i].second) {
      counts[i] = 0;
      ++i;
    }
    if (i == entries.size()) break;
    ++counts[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Blocks are chosen in weakly decreasing canonical order, which yields each
// unordered partition exactly once.
void partitions_rec(const Multiset& remaining, std::uint32_t min_block,
                    const Multiset* max_block, std::vector<Multiset>& acc,
                    std::vector<std::vector<Multiset>>& out) {
  if (remaining.empty()) {
    std::vector<Multiset> blocks = acc;
    std::sort(blocks.begin(), blocks.end());
    out.push_back(std::move(blocks));
    return;
  }
  for (const Multiset& block : enumerate_submultisets(remaining)) {
    if (block.cardinality() < min_block || block.empty()) continue;
    if (max_block != nullptr && *max_block < block) continue;
    acc.push_back(block);
    partitions_rec(difference(remaining, block), min_block, &block, acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<std::vector<Multiset>> enumerate_partitions(
    const Multiset& s, std::uint32_t min_block) {
  std::vector<std::vector<Multiset>> out;
  std::vector<Multiset> acc;
  partitions_rec(s, std::max<std::uint32_t>(min_block, 1), nullptr, acc, out);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void arrangements_rec(const Multiset& s, std::vector<std::uint32_t>& used,
                      std::vector<PointRank>& chosen, int n,
                      std::vector<Arrangement>& out) {
  if (static_cast<int>(chosen.size()) == n) {
    std::vector<Multiset::Entry> rest;
    const auto& entries = s.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].second > used[i]) {
        rest.emplace_back(entries[i].first, entries[i].second - used[i]);
      }
    }
    out.push_back(Arrangement{
        chosen, Multiset::from_entries(s.domain(), s.arity(), std::move(rest))});
    return;
  }
  const auto& entries = s.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (used[i] == entries[i].second) continue;
    ++used[i];
    chosen.push_back(entries[i].first);
    arrangements_rec(s, used, chosen, n, out);
    chosen.pop_back();
    --used[i];
  }
}

}  // namespace

std::vector<Arrangement> enumerate_arrangements(const Multiset& s, int n) {
  if (n < 0) throw input_error("arrangement length must be >= 0");
  std::vector<Arrangement> out;
  if (static_cast<std::uint64_t>(n) > s.cardinality()) return out;
  std::vector<std::uint32_t> used(s.entries().size(), 0);
  std::vector<PointRank> chosen;
  chosen.reserve(static_cast<std::size_t>(n));
  arrangements_rec(s, used, chosen, n, out);
  return out;
}

namespace {

void multisets_rec(FiniteDomain dom, int arity, std::uint64_t universe,
                   PointRank next, std::uint64_t budget,
                   std::vector<Multiset::Entry>& acc,
                   std::vector<Multiset>& out, const Caps& caps) {
  if (out.size() >= caps.enumeration_cap) {
    throw resource_limit_error("multiset enumeration exceeds cap of " +
                               std::to_string(caps.enumeration_cap));
  }
  out.push_back(Multiset::from_entries(dom, arity, acc));
  if (budget == 0) return;
  for (PointRank p = next; p < universe; ++p) {
    acc.emplace_back(p, 1);
    for (std::uint64_t used = 1; used <= budget; ++used) {
      acc.back().second = static_cast<std::uint32_t>(used);
      multisets_rec(dom, arity, universe, p + 1, budget - used, acc, out,
                    caps);
    }
    acc.pop_back();
  }
}

}  // namespace

std::vector<Multiset> all_multisets(FiniteDomain dom, int arity,
                                    std::uint64_t max_card, const Caps& caps) {
  const std::uint64_t universe = dom.power(arity);
  std::vector<Multiset> out;
  std::vector<Multiset::Entry> acc;
  multisets_rec(dom, arity, universe, 0, max_card, acc, out, caps);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace malcev
