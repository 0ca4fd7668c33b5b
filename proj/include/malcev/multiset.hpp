/*! \file multiset.hpp
 *  \brief Canonical finite multisets of ranked m-tuples, pointed multisets,
 *         and the enumerations behind preservation checks.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

#include "malcev/caps.hpp"
#include "malcev/domain.hpp"

namespace malcev {

/*! A finite multiset of points of A^m, each point stored by rank.  Entries
 *  are kept strictly ascending by rank with multiplicities >= 1, so equal
 *  multisets compare equal structurally. */
class Multiset {
 public:
  using Entry = std::pair<PointRank, std::uint32_t>;

  Multiset(FiniteDomain dom, int arity);  // the empty multiset
  Multiset(FiniteDomain dom, int arity, std::vector<PointRank> points);
  static Multiset from_entries(FiniteDomain dom, int arity,
                               std::vector<Entry> entries);

  FiniteDomain domain() const { return dom_; }
  int arity() const { return arity_; }
  const std::vector<Entry>& entries() const { return entries_; }

  std::uint64_t cardinality() const;
  std::uint32_t multiplicity(PointRank p) const;
  bool empty() const { return entries_.empty(); }

  /// All points with multiplicity, ascending by rank.
  std::vector<PointRank> expand() const;

  friend bool operator==(const Multiset&, const Multiset&) = default;
  friend std::strong_ordering operator<=>(const Multiset&, const Multiset&);

 private:
  FiniteDomain dom_;
  int arity_;
  std::vector<Entry> entries_;
};

/*! A pointed multiset (x, S); its cardinality is |S| + 1. */
struct PointedMultiset {
  PointRank point;
  Multiset rest;

  std::uint64_t cardinality() const { return rest.cardinality() + 1; }
  Multiset underlying() const;

  friend bool operator==(const PointedMultiset&,
                         const PointedMultiset&) = default;
  friend std::strong_ordering operator<=>(const PointedMultiset&,
                                          const PointedMultiset&);
};

/// Multiplicity-wise sum; throws input_error on universe mismatch.
Multiset join(const Multiset& s, const Multiset& t);

/// Pointwise truncated subtraction.
Multiset difference(const Multiset& s, const Multiset& t);

/// True iff every multiplicity of s is <= the one in t.
bool is_submultiset(const Multiset& s, const Multiset& t);

/// The multiset of columns of M (empty matrix -> empty multiset).
Multiset columns_multiset(const Matrix& m);

/// All submultisets, each once, in a deterministic canonical order.
std::vector<Multiset> enumerate_submultisets(const Multiset& s);

/*! All partitions of s into nonempty blocks of cardinality >= min_block,
 *  each partition once (blocks emitted in ascending canonical order).
 *  The empty multiset yields the single zero-block partition. */
std::vector<std::vector<Multiset>> enumerate_partitions(
    const Multiset& s, std::uint32_t min_block);

struct Arrangement {
  std::vector<PointRank> chosen;  // ordered selection of n points
  Multiset rest;                  // s minus the chosen points
};

/*! All ordered selections of n points (with multiplicity) from s, paired
 *  with the remainder; one entry per distinct ordered point tuple.
 *  n > |s| yields the empty sequence. */
std::vector<Arrangement> enumerate_arrangements(const Multiset& s, int n);

/// All multisets over A^arity of cardinality <= max_card, ascending.
std::vector<Multiset> all_multisets(FiniteDomain dom, int arity,
                                    std::uint64_t max_card,
                                    const Caps& caps = {});

}  // namespace malcev
