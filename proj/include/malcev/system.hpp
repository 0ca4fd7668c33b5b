/*! \file system.hpp
 *  \brief Breadth-bounded fragments of systems of pointed multisets and the
 *         structural operators on them.
 *
 *  A stored System is the breadth-B fragment of a conceptual system: the
 *  antecedent holds every member of cardinality <= B, the consequent every
 *  member of cardinality <= B.  Preservation questions are answered
 *  fragment-by-fragment; every operator documents the bound of its output.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>

#include "malcev/caps.hpp"
#include "malcev/multiset.hpp"

namespace malcev {

struct System {
  FiniteDomain dom;
  int arity = 1;
  std::uint32_t breadth = 0;
  std::set<Multiset> ante;
  std::set<PointedMultiset> cons;

  /// Content equality; the breadth bound is bookkeeping, not content.
  friend bool operator==(const System& a, const System& b) {
    return a.dom == b.dom && a.arity == b.arity && a.ante == b.ante &&
           a.cons == b.cons;
  }
};

/*! Returns the first violated invariant as a diagnostic, or nullopt when the
 *  system is valid.  Checked in order: member arities and ranks, breadth
 *  bounds, downward closure of the consequent, grounding of the consequent
 *  in the antecedent. */
std::optional<std::string> validate(const System& sys);

inline bool is_valid(const System& sys) { return !validate(sys).has_value(); }

/// The breadth-B fragment of the m-ary trivial system (everything allowed).
System trivial_system(FiniteDomain dom, int m, std::uint32_t breadth,
                      const Caps& caps = {});

/// The m-ary empty system (no matrix satisfies its antecedent).
System empty_system(FiniteDomain dom, int m, std::uint32_t breadth = 0);

/// The breadth-B fragment of the m-ary equality system (constant tuples).
System equality_system(FiniteDomain dom, int m, std::uint32_t breadth,
                       const Caps& caps = {});

/*! The breadth-B fragment of the system attached to an m-ary relation:
 *  antecedent multisets supported on the relation, consequent pairs of a
 *  relation member and such a multiset. */
System system_from_relation(FiniteDomain dom, int m,
                            const std::set<PointRank>& relation,
                            std::uint32_t breadth, const Caps& caps = {});

/*! Quotient by S: residues {T : T join S in ante}, {(x,T) : (x, S join T) in
 *  cons}.  Output bound is B - |S| (0 when negative): only members the
 *  fragment can witness are certified. */
System quotient(const System& sys, const Multiset& s);

/// Members of cardinality <= p only; output bound min(B, p).
System breadth_restrict(const System& sys, std::uint32_t p);

/// Componentwise union; arities must agree; output bound is the max.
System system_union(std::span<const System> systems);

/*! Replaces the antecedent with a subset; throws input_error when a
 *  consequent member loses its grounding (the offending member is named). */
System restrict_antecedent(const System& sys, const std::set<Multiset>& ante);

/*! Replaces the consequent with a superset; throws input_error when the
 *  result would violate downward closure or grounding. */
System extend_consequent(const System& sys,
                         const std::set<PointedMultiset>& cons);

/*! True iff the full breadth-p trivial system is contained in sys.
 *  Requires p <= breadth(sys); larger p cannot be witnessed (input_error). */
bool contains_trivial_breadth(const System& sys, std::uint32_t p,
                              const Caps& caps = {});

}  // namespace malcev
