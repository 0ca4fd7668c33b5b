/*! \file preservation.hpp
 *  \brief The preservation predicates between operations and relations or
 *         systems, and bounded characterization queries in both directions.
 *
 *  preserves_system answers the exact question "does f preserve the stored
 *  breadth-B fragment"; callers wanting a full-system verdict must pick B
 *  large enough for their use (for relation systems, B >= arity(f) + 1).
 */

#pragma once

#include <set>
#include <span>
#include <vector>

#include "malcev/system.hpp"

namespace malcev {

class Relation {
 public:
  Relation(FiniteDomain dom, int arity, std::set<PointRank> tuples);

  FiniteDomain domain() const { return dom_; }
  int arity() const { return arity_; }
  const std::set<PointRank>& tuples() const { return tuples_; }
  bool contains(PointRank r) const { return tuples_.count(r) != 0; }

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  FiniteDomain dom_;
  int arity_;
  std::set<PointRank> tuples_;
};

/// True iff f maps every matrix with columns in r into r (exhaustive over
/// the |r|^arity(f) ordered column choices, capped).
bool preserves_relation(const Operation& f, const Relation& r,
                        const Caps& caps = {});

/// True iff f preserves the stored fragment: every splittable arrangement of
/// every antecedent member lands in the consequent.
bool preserves_system(const Operation& f, const System& sys);

/// All operations of arity <= max_arity preserving every listed system,
/// in canonical order (ascending arity, then table).
std::vector<Operation> characterized_ops(std::span<const System> systems,
                                         FiniteDomain dom, int max_arity,
                                         const Caps& caps = {});

/// True iff every operation in ops preserves sys (empty set: true).
bool all_preserve(std::span<const Operation> ops, const System& sys);

}  // namespace malcev
