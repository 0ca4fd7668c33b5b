/*! \file closure.hpp
 *  \brief Arity-bounded fixpoint generation under {zeta, tau, nabla, star}
 *         (optionally delta), membership queries, and the constructive
 *         separating-system algorithm.
 *
 *  Bounding by arity is sound: zeta and tau preserve arity, nabla strictly
 *  increases it, and arity(f*g) >= max(arity(f), arity(g)), so every member
 *  of arity <= N is derivable through intermediates of arity <= N only.
 */

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "malcev/preservation.hpp"

namespace malcev {

struct ClosedSetFragment {
  FiniteDomain dom;
  int max_arity = 1;
  bool with_projections = true;
  bool with_delta = false;
  std::vector<std::pair<std::string, Operation>> generators;
  /// members[n] is the set of tables of the n-ary part, n = 1..max_arity.
  std::vector<std::set<std::vector<Value>>> members;

  bool contains_table(int arity, const std::vector<Value>& table) const;
};

/*! Least fixpoint of the generators (plus projections when enabled) under
 *  zeta, tau, nabla and star restricted to results of arity <= max_arity;
 *  delta participates only when enabled.
 *
 *  A generator wider than the bound is inert when delta is off (none of its
 *  derivatives fits under the bound), and raises the working bound to its
 *  own arity when delta is on.  With delta the bounded fixpoint can still
 *  miss members whose every derivation passes above the bound; without
 *  delta the bound is exact. */
ClosedSetFragment generate(FiniteDomain dom,
                           std::vector<std::pair<std::string, Operation>> gens,
                           int max_arity, bool with_projections,
                           bool with_delta, const Caps& caps = {});

/// Membership of g; arity(g) must be <= the fragment bound.
bool closure_contains(const ClosedSetFragment& fragment, const Operation& g);

/// Least arity with a member; throws input_error on the empty fragment.
int min_arity(const ClosedSetFragment& fragment);

/// {h M : h an n-ary member}, for M with n <= max_arity columns.
std::set<std::vector<Value>> image_set(const ClosedSetFragment& fragment,
                                       const Matrix& m);

/// All members as operations, ascending (arity, table).
std::vector<Operation> fragment_members(const ClosedSetFragment& fragment);

/*! The separating system for a non-member g of arity n: built on the
 *  k^n x n matrix of all n-tuples in rank order, its consequent collects
 *  every (leftover columns, partition, per-block image) datum, and its
 *  antecedent the underlying multisets plus the full column multiset.
 *  Result: a validated k^n-ary system of breadth n that every member of the
 *  fragment preserves and g does not (both postconditions are asserted). */
System separating_system(const ClosedSetFragment& fragment, const Operation& g,
                         const Caps& caps = {});

}  // namespace malcev
