/*! \file minor.hpp
 *  \brief Minor formation schemes, Skolem-map search, tight conjunctive
 *         minors and the restrictive/extensive/conjunctive checks.
 *
 *  All verdicts are fragment-relative: they quantify over members up to the
 *  stored breadth bounds.  The checks therefore require the family fragments
 *  to be at least as broad as the system under test.
 */

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "malcev/system.hpp"

namespace malcev {

/// Image of one source index: a target coordinate or an indeterminate.
struct SchemeImage {
  bool is_var = false;
  int index = 0;  // 0-based coordinate, or index into Scheme::vars

  friend bool operator==(const SchemeImage&, const SchemeImage&) = default;
};

using SchemeMap = std::vector<SchemeImage>;

/*! A minor formation scheme: target arity m, a finite set of indeterminates,
 *  and a nonempty family of index maps h_j : n_j -> m u V. */
struct Scheme {
  int target = 1;
  std::vector<std::string> vars;
  std::vector<SchemeMap> maps;
};

/// Throws input_error when a map image is out of range or a map is empty.
void check_scheme(const Scheme& scheme);

/*! (a + sigma) h: the source tuple whose i-th entry is a[h(i)] for
 *  coordinate images and sigma[h(i)] for indeterminate images. */
std::vector<Value> scheme_apply(const SchemeMap& h, std::span<const Value> a,
                                std::span<const Value> sigma);

/*! The breadth-bounded tight conjunctive minor of the family via the scheme:
 *  a multiset (or pointed multiset) of cardinality <= B belongs to the
 *  result iff per-column Skolem maps exist making every scheme-mapped column
 *  family satisfy the corresponding family member.  The output bound is
 *  clamped to min(B, min_j breadth(family_j)) so that every verdict is
 *  witnessed by the family fragments. */
System tight_minor(std::span<const System> family, const Scheme& scheme,
                   std::uint32_t breadth, const Caps& caps = {});

/// Forward implication on the antecedent side, over all stored ante members.
bool is_restrictive_minor(const System& sys, std::span<const System> family,
                          const Scheme& scheme, const Caps& caps = {});

/// Reverse implication on the consequent side, over all candidates <= B.
bool is_extensive_minor(const System& sys, std::span<const System> family,
                        const Scheme& scheme, const Caps& caps = {});

/// Both of the above.
bool is_conjunctive_minor(const System& sys, std::span<const System> family,
                          const Scheme& scheme, const Caps& caps = {});

/// Simple minor renaming coordinates: source coordinate i of sys is read
/// from result coordinate perm[i].
System permute_args(const System& sys, std::span<const int> perm,
                    const Caps& caps = {});

/// Simple minor identifying coordinates i and j (0-based, i < j).
System identify_args(const System& sys, int i, int j, const Caps& caps = {});

/// Simple minor appending one dummy coordinate.
System add_dummy_arg(const System& sys, const Caps& caps = {});

/// Simple minor keeping the listed coordinates; dropped ones become
/// existentially quantified indeterminates.
System project_args(const System& sys, std::span<const int> kept,
                    const Caps& caps = {});

}  // namespace malcev
