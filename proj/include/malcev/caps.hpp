/*! \file caps.hpp
 *  \brief Resource caps for the exhaustive enumerations.
 *
 *  Every combinatorial search in the library is exact; the caps below bound
 *  how large an exact question may get before it is rejected with a
 *  resource_limit_error instead of silently running forever.
 */

#pragma once

#include <cstdint>
#include <string>

#include "malcev/errors.hpp"

namespace malcev {

struct Caps {
  /// Largest table-space k^(k^n) that characterized_ops may sweep per arity.
  std::uint64_t table_space = 65536;
  /// Largest Skolem-map space |A|^|V| searched per column in minor checks.
  std::uint64_t skolem_budget = 256;
  /// Candidate (X, partition, image-choice) triples in separating_system.
  std::uint64_t separate_budget = 10'000'000;
  /// Row count k^n of the witness matrix in separating_system.
  std::uint64_t separate_rows = 256;
  /// Multiset/system enumeration size guard (trivial systems, minors, ...).
  std::uint64_t enumeration_cap = 5'000'000;
  /// Matrix count |R|^n enumerated by preserves_relation.
  std::uint64_t relation_matrix_cap = 10'000'000;
  /// Linear-term enumeration guard (terms visited).
  std::uint64_t term_cap = 2'000'000;
  /// Total member count a closure fragment may reach.
  std::uint64_t closure_member_cap = 1'000'000;

  /// Dense-table arity bound per domain size (6 for k<=2, 4 for k=3, 3 else).
  int max_arity(int domain_size) const {
    if (domain_size <= 2) return 6;
    if (domain_size == 3) return 4;
    return 3;
  }

  /// Applies a single `key=value` override; throws input_error on bad keys.
  void apply_override(const std::string& text);
};

}  // namespace malcev
