/*! \file domain.hpp
 *  \brief Finite domains, ranked tuples, dense operation tables, the five
 *         variable-manipulation operations and row-wise application.
 *
 *  Elements of a domain of size k are 0..k-1.  An n-tuple over the domain is
 *  encoded by its rank, the base-k value with the first coordinate most
 *  significant, so a printed table reads in lexicographic input order.
 *  All values here are immutable after construction and safe to share.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "malcev/errors.hpp"

namespace malcev {

using Value = std::uint8_t;
using PointRank = std::uint64_t;

struct FiniteDomain {
  int size = 2;

  /// k^m; throws resource_limit_error when the result does not fit 64 bits.
  std::uint64_t power(int m) const;

  friend bool operator==(const FiniteDomain&, const FiniteDomain&) = default;
};

/// Rank of an m-tuple, first coordinate most significant.
PointRank tuple_rank(std::span<const Value> t, FiniteDomain dom);

/// Inverse of tuple_rank.
std::vector<Value> tuple_unrank(PointRank r, int m, FiniteDomain dom);

/// Digit string of a tuple, e.g. rank 5 at m=2, k=3 -> "12".
std::string tuple_to_string(PointRank r, int m, FiniteDomain dom);

/// Parses an m-character digit string; throws input_error on bad digits.
PointRank tuple_from_string(const std::string& text, int m, FiniteDomain dom);

/*! A finitary operation stored as a dense value table of length k^arity,
 *  indexed by input-tuple rank.  Operations of different arities are never
 *  equal, even when one is a cylindrification of the other. */
class Operation {
 public:
  Operation(FiniteDomain dom, int arity, std::vector<Value> table);

  FiniteDomain domain() const { return dom_; }
  int arity() const { return arity_; }
  const std::vector<Value>& table() const { return table_; }

  Value value_at(PointRank input_rank) const { return table_[input_rank]; }
  Value operator()(std::span<const Value> args) const;

  friend bool operator==(const Operation&, const Operation&) = default;
  friend std::strong_ordering operator<=>(const Operation& a,
                                          const Operation& b);

 private:
  FiniteDomain dom_;
  int arity_;
  std::vector<Value> table_;
};

/*! An m x n matrix over the domain, stored as its ordered columns; n = 0 is
 *  the empty matrix. */
class Matrix {
 public:
  Matrix(FiniteDomain dom, int rows, std::vector<std::vector<Value>> columns);

  static Matrix empty(FiniteDomain dom, int rows) {
    return Matrix(dom, rows, {});
  }

  FiniteDomain domain() const { return dom_; }
  int rows() const { return rows_; }
  int cols() const { return static_cast<int>(columns_.size()); }
  const std::vector<Value>& column(int j) const { return columns_[j]; }
  const std::vector<std::vector<Value>>& columns() const { return columns_; }

  std::vector<Value> row(int i) const;

 private:
  FiniteDomain dom_;
  int rows_;
  std::vector<std::vector<Value>> columns_;
};

/// The i-th n-ary projection (i is 1-based, as in e_i^n).
Operation projection(FiniteDomain dom, int n, int i);

/// Cyclic shift: (zeta f)(x1,...,xn) = f(x2,...,xn,x1); identity for n = 1.
Operation zeta(const Operation& f);

/// Transposition: (tau f)(x1,...,xn) = f(x2,x1,x3,...,xn); identity for n = 1.
Operation tau(const Operation& f);

/// Diagonalization: (delta f)(x1,...,x_{n-1}) = f(x1,x1,x2,...,x_{n-1}).
Operation delta(const Operation& f);

/// Cylindrification: (nabla f)(x1,...,x_{n+1}) = f(x2,...,x_{n+1}).
Operation nabla(const Operation& f);

/// Composition into the first slot: arity(f) + arity(g) - 1.
Operation star(const Operation& f, const Operation& g);

/// f applied to the rows of M (M must have exactly arity(f) columns).
std::vector<Value> apply_rows(const Operation& f, const Matrix& m);

/// Concatenates columns; all parts must agree on rows and domain.
Matrix hconcat(std::span<const Matrix> parts);

}  // namespace malcev
