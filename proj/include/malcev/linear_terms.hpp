/*! \file linear_terms.hpp
 *  \brief Terms over a finite signature, linearity, evaluation, enumeration
 *         of linear term operations, and the mu_n family.
 */

#pragma once

#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "malcev/caps.hpp"
#include "malcev/domain.hpp"

namespace malcev {

/*! A term tree: either a variable x_i (var >= 1) or a symbol application
 *  with subterm count matching the symbol's declared arity. */
struct Term {
  int var = 0;      // variable index, >= 1 when this node is a leaf
  int symbol = -1;  // index into the signature when this node is an apply
  std::vector<Term> args;

  static Term variable(int i) { return Term{i, -1, {}}; }
  static Term apply(int symbol, std::vector<Term> args) {
    return Term{0, symbol, std::move(args)};
  }
  bool is_variable() const { return var >= 1; }
};

struct Signature {
  std::vector<std::pair<std::string, int>> symbols;  // name, arity >= 1
};

/// True iff no variable index occurs twice in the term.
bool is_linear(const Term& t);

/// Number of operation-symbol occurrences.
int complexity(const Term& t);

/*! The n-ary operation induced by t under the symbol assignment (one
 *  operation per signature symbol, of the declared arity). */
Operation eval_term(const Term& t, const Signature& sig,
                    std::span<const Operation> assignment, int n);

/*! {eval(t) : t an n-ary linear term of complexity <= max_complexity}.
 *  Variables alone contribute the n projections. */
std::set<Operation> linear_term_ops(const Signature& sig,
                                    std::span<const Operation> assignment,
                                    int n, int max_complexity,
                                    const Caps& caps = {});

/*! mu_n: value 1 exactly on 0/1-tuples of Hamming weight 1 or n-1, else 0.
 *  Requires n >= 3 and a domain with at least the elements 0 and 1. */
Operation mu(int n, FiniteDomain dom);

}  // namespace malcev
