#include "malcev/linear_terms.hpp"

#include <algorithm>
#include <functional>

namespace malcev {

namespace {

void collect_vars(const Term& t, std::vector<int>& vars) {
  if (t.is_variable()) {
    vars.push_back(t.var);
    return;
  }
  for (const Term& arg : t.args) collect_vars(arg, vars);
}

}  // namespace

bool is_linear(const Term& t) {
  std::vector<int> vars;
  collect_vars(t, vars);
  std::sort(vars.begin(), vars.end());
  return std::adjacent_find(vars.begin(), vars.end()) == vars.end();
}

int complexity(const Term& t) {
  if (t.is_variable()) return 0;
  int total = 1;
  for (const Term& arg : t.args) total += complexity(arg);
  return total;
}

namespace {

void check_term(const Term& t, const Signature& sig, int n) {
  if (t.is_variable()) {
    if (t.var > n) {
      throw input_error("term uses x" + std::to_string(t.var) +
                        " beyond the declared arity " + std::to_string(n));
    }
    return;
  }
  if (t.symbol < 0 || t.symbol >= static_cast<int>(sig.symbols.size())) {
    throw input_error("term uses an undeclared symbol");
  }
  const int want = sig.symbols[static_cast<std::size_t>(t.symbol)].second;
  if (static_cast<int>(t.args.size()) != want) {
    throw input_error("symbol '" +
                      sig.symbols[static_cast<std::size_t>(t.symbol)].first +
                      "' expects " + std::to_string(want) + " subterms, got " +
                      std::to_string(t.args.size()));
  }
  for (const Term& arg : t.args) check_term(arg, sig, n);
}

Value eval_node(const Term& t, std::span<const Operation> assignment,
                std::span<const Value> input) {
  if (t.is_variable()) return input[static_cast<std::size_t>(t.var - 1)];
  std::vector<Value> args(t.args.size());
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    args[i] = eval_node(t.args[i], assignment, input);
  }
  return assignment[static_cast<std::size_t>(t.symbol)](args);
}

}  // namespace

Operation eval_term(const Term& t, const Signature& sig,
                    std::span<const Operation> assignment, int n) {
  if (n < 1) throw input_error("term arity must be >= 1");
  if (assignment.size() != sig.symbols.size()) {
    throw input_error("assignment must cover every signature symbol");
  }
  FiniteDomain dom{0};
  for (std::size_t i = 0; i < sig.symbols.size(); ++i) {
    if (assignment[i].arity() != sig.symbols[i].second) {
      throw input_error("assignment for '" + sig.symbols[i].first +
                        "' has the wrong arity");
    }
    if (i == 0) {
      dom = assignment[i].domain();
    } else if (assignment[i].domain() != dom) {
      throw input_error("assignment operations must share one domain");
    }
  }
  if (sig.symbols.empty()) {
    throw input_error("eval_term needs a signature with a domain; "
                      "use projections directly for variable terms");
  }
  check_term(t, sig, n);
  const std::uint64_t cells = dom.power(n);
  std::vector<Value> table(cells);
  for (std::uint64_t r = 0; r < cells; ++r) {
    const std::vector<Value> input = tuple_unrank(r, n, dom);
    table[r] = eval_node(t, assignment, input);
  }
  return Operation(dom, n, std::move(table));
}

namespace {

int leaf_count(const Term& t) {
  if (t.is_variable()) return 1;
  int total = 0;
  for (const Term& arg : t.args) total += leaf_count(arg);
  return total;
}

// Relabels placeholder leaves with the given variable indices, in traversal
// order.
void relabel(Term& t, const std::vector<int>& labels, std::size_t& next) {
  if (t.is_variable()) {
    t.var = labels[next++];
    return;
  }
  for (Term& arg : t.args) relabel(arg, labels, next);
}

// All term shapes of each exact complexity, leaves as x1 placeholders.
std::vector<std::vector<Term>> shapes_by_complexity(const Signature& sig,
                                                    int max_complexity,
                                                    const Caps& caps) {
  std::vector<std::vector<Term>> shapes(
      static_cast<std::size_t>(max_complexity) + 1);
  shapes[0].push_back(Term::variable(1));
  std::uint64_t total = 1;
  for (int c = 1; c <= max_complexity; ++c) {
    for (std::size_t s = 0; s < sig.symbols.size(); ++s) {
      const int arity = sig.symbols[s].second;
      // distribute complexity c-1 over the subterms
      std::vector<Term> args;
      std::function<void(int, int)> build = [&](int slot, int left) {
        if (slot == arity) {
          if (left == 0) {
            shapes[static_cast<std::size_t>(c)].push_back(
                Term::apply(static_cast<int>(s), args));
            if (++total > caps.term_cap) {
              throw resource_limit_error("linear-term enumeration exceeds "
                                         "cap of " +
                                         std::to_string(caps.term_cap));
            }
          }
          return;
        }
        for (int use = 0; use <= left; ++use) {
          for (const Term& sub : shapes[static_cast<std::size_t>(use)]) {
            args.push_back(sub);
            build(slot + 1, left - use);
            args.pop_back();
          }
        }
      };
      build(0, c - 1);
    }
  }
  return shapes;
}

}  // namespace

std::set<Operation> linear_term_ops(const Signature& sig,
                                    std::span<const Operation> assignment,
                                    int n, int max_complexity,
                                    const Caps& caps) {
  if (n < 1) throw input_error("term arity must be >= 1");
  if (assignment.size() != sig.symbols.size()) {
    throw input_error("assignment must cover every signature symbol");
  }
  FiniteDomain dom{0};
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (i == 0) {
      dom = assignment[i].domain();
    } else if (assignment[i].domain() != dom) {
      throw input_error("assignment operations must share one domain");
    }
  }
  if (assignment.empty()) {
    throw input_error("linear_term_ops needs at least one symbol");
  }

  std::set<Operation> out;
  for (int i = 1; i <= n; ++i) out.insert(projection(dom, n, i));

  const auto shapes = shapes_by_complexity(sig, max_complexity, caps);
  std::uint64_t visited = 0;
  for (int c = 1; c <= max_complexity; ++c) {
    for (const Term& shape : shapes[static_cast<std::size_t>(c)]) {
      const int leaves = leaf_count(shape);
      if (leaves > n) continue;
      // all injective leaf labelings from {1..n}
      std::vector<int> labels;
      std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
      std::function<void()> assign = [&]() {
        if (static_cast<int>(labels.size()) == leaves) {
          Term t = shape;
          std::size_t next = 0;
          relabel(t, labels, next);
          out.insert(eval_term(t, sig, assignment, n));
          if (++visited > caps.term_cap) {
            throw resource_limit_error("linear-term enumeration exceeds cap "
                                       "of " +
                                       std::to_string(caps.term_cap));
          }
          return;
        }
        for (int v = 1; v <= n; ++v) {
          if (used[static_cast<std::size_t>(v)]) continue;
          used[static_cast<std::size_t>(v)] = true;
          labels.push_back(v);
          assign();
          labels.pop_back();
          used[static_cast<std::size_t>(v)] = false;
        }
      };
      assign();
    }
  }
  return out;
}

Operation mu(int n, FiniteDomain dom) {
  if (n < 3) throw input_error("mu is defined for arity >= 3");
  if (dom.size < 2) {
    throw input_error("mu needs the two designated elements 0 and 1");
  }
  const std::uint64_t cells = dom.power(n);
  std::vector<Value> table(cells, 0);
  for (std::uint64_t r = 0; r < cells; ++r) {
    const std::vector<Value> t = tuple_unrank(r, n, dom);
    bool binary = true;
    int weight = 0;
    for (Value v : t) {
      if (v > 1) {
        binary = false;
        break;
      }
      weight += v;
    }
    if (binary && (weight == 1 || weight == n - 1)) table[r] = 1;
  }
  return Operation(dom, n, std::move(table));
}

}  // namespace malcev
