#include "malcev/minor.hpp"

#include <algorithm>
#include <map>

namespace malcev {

void check_scheme(const Scheme& scheme) {
  if (scheme.target < 1) throw input_error("scheme target must be >= 1");
  if (scheme.maps.empty()) throw input_error("scheme needs at least one map");
  for (const SchemeMap& h : scheme.maps) {
    if (h.empty()) throw input_error("scheme map must have source arity >= 1");
    for (const SchemeImage& img : h) {
      if (img.is_var) {
        if (img.index < 0 ||
            img.index >= static_cast<int>(scheme.vars.size())) {
          throw input_error("scheme map names an undeclared indeterminate");
        }
      } else if (img.index < 0 || img.index >= scheme.target) {
        throw input_error("scheme map coordinate out of range");
      }
    }
  }
}

std::vector<Value> scheme_apply(const SchemeMap& h, std::span<const Value> a,
                                std::span<const Value> sigma) {
  std::vector<Value> out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    out[i] = h[i].is_var ? sigma[static_cast<std::size_t>(h[i].index)]
                         : a[static_cast<std::size_t>(h[i].index)];
  }
  return out;
}

namespace {

struct MinorContext {
  std::span<const System> family;
  const Scheme* scheme = nullptr;
  FiniteDomain dom;
  std::uint64_t sigma_count = 1;  // |A|^|V|
};

MinorContext make_context(std::span<const System> family, const Scheme& scheme,
                          const Caps& caps) {
  check_scheme(scheme);
  if (family.size() != scheme.maps.size()) {
    throw input_error("family size " + std::to_string(family.size()) +
                      " does not match scheme map count " +
                      std::to_string(scheme.maps.size()));
  }
  MinorContext ctx;
  ctx.family = family;
  ctx.scheme = &scheme;
  ctx.dom = family.front().dom;
  for (std::size_t j = 0; j < family.size(); ++j) {
    if (family[j].dom != ctx.dom) {
      throw input_error("family systems must share one domain");
    }
    if (family[j].arity != static_cast<int>(scheme.maps[j].size())) {
      throw input_error("family member " + std::to_string(j) + " has arity " +
                        std::to_string(family[j].arity) +
                        ", scheme map expects " +
                        std::to_string(scheme.maps[j].size()));
    }
  }
  ctx.sigma_count = ctx.dom.power(static_cast<int>(scheme.vars.size()));
  if (ctx.sigma_count > caps.skolem_budget) {
    throw resource_limit_error("Skolem space " +
                               std::to_string(ctx.sigma_count) +
                               " exceeds budget " +
                               std::to_string(caps.skolem_budget));
  }
  return ctx;
}

/*! The defining condition: there are per-column Skolem maps such that for
 *  every j the scheme-mapped columns satisfy family[j] (antecedent for plain
 *  multisets, consequent with the first column distinguished for pointed
 *  ones).  A zero-column candidate asks for the empty multiset in every
 *  family antecedent. */
bool minor_condition(const MinorContext& ctx,
                     const std::vector<std::vector<Value>>& columns,
                     bool pointed) {
  const std::size_t n = columns.size();
  const std::size_t vars = ctx.scheme->vars.size();
  if (n == 0) {
    for (const System& sys : ctx.family) {
      if (sys.ante.count(Multiset(sys.dom, sys.arity)) == 0) return false;
    }
    return true;
  }
  // mapped[i][s][j]: rank of (column i + sigma_s) h_j over A^{n_j}.
  std::vector<std::vector<std::vector<PointRank>>> mapped(n);
  for (std::size_t i = 0; i < n; ++i) {
    mapped[i].resize(ctx.sigma_count);
    for (std::uint64_t s = 0; s < ctx.sigma_count; ++s) {
      const std::vector<Value> sigma =
          vars == 0 ? std::vector<Value>{}
                    : tuple_unrank(s, static_cast<int>(vars), ctx.dom);
      mapped[i][s].reserve(ctx.family.size());
      for (std::size_t j = 0; j < ctx.family.size(); ++j) {
        const std::vector<Value> b =
            scheme_apply(ctx.scheme->maps[j], columns[i], sigma);
        mapped[i][s].push_back(tuple_rank(b, ctx.dom));
      }
    }
  }
  std::vector<std::uint64_t> choice(n, 0);
  for (;;) {
    bool all_ok = true;
    for (std::size_t j = 0; j < ctx.family.size() && all_ok; ++j) {
      const System& sys = ctx.family[j];
      std::vector<PointRank> ranks(n);
      for (std::size_t i = 0; i < n; ++i) ranks[i] = mapped[i][choice[i]][j];
      if (pointed) {
        const PointRank point = ranks[0];
        ranks.erase(ranks.begin());
        all_ok = sys.cons.count(PointedMultiset{
                     point, Multiset(sys.dom, sys.arity,
                                     std::move(ranks))}) != 0;
      } else {
        all_ok =
            sys.ante.count(Multiset(sys.dom, sys.arity, std::move(ranks))) !=
            0;
      }
    }
    if (all_ok) return true;
    std::size_t i = 0;
    while (i < n && choice[i] + 1 == ctx.sigma_count) {
      choice[i] = 0;
      ++i;
    }
    if (i == n) return false;
    ++choice[i];
  }
}

std::vector<std::vector<Value>> decode_columns(
    const std::vector<PointRank>& ranks, int m, FiniteDomain dom) {
  std::vector<std::vector<Value>> cols;
  cols.reserve(ranks.size());
  for (PointRank r : ranks) cols.push_back(tuple_unrank(r, m, dom));
  return cols;
}

std::uint32_t family_breadth(std::span<const System> family) {
  std::uint32_t b = family.front().breadth;
  for (const System& sys : family) b = std::min(b, sys.breadth);
  return b;
}

}  // namespace

System tight_minor(std::span<const System> family, const Scheme& scheme,
                   std::uint32_t breadth, const Caps& caps) {
  const MinorContext ctx = make_context(family, scheme, caps);
  const int m = scheme.target;
  const std::uint32_t bound = std::min(breadth, family_breadth(family));

  std::set<Multiset> ante;
  for (const Multiset& s : all_multisets(ctx.dom, m, bound, caps)) {
    if (minor_condition(ctx, decode_columns(s.expand(), m, ctx.dom), false)) {
      ante.insert(s);
    }
  }
  std::set<PointedMultiset> cons;
  if (bound >= 1) {
    const std::uint64_t universe = ctx.dom.power(m);
    const std::vector<Multiset> rests =
        all_multisets(ctx.dom, m, bound - 1, caps);
    for (PointRank x = 0; x < universe; ++x) {
      for (const Multiset& rest : rests) {
        std::vector<PointRank> ranks;
        ranks.reserve(rest.cardinality() + 1);
        ranks.push_back(x);
        for (PointRank p : rest.expand()) ranks.push_back(p);
        if (minor_condition(ctx, decode_columns(ranks, m, ctx.dom), true)) {
          cons.insert(PointedMultiset{x, rest});
        }
      }
    }
  }
  System out{ctx.dom, m, bound, std::move(ante), std::move(cons)};
  if (auto why = validate(out)) {
    throw input_error("tight minor of an invalid family: " + *why);
  }
  return out;
}

bool is_restrictive_minor(const System& sys, std::span<const System> family,
                          const Scheme& scheme, const Caps& caps) {
  const MinorContext ctx = make_context(family, scheme, caps);
  if (sys.dom != ctx.dom || sys.arity != scheme.target) {
    throw input_error("system does not match the scheme target");
  }
  if (family_breadth(family) < sys.breadth) {
    throw input_error("family fragments are narrower than the system");
  }
  for (const Multiset& s : sys.ante) {
    if (!minor_condition(ctx, decode_columns(s.expand(), sys.arity, ctx.dom),
                         false)) {
      return false;
    }
  }
  return true;
}

bool is_extensive_minor(const System& sys, std::span<const System> family,
                        const Scheme& scheme, const Caps& caps) {
  const MinorContext ctx = make_context(family, scheme, caps);
  if (sys.dom != ctx.dom || sys.arity != scheme.target) {
    throw input_error("system does not match the scheme target");
  }
  if (family_breadth(family) < sys.breadth) {
    throw input_error("family fragments are narrower than the system");
  }
  if (sys.breadth == 0) return true;
  const std::uint64_t universe = ctx.dom.power(sys.arity);
  const std::vector<Multiset> rests =
      all_multisets(ctx.dom, sys.arity, sys.breadth - 1, caps);
  for (PointRank x = 0; x < universe; ++x) {
    for (const Multiset& rest : rests) {
      std::vector<PointRank> ranks;
      ranks.reserve(rest.cardinality() + 1);
      ranks.push_back(x);
      for (PointRank p : rest.expand()) ranks.push_back(p);
      if (minor_condition(ctx, decode_columns(ranks, sys.arity, ctx.dom),
                          true) &&
          sys.cons.count(PointedMultiset{x, rest}) == 0) {
        return false;
      }
    }
  }
  return true;
}

bool is_conjunctive_minor(const System& sys, std::span<const System> family,
                          const Scheme& scheme, const Caps& caps) {
  return is_restrictive_minor(sys, family, scheme, caps) &&
         is_extensive_minor(sys, family, scheme, caps);
}

namespace {

System simple_minor(const System& sys, Scheme scheme, const Caps& caps) {
  const System family[] = {sys};
  return tight_minor(family, scheme, sys.breadth, caps);
}

}  // namespace

System permute_args(const System& sys, std::span<const int> perm,
                    const Caps& caps) {
  if (static_cast<int>(perm.size()) != sys.arity) {
    throw input_error("permutation length must equal the system arity");
  }
  std::vector<bool> seen(perm.size(), false);
  SchemeMap h;
  for (int p : perm) {
    if (p < 0 || p >= sys.arity || seen[static_cast<std::size_t>(p)]) {
      throw input_error("not a permutation of 0.." +
                        std::to_string(sys.arity - 1));
    }
    seen[static_cast<std::size_t>(p)] = true;
    h.push_back(SchemeImage{false, p});
  }
  return simple_minor(sys, Scheme{sys.arity, {}, {h}}, caps);
}

System identify_args(const System& sys, int i, int j, const Caps& caps) {
  if (i < 0 || j < 0 || i >= sys.arity || j >= sys.arity || i == j) {
    throw input_error("identify_args needs two distinct coordinates");
  }
  if (sys.arity < 2) throw input_error("identify_args needs arity >= 2");
  if (i > j) std::swap(i, j);
  SchemeMap h;
  for (int l = 0; l < sys.arity; ++l) {
    int img = l;
    if (l == j) {
      img = i;
    } else if (l > j) {
      img = l - 1;
    }
    h.push_back(SchemeImage{false, img});
  }
  return simple_minor(sys, Scheme{sys.arity - 1, {}, {h}}, caps);
}

System add_dummy_arg(const System& sys, const Caps& caps) {
  SchemeMap h;
  for (int l = 0; l < sys.arity; ++l) h.push_back(SchemeImage{false, l});
  return simple_minor(sys, Scheme{sys.arity + 1, {}, {h}}, caps);
}

System project_args(const System& sys, std::span<const int> kept,
                    const Caps& caps) {
  if (kept.empty()) throw input_error("project_args must keep a coordinate");
  std::vector<int> position(static_cast<std::size_t>(sys.arity), -1);
  for (std::size_t t = 0; t < kept.size(); ++t) {
    const int c = kept[t];
    if (c < 0 || c >= sys.arity || position[static_cast<std::size_t>(c)] >= 0) {
      throw input_error("kept coordinates must be distinct and in range");
    }
    position[static_cast<std::size_t>(c)] = static_cast<int>(t);
  }
  Scheme scheme{static_cast<int>(kept.size()), {}, {}};
  SchemeMap h;
  for (int l = 0; l < sys.arity; ++l) {
    if (position[static_cast<std::size_t>(l)] >= 0) {
      h.push_back(SchemeImage{false, position[static_cast<std::size_t>(l)]});
    } else {
      h.push_back(
          SchemeImage{true, static_cast<int>(scheme.vars.size())});
      scheme.vars.push_back("v" + std::to_string(l));
    }
  }
  scheme.maps.push_back(std::move(h));
  return simple_minor(sys, std::move(scheme), caps);
}

}  // namespace malcev
