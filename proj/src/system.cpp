#include "malcev/system.hpp"

#include <algorithm>

#include "malcev/io.hpp"

namespace malcev {

std::optional<std::string> validate(const System& sys) {
  if (sys.arity < 1) return "system arity must be >= 1";
  const std::uint64_t universe = sys.dom.power(sys.arity);
  for (const Multiset& s : sys.ante) {
    if (s.domain() != sys.dom || s.arity() != sys.arity) {
      return "antecedent member over the wrong universe";
    }
    if (s.cardinality() > sys.breadth) {
      return "antecedent member " + multiset_literal(s) +
             " exceeds breadth bound " + std::to_string(sys.breadth);
    }
  }
  for (const PointedMultiset& ps : sys.cons) {
    if (ps.rest.domain() != sys.dom || ps.rest.arity() != sys.arity ||
        ps.point >= universe) {
      return "consequent member over the wrong universe";
    }
    if (ps.cardinality() > sys.breadth) {
      return "consequent member (" +
             tuple_to_string(ps.point, sys.arity, sys.dom) + ", " +
             multiset_literal(ps.rest) + ") exceeds breadth bound " +
             std::to_string(sys.breadth);
    }
  }
  // condition (1): downward closure of the consequent.  One-step removals
  // suffice: any submultiset is reached by a chain of them.
  for (const PointedMultiset& ps : sys.cons) {
    for (const auto& [p, count] : ps.rest.entries()) {
      Multiset smaller = difference(
          ps.rest, Multiset(ps.rest.domain(), ps.rest.arity(), {p}));
      if (sys.cons.count(PointedMultiset{ps.point, smaller}) == 0) {
        return "downward closure violated: (" +
               tuple_to_string(ps.point, sys.arity, sys.dom) + ", " +
               multiset_literal(ps.rest) + ") present but (" +
               tuple_to_string(ps.point, sys.arity, sys.dom) + ", " +
               multiset_literal(smaller) + ") missing";
      }
    }
  }
  // condition (2): grounding of the consequent in the antecedent.
  for (const PointedMultiset& ps : sys.cons) {
    if (sys.ante.count(ps.underlying()) == 0) {
      return "grounding violated: (" +
             tuple_to_string(ps.point, sys.arity, sys.dom) + ", " +
             multiset_literal(ps.rest) + ") lacks its underlying multiset " +
             multiset_literal(ps.underlying()) + " in the antecedent";
    }
  }
  return std::nullopt;
}

namespace {

System assemble(FiniteDomain dom, int m, std::uint32_t breadth,
                std::set<Multiset> ante, std::set<PointedMultiset> cons) {
  System sys{dom, m, breadth, std::move(ante), std::move(cons)};
  if (auto why = validate(sys)) {
    throw input_error("constructed system is invalid: " + *why);
  }
  return sys;
}

}  // namespace

System trivial_system(FiniteDomain dom, int m, std::uint32_t breadth,
                      const Caps& caps) {
  std::set<Multiset> ante;
  std::set<PointedMultiset> cons;
  for (Multiset& s : all_multisets(dom, m, breadth, caps)) ante.insert(std::move(s));
  if (breadth >= 1) {
    const std::uint64_t universe = dom.power(m);
    for (PointRank x = 0; x < universe; ++x) {
      for (const Multiset& rest : all_multisets(dom, m, breadth - 1, caps)) {
        cons.insert(PointedMultiset{x, rest});
      }
    }
  }
  return assemble(dom, m, breadth, std::move(ante), std::move(cons));
}

System empty_system(FiniteDomain dom, int m, std::uint32_t breadth) {
  return System{dom, m, breadth, {}, {}};
}

System equality_system(FiniteDomain dom, int m, std::uint32_t breadth,
                       const Caps& caps) {
  std::set<PointRank> constants;
  std::vector<Value> tuple(static_cast<std::size_t>(m));
  for (int a = 0; a < dom.size; ++a) {
    std::fill(tuple.begin(), tuple.end(), static_cast<Value>(a));
    constants.insert(tuple_rank(tuple, dom));
  }
  return system_from_relation(dom, m, constants, breadth, caps);
}

System system_from_relation(FiniteDomain dom, int m,
                            const std::set<PointRank>& relation,
                            std::uint32_t breadth, const Caps& caps) {
  const std::uint64_t universe = dom.power(m);
  for (PointRank r : relation) {
    if (r >= universe) throw input_error("relation tuple out of range");
  }
  // All multisets supported on the relation, by cardinality.
  std::vector<PointRank> support(relation.begin(), relation.end());
  std::vector<Multiset> supported;
  std::vector<Multiset::Entry> acc;
  auto rec = [&](auto&& self, std::size_t next, std::uint64_t budget) -> void {
    if (supported.size() >= caps.enumeration_cap) {
      throw resource_limit_error("relation-system enumeration exceeds cap");
    }
    supported.push_back(Multiset::from_entries(dom, m, acc));
    if (budget == 0) return;
    for (std::size_t i = next; i < support.size(); ++i) {
      acc.emplace_back(support[i], 1);
      for (std::uint64_t used = 1; used <= budget; ++used) {
        acc.back().second = static_cast<std::uint32_t>(used);
        self(self, i + 1, budget - used);
      }
      acc.pop_back();
    }
  };
  rec(rec, 0, breadth);

  std::set<Multiset> ante(supported.begin(), supported.end());
  std::set<PointedMultiset> cons;
  if (breadth >= 1) {
    for (PointRank x : relation) {
      for (const Multiset& s : supported) {
        if (s.cardinality() + 1 <= breadth) {
          cons.insert(PointedMultiset{x, s});
        }
      }
    }
  }
  return assemble(dom, m, breadth, std::move(ante), std::move(cons));
}

System quotient(const System& sys, const Multiset& s) {
  if (s.domain() != sys.dom || s.arity() != sys.arity) {
    throw input_error("quotient multiset over the wrong universe");
  }
  const std::uint64_t drop = s.cardinality();
  const std::uint32_t breadth =
      drop >= sys.breadth ? 0
                          : sys.breadth - static_cast<std::uint32_t>(drop);
  std::set<Multiset> ante;
  for (const Multiset& u : sys.ante) {
    if (is_submultiset(s, u)) ante.insert(difference(u, s));
  }
  std::set<PointedMultiset> cons;
  for (const PointedMultiset& ps : sys.cons) {
    if (is_submultiset(s, ps.rest)) {
      cons.insert(PointedMultiset{ps.point, difference(ps.rest, s)});
    }
  }
  return assemble(sys.dom, sys.arity, breadth, std::move(ante),
                  std::move(cons));
}

System breadth_restrict(const System& sys, std::uint32_t p) {
  std::set<Multiset> ante;
  for (const Multiset& u : sys.ante) {
    if (u.cardinality() <= p) ante.insert(u);
  }
  std::set<PointedMultiset> cons;
  for (const PointedMultiset& ps : sys.cons) {
    if (ps.cardinality() <= p) cons.insert(ps);
  }
  return assemble(sys.dom, sys.arity, std::min(sys.breadth, p),
                  std::move(ante), std::move(cons));
}

System system_union(std::span<const System> systems) {
  if (systems.empty()) throw input_error("union of an empty system family");
  const System& first = systems.front();
  std::uint32_t breadth = first.breadth;
  std::set<Multiset> ante;
  std::set<PointedMultiset> cons;
  for (const System& sys : systems) {
    if (sys.dom != first.dom || sys.arity != first.arity) {
      throw input_error("union requires systems of one arity and domain");
    }
    breadth = std::max(breadth, sys.breadth);
    ante.insert(sys.ante.begin(), sys.ante.end());
    cons.insert(sys.cons.begin(), sys.cons.end());
  }
  return assemble(first.dom, first.arity, breadth, std::move(ante),
                  std::move(cons));
}

System restrict_antecedent(const System& sys, const std::set<Multiset>& ante) {
  for (const Multiset& s : ante) {
    if (sys.ante.count(s) == 0) {
      throw input_error("restrict_antecedent: " + multiset_literal(s) +
                        " is not an antecedent member");
    }
  }
  System out{sys.dom, sys.arity, sys.breadth, ante, sys.cons};
  if (auto why = validate(out)) {
    throw input_error("restrict_antecedent rejected: " + *why);
  }
  return out;
}

System extend_consequent(const System& sys,
                         const std::set<PointedMultiset>& cons) {
  for (const PointedMultiset& ps : sys.cons) {
    if (cons.count(ps) == 0) {
      throw input_error(
          "extend_consequent: the new consequent must contain the old one");
    }
  }
  System out{sys.dom, sys.arity, sys.breadth, sys.ante, cons};
  if (auto why = validate(out)) {
    throw input_error("extend_consequent rejected: " + *why);
  }
  return out;
}

bool contains_trivial_breadth(const System& sys, std::uint32_t p,
                              const Caps& caps) {
  if (p > sys.breadth) {
    throw input_error("breadth-" + std::to_string(p) +
                      " inclusion cannot be witnessed by a fragment of "
                      "breadth " +
                      std::to_string(sys.breadth));
  }
  for (const Multiset& s : all_multisets(sys.dom, sys.arity, p, caps)) {
    if (sys.ante.count(s) == 0) return false;
  }
  if (p >= 1) {
    const std::uint64_t universe = sys.dom.power(sys.arity);
    for (PointRank x = 0; x < universe; ++x) {
      for (const Multiset& rest :
           all_multisets(sys.dom, sys.arity, p - 1, caps)) {
        if (sys.cons.count(PointedMultiset{x, rest}) == 0) return false;
      }
    }
  }
  return true;
}

}  // namespace malcev
