#include "malcev/selftest.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "malcev/closure.hpp"
#include "malcev/io.hpp"
#include "malcev/linear_terms.hpp"
#include "malcev/minor.hpp"
#include "malcev/preservation.hpp"

namespace malcev {

namespace {

const FiniteDomain kBool{2};

std::vector<Operation> all_tables(FiniteDomain dom, int arity) {
  const std::uint64_t cells = dom.power(arity);
  std::uint64_t space = 1;
  for (std::uint64_t c = 0; c < cells; ++c) {
    space *= static_cast<std::uint64_t>(dom.size);
  }
  std::vector<Operation> out;
  out.reserve(space);
  std::vector<Value> table(cells, 0);
  for (std::uint64_t t = 0; t < space; ++t) {
    out.emplace_back(dom, arity, table);
    std::size_t i = cells;
    while (i > 0) {
      --i;
      if (table[i] + 1 < dom.size) {
        ++table[i];
        break;
      }
      table[i] = 0;
    }
  }
  return out;
}

std::vector<Operation> boolean_ops_up_to(int max_arity) {
  std::vector<Operation> out;
  for (int n = 1; n <= max_arity; ++n) {
    for (Operation& f : all_tables(kBool, n)) out.push_back(std::move(f));
  }
  return out;
}

std::set<Operation> member_ops(const ClosedSetFragment& frag, int arity) {
  std::set<Operation> out;
  for (const auto& table : frag.members[static_cast<std::size_t>(arity)]) {
    out.insert(Operation(frag.dom, arity, table));
  }
  return out;
}

// --- criterion 1: closure membership separates the mu family -------------

CriterionResult criterion_mu_separation() {
  CriterionResult r{1, "mu-family closure separation", false, ""};
  const Operation mu3 = mu(3, kBool);
  const Operation mu4 = mu(4, kBool);
  const auto frag3 = generate(kBool, {{"mu3", mu3}}, 4, true, false);
  const auto frag34 =
      generate(kBool, {{"mu3", mu3}, {"mu4", mu4}}, 4, true, false);
  const bool without = !closure_contains(frag3, mu4);
  const bool with3 = closure_contains(frag34, mu3);
  const bool with4 = closure_contains(frag34, mu4);
  r.passed = without && with3 && with4;
  if (!r.passed) {
    r.detail = "mu4 in <mu3>: " + std::to_string(!without) +
               ", mu3 in <mu3,mu4>: " + std::to_string(with3) +
               ", mu4 in <mu3,mu4>: " + std::to_string(with4);
  }
  return r;
}

// --- criterion 2: the singleton system characterizes arity >= 2 ----------

CriterionResult criterion_min_arity_characterization() {
  CriterionResult r{2, "minimum-arity characterization", false, ""};
  const System witness{kBool, 1, 1, {Multiset(kBool, 1, {0})}, {}};
  const std::vector<System> w{witness};
  const std::vector<Operation> ops = characterized_ops(w, kBool, 3);
  int unary = 0;
  int binary = 0;
  int ternary = 0;
  for (const Operation& f : ops) {
    if (f.arity() == 1) ++unary;
    if (f.arity() == 2) ++binary;
    if (f.arity() == 3) ++ternary;
  }
  r.passed = unary == 0 && binary == 16 && ternary == 256 &&
             ops.size() == 272;
  if (!r.passed) {
    r.detail = "got " + std::to_string(unary) + " unary, " +
               std::to_string(binary) + " binary, " +
               std::to_string(ternary) + " ternary";
  }
  return r;
}

// --- criterion 3: relation preservation agrees with its system -----------

CriterionResult criterion_relation_agreement() {
  CriterionResult r{3, "relation/system preservation agreement", false, ""};
  const std::vector<std::set<PointRank>> relations = {
      {0, 1, 3},  // 00, 01, 11
      {1, 2},     // 01, 10
      {3},        // 11
  };
  const std::vector<Operation> ops = boolean_ops_up_to(2);
  int mismatches = 0;
  for (const auto& tuples : relations) {
    const Relation rel(kBool, 2, tuples);
    const System sys = system_from_relation(kBool, 2, tuples, 3);
    for (const Operation& f : ops) {
      if (preserves_relation(f, rel) != preserves_system(f, sys)) {
        ++mismatches;
      }
    }
  }
  r.passed = mismatches == 0;
  if (!r.passed) r.detail = std::to_string(mismatches) + " mismatches";
  return r;
}

// --- criterion 4: linear-term enumeration saturates onto the closure -----

CriterionResult criterion_linear_term_saturation() {
  CriterionResult r{4, "linear-term saturation onto the closure", false, ""};
  const Operation mu3 = mu(3, kBool);
  const Signature sig{{{"mu3", 3}}};
  const std::vector<Operation> assignment{mu3};
  const auto frag = generate(kBool, {{"mu3", mu3}}, 3, true, false);
  for (int n = 1; n <= 3; ++n) {
    const std::set<Operation> at4 = linear_term_ops(sig, assignment, n, 4);
    const std::set<Operation> at5 = linear_term_ops(sig, assignment, n, 5);
    if (at4 != member_ops(frag, n)) {
      r.detail = "arity " + std::to_string(n) + ": term set differs from "
                 "the closure fragment";
      return r;
    }
    if (at5 != at4) {
      r.detail = "arity " + std::to_string(n) + ": complexity 5 still adds "
                 "terms";
      return r;
    }
  }
  r.passed = true;
  return r;
}

// --- criterion 5: separating-system construction --------------------------

CriterionResult criterion_separating_system() {
  CriterionResult r{5, "separating-system construction", false, ""};
  try {
    const auto proj3 = generate(kBool, {}, 3, true, false);
    const Operation and2(kBool, 2, {0, 0, 0, 1});
    const System sep1 = separating_system(proj3, and2);
    if (validate(sep1) || sep1.arity != 4 || sep1.breadth != 2) {
      r.detail = "projection/AND witness malformed";
      return r;
    }
    for (const Operation& f : fragment_members(proj3)) {
      if (!preserves_system(f, sep1)) {
        r.detail = "a projection fails the projection/AND witness";
        return r;
      }
    }
    if (preserves_system(and2, sep1)) {
      r.detail = "AND preserves the projection/AND witness";
      return r;
    }

    const Operation mu3 = mu(3, kBool);
    const Operation mu4 = mu(4, kBool);
    const auto frag = generate(kBool, {{"mu3", mu3}}, 4, true, false);
    const System sep2 = separating_system(frag, mu4);
    if (validate(sep2) || sep2.arity != 16 || sep2.breadth != 4) {
      r.detail = "mu witness malformed";
      return r;
    }
    for (const Operation& f : fragment_members(frag)) {
      if (!preserves_system(f, sep2)) {
        r.detail = "a fragment member fails the mu witness";
        return r;
      }
    }
    if (preserves_system(mu4, sep2)) {
      r.detail = "mu4 preserves the mu witness";
      return r;
    }
  } catch (const std::exception& e) {
    r.detail = e.what();
    return r;
  }
  r.passed = true;
  return r;
}

// --- criterion 6: randomized minor-preservation suite ---------------------

System random_system(int arity, std::uint32_t breadth, std::mt19937_64& rng) {
  const std::vector<Multiset> sets = all_multisets(kBool, arity, breadth);
  std::set<PointedMultiset> cons;
  if (breadth >= 1) {
    const std::uint64_t universe = kBool.power(arity);
    for (PointRank x = 0; x < universe; ++x) {
      for (const Multiset& rest : all_multisets(kBool, arity, breadth - 1)) {
        if (rng() % 4 == 0) {
          for (const Multiset& sub : enumerate_submultisets(rest)) {
            cons.insert(PointedMultiset{x, sub});
          }
        }
      }
    }
  }
  std::set<Multiset> ante;
  for (const PointedMultiset& ps : cons) ante.insert(ps.underlying());
  for (const Multiset& s : sets) {
    if (rng() % 4 == 0) ante.insert(s);
  }
  System sys{kBool, arity, breadth, std::move(ante), std::move(cons)};
  if (validate(sys)) throw std::logic_error("random system invalid");
  return sys;
}

CriterionResult criterion_minor_preservation() {
  CriterionResult r{6, "randomized minor preservation", false, ""};
  std::mt19937_64 rng(0xC0FFEE);
  const std::vector<Operation> ops = boolean_ops_up_to(2);
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 2);
    const std::uint32_t breadth = static_cast<std::uint32_t>(rng() % 4);
    Scheme scheme;
    scheme.target = m;
    if (rng() % 2 == 0) scheme.vars.push_back("v");
    const int maps = 1 + static_cast<int>(rng() % 2);
    std::vector<System> family;
    for (int j = 0; j < maps; ++j) {
      const int nj = 1 + static_cast<int>(rng() % 2);
      SchemeMap h;
      for (int t = 0; t < nj; ++t) {
        const int pick =
            static_cast<int>(rng() % (static_cast<std::uint64_t>(m) +
                                      scheme.vars.size()));
        if (pick < m) {
          h.push_back(SchemeImage{false, pick});
        } else {
          h.push_back(SchemeImage{true, 0});
        }
      }
      scheme.maps.push_back(std::move(h));
      family.push_back(random_system(nj, breadth, rng));
    }
    const System tight = tight_minor(family, scheme, breadth);
    for (const Operation& f : ops) {
      const bool on_family =
          std::all_of(family.begin(), family.end(), [&](const System& sys) {
            return preserves_system(f, sys);
          });
      if (on_family && !preserves_system(f, tight)) ++violations;
    }
  }
  r.passed = violations == 0;
  if (!r.passed) r.detail = std::to_string(violations) + " violations";
  return r;
}

// --- criterion 7: quotient/union/breadth/dividend laws, exhaustively ------

CriterionResult criterion_quotient_union_breadth_dividends() {
  CriterionResult r{7, "quotient/union/breadth/dividend laws", false, ""};
  const int m = 1;
  const std::uint32_t breadth = 2;
  const std::vector<Multiset> sets = all_multisets(kBool, m, breadth);
  std::vector<PointedMultiset> pointed;
  for (PointRank x = 0; x < 2; ++x) {
    for (const Multiset& rest : all_multisets(kBool, m, breadth - 1)) {
      pointed.push_back(PointedMultiset{x, rest});
    }
  }

  // every valid system over this universe
  std::vector<System> systems;
  for (std::uint64_t mask = 0; mask < (1u << pointed.size()); ++mask) {
    std::set<PointedMultiset> cons;
    for (std::size_t i = 0; i < pointed.size(); ++i) {
      if (mask & (1u << i)) cons.insert(pointed[i]);
    }
    std::set<Multiset> grounding;
    for (const PointedMultiset& ps : cons) grounding.insert(ps.underlying());
    const System probe{kBool, m, breadth, {sets.begin(), sets.end()}, cons};
    if (validate(probe)) continue;  // not downward closed
    std::vector<Multiset> optional_sets;
    for (const Multiset& s : sets) {
      if (grounding.count(s) == 0) optional_sets.push_back(s);
    }
    for (std::uint64_t extra = 0; extra < (1u << optional_sets.size());
         ++extra) {
      std::set<Multiset> ante = grounding;
      for (std::size_t i = 0; i < optional_sets.size(); ++i) {
        if (extra & (1u << i)) ante.insert(optional_sets[i]);
      }
      System sys{kBool, m, breadth, std::move(ante), cons};
      if (validate(sys)) throw std::logic_error("enumerated system invalid");
      systems.push_back(std::move(sys));
    }
  }

  const std::vector<Operation> ops = boolean_ops_up_to(2);
  std::vector<std::uint32_t> masks(systems.size(), 0);
  std::map<std::pair<std::set<Multiset>, std::set<PointedMultiset>>,
           std::size_t>
      index;
  for (std::size_t i = 0; i < systems.size(); ++i) {
    for (std::size_t b = 0; b < ops.size(); ++b) {
      if (preserves_system(ops[b], systems[i])) {
        masks[i] |= (1u << b);
      }
    }
    index[{systems[i].ante, systems[i].cons}] = i;
  }

  std::ostringstream why;
  // unions
  for (std::size_t i = 0; i < systems.size(); ++i) {
    for (std::size_t j = i; j < systems.size(); ++j) {
      const System u = system_union(std::vector<System>{systems[i], systems[j]});
      const auto it = index.find({u.ante, u.cons});
      if (it == index.end()) {
        why << "union left the enumerated family; ";
        r.detail = why.str();
        return r;
      }
      const std::uint32_t both = masks[i] & masks[j];
      if ((masks[it->second] & both) != both) {
        why << "union law fails at pair (" << i << "," << j << "); ";
        r.detail = why.str();
        return r;
      }
      // quotient distributivity over this union, for every divisor
      for (const Multiset& s : sets) {
        const System left = quotient(u, s);
        const System right = system_union(std::vector<System>{
            quotient(systems[i], s), quotient(systems[j], s)});
        if (!(left == right)) {
          why << "quotient does not distribute at pair (" << i << "," << j
              << "); ";
          r.detail = why.str();
          return r;
        }
      }
    }
  }
  // quotients preserve preservation
  for (std::size_t i = 0; i < systems.size(); ++i) {
    for (std::size_t b = 0; b < ops.size(); ++b) {
      if (!(masks[i] & (1u << b))) continue;
      for (const Multiset& s : sets) {
        if (!preserves_system(ops[b], quotient(systems[i], s))) {
          why << "quotient law fails at system " << i << "; ";
          r.detail = why.str();
          return r;
        }
      }
    }
  }
  // dividends
  for (std::size_t i = 0; i < systems.size(); ++i) {
    for (std::uint32_t p = 0; p <= breadth; ++p) {
      if (!contains_trivial_breadth(systems[i], p)) continue;
      for (std::size_t b = 0; b < ops.size(); ++b) {
        bool all_quotients = true;
        for (const Multiset& s : sets) {
          if (s.cardinality() < p) continue;
          if (!preserves_system(ops[b], quotient(systems[i], s))) {
            all_quotients = false;
            break;
          }
        }
        if (all_quotients && !(masks[i] & (1u << b))) {
          why << "dividend law fails at system " << i << ", p=" << p << "; ";
          r.detail = why.str();
          return r;
        }
      }
    }
  }
  // breadth restriction
  for (std::size_t i = 0; i < systems.size(); ++i) {
    for (std::size_t b = 0; b < ops.size(); ++b) {
      bool conj = true;
      for (std::uint32_t p = 0; p <= breadth; ++p) {
        if (!preserves_system(ops[b], breadth_restrict(systems[i], p))) {
          conj = false;
          break;
        }
      }
      if (conj != bool(masks[i] & (1u << b))) {
        why << "breadth law fails at system " << i << "; ";
        r.detail = why.str();
        return r;
      }
    }
  }
  r.passed = true;
  r.detail = std::to_string(systems.size()) + " systems";
  return r;
}

// --- criterion 8: canonical simple-minor constructions --------------------

CriterionResult criterion_canonical_constructions() {
  CriterionResult r{8, "canonical minor constructions", false, ""};
  for (std::uint32_t b = 0; b <= 3; ++b) {
    const System eq2 = equality_system(kBool, 2, b);
    if (!(identify_args(eq2, 0, 1) == trivial_system(kBool, 1, b))) {
      r.detail = "identification at breadth " + std::to_string(b);
      return r;
    }
    for (int m = 2; m <= 3; ++m) {
      Scheme chain;
      chain.target = m;
      std::vector<System> family;
      for (int i = 0; i + 1 < m; ++i) {
        chain.maps.push_back(
            SchemeMap{SchemeImage{false, i}, SchemeImage{false, i + 1}});
        family.push_back(eq2);
      }
      if (!(tight_minor(family, chain, b) == equality_system(kBool, m, b))) {
        r.detail = "equality chain at m=" + std::to_string(m) +
                   ", breadth " + std::to_string(b);
        return r;
      }
    }
    if (!(equality_system(kBool, 1, b) == trivial_system(kBool, 1, b))) {
      r.detail = "unary equality at breadth " + std::to_string(b);
      return r;
    }
    for (int m = 2; m <= 3; ++m) {
      Scheme dummy;
      dummy.target = m;
      dummy.maps.push_back(SchemeMap{SchemeImage{false, 0}});
      const std::vector<System> family{empty_system(kBool, 1, b)};
      if (!(tight_minor(family, dummy, b) == empty_system(kBool, m, b))) {
        r.detail = "empty-system embedding at m=" + std::to_string(m);
        return r;
      }
    }
  }
  r.passed = true;
  return r;
}

// --- criterion 9: format round-trips ---------------------------------------

CriterionResult criterion_round_trips() {
  CriterionResult r{9, "format round-trips", false, ""};
  const Operation mu3 = mu(3, kBool);
  const Operation mu4 = mu(4, kBool);

  OpsFile ops{kBool, {}};
  ops.ops.emplace_back("id1", projection(kBool, 1, 1));
  ops.ops.emplace_back("e21", projection(kBool, 2, 1));
  ops.ops.emplace_back("and", Operation(kBool, 2, {0, 0, 0, 1}));
  ops.ops.emplace_back("or", Operation(kBool, 2, {0, 1, 1, 1}));
  ops.ops.emplace_back("xor", Operation(kBool, 2, {0, 1, 1, 0}));
  ops.ops.emplace_back("mu3", mu3);
  ops.ops.emplace_back("mu4", mu4);
  {
    const std::string text = emit_ops(ops);
    const OpsFile back = parse_ops(text);
    if (back.dom != ops.dom || back.ops != ops.ops ||
        emit_ops(back) != text) {
      r.detail = "ops";
      return r;
    }
  }

  RelFile rels{kBool, {}};
  rels.rels.emplace_back("leq", Relation(kBool, 2, {0, 1, 3}));
  rels.rels.emplace_back("neq", Relation(kBool, 2, {1, 2}));
  rels.rels.emplace_back("one", Relation(kBool, 2, {3}));
  {
    const std::string text = emit_rel(rels);
    const RelFile back = parse_rel(text);
    if (back.dom != rels.dom || back.rels != rels.rels ||
        emit_rel(back) != text) {
      r.detail = "rel";
      return r;
    }
  }

  std::vector<SystemFile> systems;
  systems.push_back({"ex1", System{kBool, 1, 1, {Multiset(kBool, 1, {0})}, {}}});
  systems.push_back({"triv", trivial_system(kBool, 1, 2)});
  systems.push_back({"eq", equality_system(kBool, 2, 2)});
  systems.push_back({"leq_sys", system_from_relation(kBool, 2, {0, 1, 3}, 2)});
  systems.push_back(
      {"sep_and", separating_system(generate(kBool, {}, 3, true, false),
                                    Operation(kBool, 2, {0, 0, 0, 1}))});
  for (const SystemFile& f : systems) {
    const std::string text = emit_system(f);
    const SystemFile back = parse_system(text);
    if (back.name != f.name || !(back.sys == f.sys) ||
        back.sys.breadth != f.sys.breadth || emit_system(back) != text) {
      r.detail = "system '" + f.name + "'";
      return r;
    }
  }

  std::vector<SchemeFile> schemes;
  schemes.push_back(
      {"identity2",
       Scheme{2, {}, {{SchemeImage{false, 0}, SchemeImage{false, 1}}}}});
  schemes.push_back(
      {"identify",
       Scheme{1, {}, {{SchemeImage{false, 0}, SchemeImage{false, 0}}}}});
  schemes.push_back(
      {"chain3", Scheme{3,
                        {},
                        {{SchemeImage{false, 0}, SchemeImage{false, 1}},
                         {SchemeImage{false, 1}, SchemeImage{false, 2}}}}});
  schemes.push_back(
      {"drop_last",
       Scheme{1, {"v"}, {{SchemeImage{false, 0}, SchemeImage{true, 0}}}}});
  for (const SchemeFile& f : schemes) {
    const std::string text = emit_scheme(f);
    const SchemeFile back = parse_scheme(text);
    const bool equal = back.name == f.name &&
                       back.scheme.target == f.scheme.target &&
                       back.scheme.vars == f.scheme.vars &&
                       back.scheme.maps == f.scheme.maps;
    if (!equal || emit_scheme(back) != text) {
      r.detail = "scheme '" + f.name + "'";
      return r;
    }
  }
  r.passed = true;
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream* out) {
  std::vector<CriterionResult> results;
  const auto run = [&](CriterionResult (*criterion)()) {
    CriterionResult r = criterion();
    if (out != nullptr) {
      *out << (r.passed ? "[PASS] " : "[FAIL] ") << r.index << " " << r.name;
      if (!r.detail.empty()) *out << " (" << r.detail << ")";
      *out << "\n" << std::flush;
    }
    results.push_back(std::move(r));
  };
  run(criterion_mu_separation);
  run(criterion_min_arity_characterization);
  run(criterion_relation_agreement);
  run(criterion_linear_term_saturation);
  run(criterion_separating_system);
  run(criterion_minor_preservation);
  run(criterion_quotient_union_breadth_dividends);
  run(criterion_canonical_constructions);
  run(criterion_round_trips);
  return results;
}

}  // namespace malcev
