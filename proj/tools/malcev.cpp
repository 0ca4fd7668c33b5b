/*! \file malcev.cpp
 *  \brief Command-line front end.
 *
 *  Exit codes: 0 predicate true / success, 1 predicate false, 2 input error,
 *  3 resource cap exceeded.  All output is deterministic.
 */

#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "malcev/closure.hpp"
#include "malcev/io.hpp"
#include "malcev/linear_terms.hpp"
#include "malcev/minor.hpp"
#include "malcev/preservation.hpp"
#include "malcev/selftest.hpp"

namespace {

using namespace malcev;

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kInputError = 2;
constexpr int kResourceError = 3;

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> names;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = csv.find(',', start);
    const std::string item = csv.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) names.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return names;
}

std::string op_line_name(const Operation& f) {
  std::string digits;
  for (Value v : f.table()) digits.push_back(static_cast<char>('0' + v));
  return "f" + std::to_string(f.arity()) + "_" + digits;
}

void print_ops(std::ostream& out, FiniteDomain dom,
               const std::vector<Operation>& ops) {
  OpsFile file{dom, {}};
  for (const Operation& f : ops) file.ops.emplace_back(op_line_name(f), f);
  out << emit_ops(file);
}

Caps parse_caps(const std::vector<std::string>& overrides) {
  Caps caps;
  for (const std::string& entry : overrides) caps.apply_override(entry);
  return caps;
}

std::vector<std::pair<std::string, Operation>> pick_generators(
    const Workspace& ws, const std::string& gens_csv) {
  std::vector<std::pair<std::string, Operation>> gens;
  for (const std::string& name : split_names(gens_csv)) {
    gens.emplace_back(name, ws.op(name));
  }
  return gens;
}

// Loads each distinct path once so a family may repeat a member.
class SystemLoader {
 public:
  explicit SystemLoader(Workspace& ws) : ws_(ws) {}

  const System& get(const std::string& path) {
    auto it = by_path_.find(path);
    if (it != by_path_.end()) return ws_.systems[it->second].second;
    const System& sys = ws_.load_system(path);
    by_path_[path] = ws_.systems.size() - 1;
    return sys;
  }

 private:
  Workspace& ws_;
  std::map<std::string, std::size_t> by_path_;
};

int run(int argc, char** argv) {
  CLI::App app{"exact computations with operation tables, multiset systems, "
               "minors and closures"};
  app.require_subcommand(1);
  std::vector<std::string> cap_overrides;
  app.add_option("--caps", cap_overrides,
                 "cap override key=value (repeatable)");

  // --- closure ------------------------------------------------------------
  auto* cmd_closure = app.add_subcommand("closure",
                                         "generate an arity-bounded closure");
  std::string closure_ops, closure_gens, closure_contains_name;
  int closure_max_arity = 0;
  bool closure_with_delta = false, closure_no_projections = false,
       closure_list = false;
  cmd_closure->add_option("--ops", closure_ops, "operations file")->required();
  cmd_closure->add_option("--gens", closure_gens,
                          "comma-separated generator names");
  cmd_closure->add_option("--max-arity", closure_max_arity, "arity bound")
      ->required();
  cmd_closure->add_flag("--with-delta", closure_with_delta,
                        "also close under argument identification");
  cmd_closure->add_flag("--no-projections", closure_no_projections,
                        "do not seed the projections");
  cmd_closure->add_flag("--list", closure_list, "list all members");
  cmd_closure->add_option("--contains", closure_contains_name,
                          "test membership of a named operation");

  // --- separate -----------------------------------------------------------
  auto* cmd_separate = app.add_subcommand(
      "separate", "build a system separating a non-member from a closure");
  std::string sep_ops, sep_gens, sep_target, sep_out;
  int sep_max_arity = 0;
  cmd_separate->add_option("--ops", sep_ops, "operations file")->required();
  cmd_separate->add_option("--gens", sep_gens,
                           "comma-separated generator names");
  cmd_separate->add_option("--max-arity", sep_max_arity, "arity bound")
      ->required();
  cmd_separate->add_option("--target", sep_target, "operation to separate")
      ->required();
  cmd_separate->add_option("--out", sep_out, "output system file")->required();

  // --- preserve -----------------------------------------------------------
  auto* cmd_preserve =
      app.add_subcommand("preserve", "test a preservation predicate");
  std::string pre_ops, pre_op, pre_system, pre_rel, pre_rel_name;
  cmd_preserve->add_option("--ops", pre_ops, "operations file")->required();
  cmd_preserve->add_option("--op", pre_op, "operation name")->required();
  cmd_preserve->add_option("--system", pre_system, "system file");
  cmd_preserve->add_option("--rel", pre_rel, "relation file");
  cmd_preserve->add_option("--rel-name", pre_rel_name,
                           "relation name (defaults to the only one)");

  // --- characterize ---------------------------------------------------------
  auto* cmd_characterize = app.add_subcommand(
      "characterize", "list all operations preserving the given systems");
  std::vector<std::string> chr_systems;
  int chr_max_arity = 0;
  cmd_characterize->add_option("--system", chr_systems, "system file")
      ->required();
  cmd_characterize->add_option("--max-arity", chr_max_arity, "arity bound")
      ->required();

  // --- minor ----------------------------------------------------------------
  auto* cmd_minor = app.add_subcommand("minor", "conjunctive-minor tools");
  auto* minor_tight =
      cmd_minor->add_subcommand("tight", "construct the tight minor");
  std::string mt_scheme, mt_out, mt_name = "tight";
  std::vector<std::string> mt_family;
  int mt_breadth = 0;
  minor_tight->add_option("--scheme", mt_scheme, "scheme file")->required();
  minor_tight->add_option("--family", mt_family,
                          "system file (one per scheme map)")
      ->required();
  minor_tight->add_option("--breadth", mt_breadth, "output breadth bound")
      ->required();
  minor_tight->add_option("--name", mt_name, "name for the output system");
  minor_tight->add_option("--out", mt_out, "output system file")->required();
  auto* minor_check =
      cmd_minor->add_subcommand("check", "verify a minor relationship");
  std::string mc_scheme, mc_system, mc_kind;
  std::vector<std::string> mc_family;
  minor_check->add_option("--scheme", mc_scheme, "scheme file")->required();
  minor_check->add_option("--family", mc_family, "system file")->required();
  minor_check->add_option("--system", mc_system, "candidate system file")
      ->required();
  minor_check
      ->add_option("--kind", mc_kind,
                   "restrictive | extensive | conjunctive")
      ->required();

  // --- sys --------------------------------------------------------------------
  auto* cmd_sys = app.add_subcommand("sys", "system-file tools");
  auto* sys_validate = cmd_sys->add_subcommand("validate", "check a file");
  std::string sv_file;
  sys_validate->add_option("file", sv_file, "system file")->required();
  auto* sys_echo = cmd_sys->add_subcommand("echo", "canonical re-emission");
  std::string se_file;
  sys_echo->add_option("file", se_file, "system file")->required();
  auto* sys_trivial = cmd_sys->add_subcommand("trivial", "fully allowing system");
  auto* sys_empty = cmd_sys->add_subcommand("empty", "fully refusing system");
  auto* sys_equality =
      cmd_sys->add_subcommand("equality", "constant-tuple system");
  int sg_domain = 2, sg_arity = 1, sg_breadth = 0;
  std::string sg_name = "s", sg_out;
  for (CLI::App* c : {sys_trivial, sys_empty, sys_equality}) {
    c->add_option("--domain", sg_domain, "domain size");
    c->add_option("--arity", sg_arity, "system arity");
    c->add_option("--breadth", sg_breadth, "breadth bound");
    c->add_option("--name", sg_name, "system name");
    c->add_option("--out", sg_out, "output file (default stdout)");
  }
  auto* sys_from_rel =
      cmd_sys->add_subcommand("from-rel", "system attached to a relation");
  std::string sfr_rel, sfr_rel_name, sfr_name = "s", sfr_out;
  int sfr_breadth = 0;
  sys_from_rel->add_option("--rel", sfr_rel, "relation file")->required();
  sys_from_rel->add_option("--rel-name", sfr_rel_name, "relation name");
  sys_from_rel->add_option("--breadth", sfr_breadth, "breadth bound")
      ->required();
  sys_from_rel->add_option("--name", sfr_name, "system name");
  sys_from_rel->add_option("--out", sfr_out, "output file (default stdout)");
  auto* sys_quotient = cmd_sys->add_subcommand("quotient", "divide by a multiset");
  std::string sq_in, sq_by, sq_out;
  sys_quotient->add_option("--in", sq_in, "system file")->required();
  sys_quotient->add_option("--by", sq_by, "multiset literal {t1,t2,...}")
      ->required();
  sys_quotient->add_option("--out", sq_out, "output file (default stdout)");
  auto* sys_restrict =
      cmd_sys->add_subcommand("restrict-breadth", "drop members above p");
  std::string sr_in, sr_out;
  int sr_p = 0;
  sys_restrict->add_option("--in", sr_in, "system file")->required();
  sys_restrict->add_option("-p,--breadth", sr_p, "new bound")->required();
  sys_restrict->add_option("--out", sr_out, "output file (default stdout)");
  auto* sys_union = cmd_sys->add_subcommand("union", "componentwise union");
  std::vector<std::string> su_in;
  std::string su_out;
  sys_union->add_option("--in", su_in, "system file (repeat)")->required();
  sys_union->add_option("--out", su_out, "output file (default stdout)");

  // --- rel ---------------------------------------------------------------------
  auto* cmd_rel = app.add_subcommand("rel", "relation-file tools");
  auto* rel_validate = cmd_rel->add_subcommand("validate", "check a file");
  std::string rv_file;
  rel_validate->add_option("file", rv_file, "relation file")->required();
  auto* rel_echo = cmd_rel->add_subcommand("echo", "canonical re-emission");
  std::string re_file;
  rel_echo->add_option("file", re_file, "relation file")->required();

  // --- mu -------------------------------------------------------------------
  auto* cmd_mu = app.add_subcommand("mu", "emit a member of the mu family");
  int mu_n = 0, mu_domain = 2;
  std::string mu_name = "mu", mu_out;
  cmd_mu->add_option("--n", mu_n, "arity (>= 3)")->required();
  cmd_mu->add_option("--domain", mu_domain, "domain size");
  cmd_mu->add_option("--name", mu_name, "operation name");
  cmd_mu->add_option("--out", mu_out, "output file (default stdout)");

  // --- linear-terms -----------------------------------------------------------
  auto* cmd_lt = app.add_subcommand(
      "linear-terms", "operations induced by repetition-free terms");
  std::string lt_ops, lt_sig;
  int lt_arity = 0, lt_complexity = 0;
  bool lt_list = false;
  cmd_lt->add_option("--ops", lt_ops, "operations file")->required();
  cmd_lt->add_option("--sig", lt_sig, "comma-separated symbol names")
      ->required();
  cmd_lt->add_option("--arity", lt_arity, "term arity")->required();
  cmd_lt->add_option("--max-complexity", lt_complexity, "symbol-count bound")
      ->required();
  cmd_lt->add_flag("--list", lt_list, "list the induced operations");

  // --- selftest ---------------------------------------------------------------
  app.add_subcommand("selftest", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  const Caps caps = parse_caps(cap_overrides);
  for (int b : {sg_breadth, sfr_breadth, mt_breadth, sr_p}) {
    if (b < 0) throw input_error("breadth bounds must be >= 0");
  }

  if (cmd_closure->parsed()) {
    Workspace ws;
    ws.caps = caps;
    ws.load_ops(closure_ops);
    const auto frag =
        generate(ws.dom, pick_generators(ws, closure_gens), closure_max_arity,
                 !closure_no_projections, closure_with_delta, caps);
    if (closure_list == !closure_contains_name.empty()) {
      throw input_error("closure needs exactly one of --list, --contains");
    }
    if (closure_list) {
      print_ops(std::cout, ws.dom, fragment_members(frag));
      return kTrue;
    }
    return closure_contains(frag, ws.op(closure_contains_name)) ? kTrue
                                                                : kFalse;
  }
  if (cmd_separate->parsed()) {
    Workspace ws;
    ws.caps = caps;
    ws.load_ops(sep_ops);
    const auto frag = generate(ws.dom, pick_generators(ws, sep_gens),
                               sep_max_arity, true, false, caps);
    const System sep = separating_system(frag, ws.op(sep_target), caps);
    write_file(sep_out, emit_system(SystemFile{"sep_" + sep_target, sep}));
    std::cout << "wrote " << sep_out << " (arity " << sep.arity
              << ", breadth " << sep.breadth << ", " << sep.ante.size()
              << " ante, " << sep.cons.size() << " cons)\n";
    return kTrue;
  }
  if (cmd_preserve->parsed()) {
    Workspace ws;
    ws.caps = caps;
    ws.load_ops(pre_ops);
    const Operation& f = ws.op(pre_op);
    if (pre_system.empty() == pre_rel.empty()) {
      throw input_error("preserve needs exactly one of --system, --rel");
    }
    bool verdict = false;
    if (!pre_system.empty()) {
      verdict = preserves_system(f, ws.load_system(pre_system));
    } else {
      ws.load_rel(pre_rel);
      verdict = preserves_relation(f, ws.rel_or_only(pre_rel_name), caps);
    }
    std::cout << (verdict ? "true" : "false") << "\n";
    return verdict ? kTrue : kFalse;
  }
  if (cmd_characterize->parsed()) {
    Workspace ws;
    ws.caps = caps;
    SystemLoader loader(ws);
    std::vector<System> systems;
    for (const std::string& path : chr_systems) {
      systems.push_back(loader.get(path));
    }
    print_ops(std::cout, ws.dom,
              characterized_ops(systems, ws.dom, chr_max_arity, caps));
    return kTrue;
  }
  if (minor_tight->parsed()) {
    Workspace ws;
    ws.caps = caps;
    ws.load_scheme(mt_scheme);
    SystemLoader loader(ws);
    std::vector<System> family;
    for (const std::string& path : mt_family) {
      family.push_back(loader.get(path));
    }
    const System out =
        tight_minor(family, ws.schemes.front().second,
                    static_cast<std::uint32_t>(mt_breadth), caps);
    const std::string text = emit_system(SystemFile{mt_name, out});
    if (mt_out.empty()) {
      std::cout << text;
    } else {
      write_file(mt_out, text);
    }
    return kTrue;
  }
  if (minor_check->parsed()) {
    Workspace ws;
    ws.caps = caps;
    ws.load_scheme(mc_scheme);
    SystemLoader loader(ws);
    std::vector<System> family;
    for (const std::string& path : mc_family) {
      family.push_back(loader.get(path));
    }
    const System sys = loader.get(mc_system);
    bool verdict = false;
    if (mc_kind == "restrictive") {
      verdict = is_restrictive_minor(sys, family, ws.schemes.front().second,
                                     caps);
    } else if (mc_kind == "extensive") {
      verdict =
          is_extensive_minor(sys, family, ws.schemes.front().second, caps);
    } else if (mc_kind == "conjunctive") {
      verdict =
          is_conjunctive_minor(sys, family, ws.schemes.front().second, caps);
    } else {
      throw input_error("unknown minor kind '" + mc_kind + "'");
    }
    std::cout << (verdict ? "true" : "false") << "\n";
    return verdict ? kTrue : kFalse;
  }
  if (sys_validate->parsed()) {
    const SystemFile file = parse_system(read_file(sv_file));
    std::cout << "valid: " << file.name << " (m=" << file.sys.arity
              << ", breadth=" << file.sys.breadth << ", "
              << file.sys.ante.size() << " ante, " << file.sys.cons.size()
              << " cons)\n";
    return kTrue;
  }
  if (sys_echo->parsed()) {
    std::cout << emit_system(parse_system(read_file(se_file)));
    return kTrue;
  }
  const auto emit_sys_result = [&](const System& sys, const std::string& name,
                                   const std::string& out_path) {
    const std::string text = emit_system(SystemFile{name, sys});
    if (out_path.empty()) {
      std::cout << text;
    } else {
      write_file(out_path, text);
    }
    return kTrue;
  };
  if (sys_trivial->parsed()) {
    return emit_sys_result(
        trivial_system(FiniteDomain{sg_domain}, sg_arity,
                       static_cast<std::uint32_t>(sg_breadth), caps),
        sg_name, sg_out);
  }
  if (sys_empty->parsed()) {
    return emit_sys_result(
        empty_system(FiniteDomain{sg_domain}, sg_arity,
                     static_cast<std::uint32_t>(sg_breadth)),
        sg_name, sg_out);
  }
  if (sys_equality->parsed()) {
    return emit_sys_result(
        equality_system(FiniteDomain{sg_domain}, sg_arity,
                        static_cast<std::uint32_t>(sg_breadth), caps),
        sg_name, sg_out);
  }
  if (sys_from_rel->parsed()) {
    Workspace ws;
    ws.caps = caps;
    ws.load_rel(sfr_rel);
    const Relation& r = ws.rel_or_only(sfr_rel_name);
    return emit_sys_result(
        system_from_relation(ws.dom, r.arity(), r.tuples(),
                             static_cast<std::uint32_t>(sfr_breadth), caps),
        sfr_name, sfr_out);
  }
  if (sys_quotient->parsed()) {
    const SystemFile file = parse_system(read_file(sq_in));
    const Multiset by =
        multiset_from_literal(sq_by, file.sys.arity, file.sys.dom);
    return emit_sys_result(quotient(file.sys, by), file.name, sq_out);
  }
  if (sys_restrict->parsed()) {
    const SystemFile file = parse_system(read_file(sr_in));
    return emit_sys_result(
        breadth_restrict(file.sys, static_cast<std::uint32_t>(sr_p)),
        file.name, sr_out);
  }
  if (sys_union->parsed()) {
    Workspace ws;
    ws.caps = caps;
    SystemLoader loader(ws);
    std::vector<System> systems;
    for (const std::string& path : su_in) {
      systems.push_back(loader.get(path));
    }
    return emit_sys_result(system_union(systems), "union", su_out);
  }
  if (rel_validate->parsed()) {
    const RelFile file = parse_rel(read_file(rv_file));
    std::cout << "valid: " << file.rels.size() << " relation(s)\n";
    return kTrue;
  }
  if (rel_echo->parsed()) {
    std::cout << emit_rel(parse_rel(read_file(re_file)));
    return kTrue;
  }
  if (cmd_mu->parsed()) {
    OpsFile file{FiniteDomain{mu_domain}, {}};
    file.ops.emplace_back(mu_name, mu(mu_n, FiniteDomain{mu_domain}));
    const std::string text = emit_ops(file);
    if (mu_out.empty()) {
      std::cout << text;
    } else {
      write_file(mu_out, text);
    }
    return kTrue;
  }
  if (cmd_lt->parsed()) {
    Workspace ws;
    ws.caps = caps;
    ws.load_ops(lt_ops);
    Signature sig;
    std::vector<Operation> assignment;
    for (const std::string& name : split_names(lt_sig)) {
      const Operation& f = ws.op(name);
      sig.symbols.emplace_back(name, f.arity());
      assignment.push_back(f);
    }
    const std::set<Operation> ops =
        linear_term_ops(sig, assignment, lt_arity, lt_complexity, caps);
    if (lt_list) {
      print_ops(std::cout, ws.dom,
                std::vector<Operation>(ops.begin(), ops.end()));
    } else {
      std::cout << ops.size() << "\n";
    }
    return kTrue;
  }
  // selftest
  const auto results = run_acceptance(&std::cout);
  const bool all = std::all_of(results.begin(), results.end(),
                               [](const CriterionResult& r) {
                                 return r.passed;
                               });
  return all ? kTrue : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const resource_limit_error& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kResourceError;
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
