/*! \file io.hpp
 *  \brief Text formats for operations, relations, systems and schemes.
 *
 *  One object per line; '#' starts a comment.  Readers are strict (trailing
 *  garbage is rejected, errors carry the line number) and validate what they
 *  load; writers emit canonical order, so emit(parse(emit(x))) == emit(x).
 *
 *    ops:     domain <k>
 *             op <name> <arity> <table>          table: k^arity base-k digits
 *    rel:     domain <k>
 *             rel <name> <m> <t1> <t2> ...       each t: m digits
 *    system:  domain <k>
 *             system <name> m=<m> breadth=<B>
 *             ante {t1,t2,...}                   one line per ante multiset
 *             cons <t0> {t1,...}                 one line per cons member
 *    scheme:  scheme <name> target=<m> vars=<v1,v2,...>
 *             map <n_j> <img_0> ... <img_{n_j-1}> img: coordinate or var name
 */

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "malcev/minor.hpp"
#include "malcev/preservation.hpp"

namespace malcev {

struct OpsFile {
  FiniteDomain dom;
  std::vector<std::pair<std::string, Operation>> ops;  // file order, unique

  const Operation& find(const std::string& name) const;
};

struct RelFile {
  FiniteDomain dom;
  std::vector<std::pair<std::string, Relation>> rels;

  const Relation& find(const std::string& name) const;
};

struct SystemFile {
  std::string name;
  System sys;
};

struct SchemeFile {
  std::string name;
  Scheme scheme;
};

OpsFile parse_ops(const std::string& text);
std::string emit_ops(const OpsFile& file);

RelFile parse_rel(const std::string& text);
std::string emit_rel(const RelFile& file);

SystemFile parse_system(const std::string& text);
std::string emit_system(const SystemFile& file);

SchemeFile parse_scheme(const std::string& text);
std::string emit_scheme(const SchemeFile& file);

/// Multiset literal: "{t1,t2,...}", tuples ascending, repeated; "{}" is
/// the empty multiset.
std::string multiset_literal(const Multiset& s);
Multiset multiset_from_literal(const std::string& text, int arity,
                               FiniteDomain dom);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/*! Named objects loaded from files.  The first loaded file fixes the
 *  domain, later files must agree, and names are unique per object kind. */
struct Workspace {
  FiniteDomain dom{0};  // size 0 until the first domain-carrying file loads
  Caps caps;
  std::vector<std::pair<std::string, Operation>> ops;
  std::vector<std::pair<std::string, Relation>> rels;
  std::vector<std::pair<std::string, System>> systems;
  std::vector<std::pair<std::string, Scheme>> schemes;

  void load_ops(const std::string& path);
  void load_rel(const std::string& path);
  /// Loads one system file; returns the freshly loaded system.
  const System& load_system(const std::string& path);
  const Scheme& load_scheme(const std::string& path);

  const Operation& op(const std::string& name) const;
  const Relation& rel(const std::string& name) const;
  /// The single loaded relation, or the named one when a name is given.
  const Relation& rel_or_only(const std::string& name) const;
};

}  // namespace malcev
