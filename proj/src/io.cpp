#include "malcev/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace malcev {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    std::istringstream linein(raw);
    Line line{number, {}};
    std::string token;
    while (linein >> token) line.tokens.push_back(token);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw input_error("line " + std::to_string(line) + ": " + what);
}

int parse_int(const Line& line, const std::string& text,
              const std::string& what) {
  if (text.empty() ||
      !std::all_of(text.begin(), text.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    fail(line.number, what + " must be a nonnegative integer, got '" + text +
                          "'");
  }
  try {
    return std::stoi(text);
  } catch (const std::exception&) {
    fail(line.number, what + " out of range: '" + text + "'");
  }
}

int parse_keyed_int(const Line& line, const std::string& token,
                    const std::string& key) {
  if (token.rfind(key + "=", 0) != 0) {
    fail(line.number, "expected " + key + "=<value>, got '" + token + "'");
  }
  return parse_int(line, token.substr(key.size() + 1), key);
}

FiniteDomain parse_domain_line(const Line& line) {
  if (line.tokens.size() != 2 || line.tokens[0] != "domain") {
    fail(line.number, "expected 'domain <k>'");
  }
  const int k = parse_int(line, line.tokens[1], "domain size");
  if (k < 1 || k > 10) {
    fail(line.number, "domain size must be 1..10 for digit tables");
  }
  return FiniteDomain{k};
}

void check_name(const Line& line, const std::string& name) {
  if (name.empty() || (!std::isalpha(static_cast<unsigned char>(name[0])) &&
                       name[0] != '_')) {
    fail(line.number, "name '" + name + "' must start with a letter or '_'");
  }
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
      fail(line.number, "name '" + name + "' has an invalid character");
    }
  }
}

}  // namespace

const Operation& OpsFile::find(const std::string& name) const {
  for (const auto& [n, op] : ops) {
    if (n == name) return op;
  }
  throw input_error("no operation named '" + name + "'");
}

const Relation& RelFile::find(const std::string& name) const {
  for (const auto& [n, rel] : rels) {
    if (n == name) return rel;
  }
  throw input_error("no relation named '" + name + "'");
}

OpsFile parse_ops(const std::string& text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw input_error("empty operations file");
  OpsFile file{parse_domain_line(lines.front()), {}};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.tokens[0] != "op" || line.tokens.size() != 4) {
      fail(line.number, "expected 'op <name> <arity> <table>'");
    }
    const std::string& name = line.tokens[1];
    check_name(line, name);
    for (const auto& [existing, op] : file.ops) {
      if (existing == name) fail(line.number, "duplicate op '" + name + "'");
    }
    const int arity = parse_int(line, line.tokens[2], "arity");
    if (arity < 1) fail(line.number, "arity must be >= 1");
    const std::string& digits = line.tokens[3];
    std::uint64_t cells = 0;
    try {
      cells = file.dom.power(arity);
    } catch (const resource_limit_error&) {
      fail(line.number, "table for arity " + std::to_string(arity) +
                            " is not representable");
    }
    if (digits.size() != cells) {
      fail(line.number, "table must have " + std::to_string(cells) +
                            " digits, got " + std::to_string(digits.size()));
    }
    std::vector<Value> table;
    table.reserve(digits.size());
    for (char c : digits) {
      if (c < '0' || c >= '0' + file.dom.size) {
        fail(line.number, std::string("table digit '") + c +
                              "' out of range for domain size " +
                              std::to_string(file.dom.size));
      }
      table.push_back(static_cast<Value>(c - '0'));
    }
    file.ops.emplace_back(name, Operation(file.dom, arity, std::move(table)));
  }
  return file;
}

std::string emit_ops(const OpsFile& file) {
  std::ostringstream out;
  out << "domain " << file.dom.size << "\n";
  for (const auto& [name, op] : file.ops) {
    out << "op " << name << " " << op.arity() << " ";
    for (Value v : op.table()) out << static_cast<char>('0' + v);
    out << "\n";
  }
  return out.str();
}

RelFile parse_rel(const std::string& text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw input_error("empty relation file");
  RelFile file{parse_domain_line(lines.front()), {}};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.tokens[0] != "rel" || line.tokens.size() < 3) {
      fail(line.number, "expected 'rel <name> <m> <t1> <t2> ...'");
    }
    const std::string& name = line.tokens[1];
    check_name(line, name);
    for (const auto& [existing, rel] : file.rels) {
      if (existing == name) fail(line.number, "duplicate rel '" + name + "'");
    }
    const int m = parse_int(line, line.tokens[2], "relation arity");
    if (m < 1) fail(line.number, "relation arity must be >= 1");
    std::set<PointRank> tuples;
    for (std::size_t t = 3; t < line.tokens.size(); ++t) {
      try {
        tuples.insert(tuple_from_string(line.tokens[t], m, file.dom));
      } catch (const input_error& e) {
        fail(line.number, e.what());
      }
    }
    file.rels.emplace_back(name, Relation(file.dom, m, std::move(tuples)));
  }
  return file;
}

std::string emit_rel(const RelFile& file) {
  std::ostringstream out;
  out << "domain " << file.dom.size << "\n";
  for (const auto& [name, rel] : file.rels) {
    out << "rel " << name << " " << rel.arity();
    for (PointRank t : rel.tuples()) {
      out << " " << tuple_to_string(t, rel.arity(), file.dom);
    }
    out << "\n";
  }
  return out.str();
}

std::string multiset_literal(const Multiset& s) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (PointRank p : s.expand()) {
    if (!first) out << ",";
    first = false;
    out << tuple_to_string(p, s.arity(), s.domain());
  }
  out << "}";
  return out.str();
}

Multiset multiset_from_literal(const std::string& text, int arity,
                               FiniteDomain dom) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw input_error("multiset literal must be {t1,t2,...}, got '" + text +
                      "'");
  }
  const std::string inner = text.substr(1, text.size() - 2);
  std::vector<PointRank> points;
  if (!inner.empty()) {
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = inner.find(',', start);
      const std::string item = inner.substr(
          start, comma == std::string::npos ? std::string::npos
                                            : comma - start);
      points.push_back(tuple_from_string(item, arity, dom));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return Multiset(dom, arity, std::move(points));
}

SystemFile parse_system(const std::string& text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.size() < 2) throw input_error("truncated system file");
  const FiniteDomain dom = parse_domain_line(lines[0]);
  const Line& head = lines[1];
  if (head.tokens.size() != 4 || head.tokens[0] != "system") {
    fail(head.number, "expected 'system <name> m=<m> breadth=<B>'");
  }
  SystemFile file;
  file.name = head.tokens[1];
  check_name(head, file.name);
  const int m = parse_keyed_int(head, head.tokens[2], "m");
  const int breadth = parse_keyed_int(head, head.tokens[3], "breadth");
  if (m < 1) fail(head.number, "system arity must be >= 1");
  file.sys = System{dom, m, static_cast<std::uint32_t>(breadth), {}, {}};
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const Line& line = lines[i];
    try {
      if (line.tokens[0] == "ante" && line.tokens.size() == 2) {
        file.sys.ante.insert(multiset_from_literal(line.tokens[1], m, dom));
      } else if (line.tokens[0] == "cons" && line.tokens.size() == 3) {
        const PointRank point = tuple_from_string(line.tokens[1], m, dom);
        file.sys.cons.insert(PointedMultiset{
            point, multiset_from_literal(line.tokens[2], m, dom)});
      } else {
        fail(line.number, "expected 'ante {...}' or 'cons <t0> {...}'");
      }
    } catch (const input_error& e) {
      const std::string what = e.what();
      if (what.rfind("line ", 0) == 0) throw;
      fail(line.number, what);
    }
  }
  if (auto why = validate(file.sys)) {
    throw input_error("invalid system '" + file.name + "': " + *why);
  }
  return file;
}

std::string emit_system(const SystemFile& file) {
  std::ostringstream out;
  out << "domain " << file.sys.dom.size << "\n";
  out << "system " << file.name << " m=" << file.sys.arity
      << " breadth=" << file.sys.breadth << "\n";
  for (const Multiset& s : file.sys.ante) {
    out << "ante " << multiset_literal(s) << "\n";
  }
  for (const PointedMultiset& ps : file.sys.cons) {
    out << "cons " << tuple_to_string(ps.point, file.sys.arity, file.sys.dom)
        << " " << multiset_literal(ps.rest) << "\n";
  }
  return out.str();
}

SchemeFile parse_scheme(const std::string& text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw input_error("empty scheme file");
  const Line& head = lines.front();
  if (head.tokens.size() != 4 || head.tokens[0] != "scheme") {
    fail(head.number, "expected 'scheme <name> target=<m> vars=<v1,v2,...>'");
  }
  SchemeFile file;
  file.name = head.tokens[1];
  check_name(head, file.name);
  file.scheme.target = parse_keyed_int(head, head.tokens[2], "target");
  const std::string& vars_token = head.tokens[3];
  if (vars_token.rfind("vars=", 0) != 0) {
    fail(head.number, "expected vars=<v1,v2,...>, got '" + vars_token + "'");
  }
  const std::string vars = vars_token.substr(5);
  if (!vars.empty()) {
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = vars.find(',', start);
      const std::string item = vars.substr(
          start, comma == std::string::npos ? std::string::npos
                                            : comma - start);
      check_name(head, item);
      if (std::find(file.scheme.vars.begin(), file.scheme.vars.end(), item) !=
          file.scheme.vars.end()) {
        fail(head.number, "duplicate indeterminate '" + item + "'");
      }
      file.scheme.vars.push_back(item);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.tokens[0] != "map" || line.tokens.size() < 2) {
      fail(line.number, "expected 'map <n_j> <img_0> ... <img_{n_j-1}>'");
    }
    const int nj = parse_int(line, line.tokens[1], "map source arity");
    if (nj < 1) fail(line.number, "map source arity must be >= 1");
    if (static_cast<int>(line.tokens.size()) != 2 + nj) {
      fail(line.number, "map declares " + std::to_string(nj) +
                            " images but lists " +
                            std::to_string(line.tokens.size() - 2));
    }
    SchemeMap h;
    for (int t = 0; t < nj; ++t) {
      const std::string& img = line.tokens[static_cast<std::size_t>(t) + 2];
      const bool numeric = std::all_of(
          img.begin(), img.end(),
          [](char c) { return c >= '0' && c <= '9'; });
      if (numeric) {
        const int coord = parse_int(line, img, "coordinate");
        if (coord >= file.scheme.target) {
          fail(line.number, "coordinate " + img + " out of range 0.." +
                                std::to_string(file.scheme.target - 1));
        }
        h.push_back(SchemeImage{false, coord});
      } else {
        const auto it = std::find(file.scheme.vars.begin(),
                                  file.scheme.vars.end(), img);
        if (it == file.scheme.vars.end()) {
          fail(line.number, "undeclared indeterminate '" + img + "'");
        }
        h.push_back(SchemeImage{
            true, static_cast<int>(it - file.scheme.vars.begin())});
      }
    }
    file.scheme.maps.push_back(std::move(h));
  }
  if (file.scheme.maps.empty()) {
    throw input_error("scheme '" + file.name + "' declares no maps");
  }
  check_scheme(file.scheme);
  return file;
}

std::string emit_scheme(const SchemeFile& file) {
  std::ostringstream out;
  out << "scheme " << file.name << " target=" << file.scheme.target
      << " vars=";
  for (std::size_t i = 0; i < file.scheme.vars.size(); ++i) {
    if (i > 0) out << ",";
    out << file.scheme.vars[i];
  }
  out << "\n";
  for (const SchemeMap& h : file.scheme.maps) {
    out << "map " << h.size();
    for (const SchemeImage& img : h) {
      if (img.is_var) {
        out << " " << file.scheme.vars[static_cast<std::size_t>(img.index)];
      } else {
        out << " " << img.index;
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw input_error("write to '" + path + "' failed");
}

namespace {

void adopt_domain(FiniteDomain& current, FiniteDomain loaded,
                  const std::string& path) {
  if (current.size == 0) {
    current = loaded;
  } else if (!(current == loaded)) {
    throw input_error("'" + path + "' uses domain size " +
                      std::to_string(loaded.size) +
                      ", the workspace has " + std::to_string(current.size));
  }
}

template <typename T>
void insert_unique(std::vector<std::pair<std::string, T>>& into,
                   const std::string& kind, std::string name, T value) {
  for (const auto& [existing, unused] : into) {
    if (existing == name) {
      throw input_error("duplicate " + kind + " name '" + name + "'");
    }
  }
  into.emplace_back(std::move(name), std::move(value));
}

}  // namespace

void Workspace::load_ops(const std::string& path) {
  OpsFile file = parse_ops(read_file(path));
  adopt_domain(dom, file.dom, path);
  for (auto& [name, op] : file.ops) {
    insert_unique(ops, "operation", std::move(name), std::move(op));
  }
}

void Workspace::load_rel(const std::string& path) {
  RelFile file = parse_rel(read_file(path));
  adopt_domain(dom, file.dom, path);
  for (auto& [name, rel] : file.rels) {
    insert_unique(rels, "relation", std::move(name), std::move(rel));
  }
}

const System& Workspace::load_system(const std::string& path) {
  SystemFile file = parse_system(read_file(path));
  adopt_domain(dom, file.sys.dom, path);
  insert_unique(systems, "system", std::move(file.name), std::move(file.sys));
  return systems.back().second;
}

const Scheme& Workspace::load_scheme(const std::string& path) {
  SchemeFile file = parse_scheme(read_file(path));
  insert_unique(schemes, "scheme", std::move(file.name),
                std::move(file.scheme));
  return schemes.back().second;
}

const Operation& Workspace::op(const std::string& name) const {
  for (const auto& [n, f] : ops) {
    if (n == name) return f;
  }
  throw input_error("no operation named '" + name + "'");
}

const Relation& Workspace::rel(const std::string& name) const {
  for (const auto& [n, r] : rels) {
    if (n == name) return r;
  }
  throw input_error("no relation named '" + name + "'");
}

const Relation& Workspace::rel_or_only(const std::string& name) const {
  if (!name.empty()) return rel(name);
  if (rels.size() == 1) return rels.front().second;
  throw input_error(rels.empty() ? "no relations loaded"
                                 : "several relations loaded, name one");
}

}  // namespace malcev
