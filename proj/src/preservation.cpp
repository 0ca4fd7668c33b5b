#include "malcev/preservation.hpp"

#include <algorithm>

namespace malcev {

Relation::Relation(FiniteDomain dom, int arity, std::set<PointRank> tuples)
    : dom_(dom), arity_(arity), tuples_(std::move(tuples)) {
  if (arity_ < 1) throw input_error("relation arity must be >= 1");
  const std::uint64_t universe = dom_.power(arity_);
  for (PointRank r : tuples_) {
    if (r >= universe) throw input_error("relation tuple out of range");
  }
}

bool preserves_relation(const Operation& f, const Relation& r,
                        const Caps& caps) {
  if (f.domain() != r.domain()) {
    throw input_error("preserves_relation requires a shared domain");
  }
  const int n = f.arity();
  const int m = r.arity();
  const std::vector<PointRank> members(r.tuples().begin(), r.tuples().end());
  if (members.empty()) return true;

  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) {
    if (count > caps.relation_matrix_cap / members.size()) {
      throw resource_limit_error("preserves_relation would enumerate more "
                                 "than " +
                                 std::to_string(caps.relation_matrix_cap) +
                                 " matrices");
    }
    count *= members.size();
  }

  std::vector<std::vector<Value>> decoded;
  decoded.reserve(members.size());
  for (PointRank p : members) decoded.push_back(tuple_unrank(p, m, r.domain()));

  std::vector<std::size_t> choice(static_cast<std::size_t>(n), 0);
  std::vector<Value> row(static_cast<std::size_t>(n));
  std::vector<Value> image(static_cast<std::size_t>(m));
  for (;;) {
    for (int i = 0; i < m; ++i) {
      for (int jj = 0; jj < n; ++jj) {
        row[static_cast<std::size_t>(jj)] =
            decoded[choice[static_cast<std::size_t>(jj)]]
                   [static_cast<std::size_t>(i)];
      }
      image[static_cast<std::size_t>(i)] = f(row);
    }
    if (!r.contains(tuple_rank(image, r.domain()))) return false;
    std::size_t i = 0;
    while (i < static_cast<std::size_t>(n) &&
           choice[i] + 1 == members.size()) {
      choice[i] = 0;
      ++i;
    }
    if (i == static_cast<std::size_t>(n)) return true;
    ++choice[i];
  }
}

bool preserves_system(const Operation& f, const System& sys) {
  if (f.domain() != sys.dom) {
    throw input_error("preserves_system requires a shared domain");
  }
  const int n = f.arity();
  std::vector<std::vector<Value>> decoded;
  std::vector<Value> row(static_cast<std::size_t>(n));
  std::vector<Value> image(static_cast<std::size_t>(sys.arity));
  for (const Multiset& s : sys.ante) {
    if (s.cardinality() < static_cast<std::uint64_t>(n)) continue;
    for (const Arrangement& arr : enumerate_arrangements(s, n)) {
      decoded.clear();
      for (PointRank p : arr.chosen) {
        decoded.push_back(tuple_unrank(p, sys.arity, sys.dom));
      }
      for (int i = 0; i < sys.arity; ++i) {
        for (int jj = 0; jj < n; ++jj) {
          row[static_cast<std::size_t>(jj)] =
              decoded[static_cast<std::size_t>(jj)]
                     [static_cast<std::size_t>(i)];
        }
        image[static_cast<std::size_t>(i)] = f(row);
      }
      const PointRank y = tuple_rank(image, sys.dom);
      if (sys.cons.count(PointedMultiset{y, arr.rest}) == 0) return false;
    }
  }
  return true;
}

std::vector<Operation> characterized_ops(std::span<const System> systems,
                                         FiniteDomain dom, int max_arity,
                                         const Caps& caps) {
  for (const System& sys : systems) {
    if (sys.dom != dom) {
      throw input_error("characterized_ops requires a shared domain");
    }
  }
  if (max_arity > caps.max_arity(dom.size)) {
    throw resource_limit_error("arity bound " + std::to_string(max_arity) +
                               " exceeds the configured dense-table bound " +
                               std::to_string(caps.max_arity(dom.size)));
  }
  std::vector<Operation> out;
  for (int n = 1; n <= max_arity; ++n) {
    const std::uint64_t cells = dom.power(n);
    // table space k^(k^n), checked against the cap before sweeping
    std::uint64_t space = 1;
    for (std::uint64_t c = 0; c < cells; ++c) {
      if (space > caps.table_space / static_cast<std::uint64_t>(dom.size)) {
        throw resource_limit_error(
            "table space for arity " + std::to_string(n) + " exceeds cap " +
            std::to_string(caps.table_space));
      }
      space *= static_cast<std::uint64_t>(dom.size);
    }
    std::vector<Value> table(cells, 0);
    for (std::uint64_t t = 0; t < space; ++t) {
      Operation f(dom, n, table);
      bool ok = true;
      for (const System& sys : systems) {
        if (!preserves_system(f, sys)) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(std::move(f));
      // next table, last cell least significant
      std::size_t i = cells;
      while (i > 0) {
        --i;
        if (table[i] + 1 < dom.size) {
          ++table[i];
          break;
        }
        table[i] = 0;
        if (i == 0) break;
      }
    }
  }
  return out;
}

bool all_preserve(std::span<const Operation> ops, const System& sys) {
  return std::all_of(ops.begin(), ops.end(), [&](const Operation& f) {
    return preserves_system(f, sys);
  });
}

}  // namespace malcev
