#include "malcev/closure.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace malcev {

bool ClosedSetFragment::contains_table(int arity,
                                       const std::vector<Value>& table) const {
  if (arity < 1 || arity > max_arity) return false;
  return members[static_cast<std::size_t>(arity)].count(table) != 0;
}

ClosedSetFragment generate(FiniteDomain dom,
                           std::vector<std::pair<std::string, Operation>> gens,
                           int max_arity, bool with_projections,
                           bool with_delta, const Caps& caps) {
  if (max_arity < 1) throw input_error("closure arity bound must be >= 1");
  if (max_arity > caps.max_arity(dom.size)) {
    throw resource_limit_error("arity bound " + std::to_string(max_arity) +
                               " exceeds the configured dense-table bound " +
                               std::to_string(caps.max_arity(dom.size)));
  }
  ClosedSetFragment frag;
  frag.dom = dom;
  frag.max_arity = max_arity;
  frag.with_projections = with_projections;
  frag.with_delta = with_delta;
  frag.generators = std::move(gens);
  if (with_delta) {
    // Identification can bring a wide generator back under the bound, so the
    // working bound must cover the generators.
    for (const auto& [name, g] : frag.generators) {
      frag.max_arity = std::max(frag.max_arity, g.arity());
    }
    if (frag.max_arity > caps.max_arity(dom.size)) {
      throw resource_limit_error("generator arities push the bound past the "
                                 "configured dense-table limit");
    }
  }
  frag.members.resize(static_cast<std::size_t>(frag.max_arity) + 1);

  std::uint64_t total = 0;
  // deque keeps references stable while the fixpoint grows
  std::vector<std::deque<Operation>> known(
      static_cast<std::size_t>(frag.max_arity) + 1);
  std::deque<Operation> work;
  auto add = [&](const Operation& f) {
    if (f.arity() > frag.max_arity) return;
    auto& slot = frag.members[static_cast<std::size_t>(f.arity())];
    if (!slot.insert(f.table()).second) return;
    if (++total > caps.closure_member_cap) {
      throw resource_limit_error("closure fragment exceeds member cap of " +
                                 std::to_string(caps.closure_member_cap));
    }
    known[static_cast<std::size_t>(f.arity())].push_back(f);
    work.push_back(f);
  };

  if (with_projections) {
    for (int n = 1; n <= frag.max_arity; ++n) {
      for (int i = 1; i <= n; ++i) add(projection(dom, n, i));
    }
  }
  for (const auto& [name, g] : frag.generators) {
    if (g.domain() != dom) {
      throw input_error("generator '" + name + "' is over the wrong domain");
    }
    // Without identification every derivative of a too-wide generator stays
    // above the bound, so such a generator is inert and skipped.
    add(g);
  }

  while (!work.empty()) {
    const Operation f = work.front();
    work.pop_front();
    add(zeta(f));
    add(tau(f));
    if (with_delta) add(delta(f));
    if (f.arity() + 1 <= frag.max_arity) add(nabla(f));
    // Pairs with members discovered later are handled when those are popped.
    for (int ga = 1; f.arity() + ga - 1 <= frag.max_arity; ++ga) {
      auto& peers = known[static_cast<std::size_t>(ga)];
      const std::size_t snapshot = peers.size();
      for (std::size_t i = 0; i < snapshot; ++i) {
        const Operation& g = peers[i];
        add(star(f, g));
        add(star(g, f));
      }
    }
  }
  return frag;
}

bool closure_contains(const ClosedSetFragment& fragment, const Operation& g) {
  if (g.domain() != fragment.dom) {
    throw input_error("membership query over the wrong domain");
  }
  if (g.arity() > fragment.max_arity) {
    throw input_error("membership query of arity " +
                      std::to_string(g.arity()) +
                      " beyond the fragment bound " +
                      std::to_string(fragment.max_arity));
  }
  return fragment.contains_table(g.arity(), g.table());
}

int min_arity(const ClosedSetFragment& fragment) {
  for (int n = 1; n <= fragment.max_arity; ++n) {
    if (!fragment.members[static_cast<std::size_t>(n)].empty()) return n;
  }
  throw input_error("the empty fragment has no minimum arity");
}

std::set<std::vector<Value>> image_set(const ClosedSetFragment& fragment,
                                       const Matrix& m) {
  const int c = m.cols();
  if (c < 1 || c > fragment.max_arity) {
    throw input_error("image_set needs 1.." +
                      std::to_string(fragment.max_arity) + " columns, got " +
                      std::to_string(c));
  }
  if (m.domain() != fragment.dom) {
    throw input_error("image_set over the wrong domain");
  }
  std::set<std::vector<Value>> images;
  std::vector<Value> row(static_cast<std::size_t>(c));
  for (const std::vector<Value>& table :
       fragment.members[static_cast<std::size_t>(c)]) {
    std::vector<Value> image(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i) {
      for (int j = 0; j < c; ++j) {
        row[static_cast<std::size_t>(j)] =
            m.column(j)[static_cast<std::size_t>(i)];
      }
      image[static_cast<std::size_t>(i)] = table[tuple_rank(row, m.domain())];
    }
    images.insert(std::move(image));
  }
  return images;
}

std::vector<Operation> fragment_members(const ClosedSetFragment& fragment) {
  std::vector<Operation> out;
  for (int n = 1; n <= fragment.max_arity; ++n) {
    for (const std::vector<Value>& table :
         fragment.members[static_cast<std::size_t>(n)]) {
      out.emplace_back(fragment.dom, n, table);
    }
  }
  return out;
}

System separating_system(const ClosedSetFragment& fragment, const Operation& g,
                         const Caps& caps) {
  if (closure_contains(fragment, g)) {
    throw std::logic_error(
        "separating_system: the target operation is in the fragment");
  }
  const FiniteDomain dom = fragment.dom;
  const int n = g.arity();
  const std::uint64_t rows64 = dom.power(n);
  if (rows64 > caps.separate_rows) {
    throw resource_limit_error("witness matrix would have " +
                               std::to_string(rows64) +
                               " rows, cap is " +
                               std::to_string(caps.separate_rows));
  }
  const int rows = static_cast<int>(rows64);
  dom.power(rows);  // the ranks of m-tuples must be representable

  // The witness matrix: row r is the n-tuple of rank r.
  std::vector<std::vector<Value>> cols(
      static_cast<std::size_t>(n),
      std::vector<Value>(static_cast<std::size_t>(rows)));
  for (int r = 0; r < rows; ++r) {
    const std::vector<Value> t = tuple_unrank(static_cast<PointRank>(r), n, dom);
    for (int j = 0; j < n; ++j) {
      cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)] =
          t[static_cast<std::size_t>(j)];
    }
  }
  const Matrix witness(dom, rows, cols);
  const Multiset all_columns = columns_multiset(witness);
  bool fragment_empty = true;
  for (int a = 1; a <= fragment.max_arity; ++a) {
    if (!fragment.members[static_cast<std::size_t>(a)].empty()) {
      fragment_empty = false;
      break;
    }
  }
  // An empty fragment degenerates to the ({M*}, {}) witness below: no
  // partition has image choices, so only the full column multiset remains.
  const std::uint32_t mu_bound =
      fragment_empty ? 1 : static_cast<std::uint32_t>(min_arity(fragment));

  std::map<Multiset, std::vector<PointRank>> image_memo;
  auto block_images = [&](const Multiset& block) -> const std::vector<PointRank>& {
    auto it = image_memo.find(block);
    if (it != image_memo.end()) return it->second;
    std::vector<std::vector<Value>> bcols;
    for (PointRank p : block.expand()) {
      bcols.push_back(tuple_unrank(p, rows, dom));
    }
    std::vector<PointRank> ranks;
    for (const std::vector<Value>& image :
         image_set(fragment, Matrix(dom, rows, std::move(bcols)))) {
      ranks.push_back(tuple_rank(image, dom));
    }
    std::sort(ranks.begin(), ranks.end());
    return image_memo.emplace(block, std::move(ranks)).first->second;
  };

  std::set<Multiset> ante;
  std::set<PointedMultiset> cons;
  ante.insert(all_columns);  // the X = M* case, with the empty partition
  std::uint64_t budget = 0;
  for (const Multiset& x : enumerate_submultisets(all_columns)) {
    const Multiset rest = difference(all_columns, x);
    if (rest.empty()) continue;
    for (const std::vector<Multiset>& blocks :
         enumerate_partitions(rest, mu_bound)) {
      std::vector<const std::vector<PointRank>*> images;
      images.reserve(blocks.size());
      for (const Multiset& block : blocks) images.push_back(&block_images(block));
      if (std::any_of(images.begin(), images.end(),
                      [](const auto* v) { return v->empty(); })) {
        continue;  // no image choice exists for some block
      }
      std::vector<std::size_t> choice(blocks.size(), 0);
      for (;;) {
        if (++budget > caps.separate_budget) {
          throw resource_limit_error("separating-system enumeration exceeds "
                                     "cap of " +
                                     std::to_string(caps.separate_budget));
        }
        std::vector<PointRank> picked(blocks.size());
        for (std::size_t i = 0; i < blocks.size(); ++i) {
          picked[i] = (*images[i])[choice[i]];
        }
        ante.insert(join(Multiset(dom, rows, picked), x));
        for (std::size_t first = 0; first < blocks.size(); ++first) {
          std::vector<PointRank> others;
          others.reserve(picked.size() - 1);
          for (std::size_t i = 0; i < picked.size(); ++i) {
            if (i != first) others.push_back(picked[i]);
          }
          cons.insert(PointedMultiset{
              picked[first], join(Multiset(dom, rows, std::move(others)), x)});
        }
        std::size_t i = 0;
        while (i < blocks.size() && choice[i] + 1 == images[i]->size()) {
          choice[i] = 0;
          ++i;
        }
        if (i == blocks.size()) break;
        ++choice[i];
      }
    }
  }

  System out{dom, rows, static_cast<std::uint32_t>(n), std::move(ante),
             std::move(cons)};
  if (auto why = validate(out)) {
    throw std::logic_error("separating system failed validation: " + *why);
  }
  for (const Operation& f : fragment_members(fragment)) {
    if (!preserves_system(f, out)) {
      throw std::logic_error(
          "separating system is not preserved by a fragment member");
    }
  }
  if (preserves_system(g, out)) {
    throw std::logic_error("separating system does not separate the target");
  }
  return out;
}

}  // namespace malcev
