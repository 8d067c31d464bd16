#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "pathwidth_vc.hpp"
#include "subset_convolution.hpp"
#include "treewidth_vc.hpp"
#include "valid_states.hpp"

namespace vcw {

// Number of S-vertices that see L but nothing of R = C \ (L u X).
inline int side_count(const CoverSpace& cs, CoverMask lower, CoverMask bag) {
  const CoverMask rest = cs.full() & ~(lower | bag);
  int count = 0;
  for (CoverMask nb : cs.independent_neighborhoods()) count += (nb & lower) && !(nb & rest);
  return count;
}

struct JoinLayerCounters {
  std::uint64_t cells = 0;          // sum of 2^|C \ X| over the bags X that were processed
  std::uint64_t transform_ops = 0;  // additions and multiplications in zeta, product and Mobius steps
};

namespace detail {

inline std::uint32_t compress(CoverMask m, CoverMask universe) {
  std::uint32_t out = 0;
  int pos = 0;
  for (CoverMask u = universe; u; u &= u - 1, ++pos)
    if (m & (u & (~u + 1))) out |= std::uint32_t{1} << pos;
  return out;
}

}  // namespace detail

// Join lower values for every triple, given the previous layer's values of
// states whose upper op is a join (prev_plain). For a bag X, a split of L into
// children L1, L2 costs max(val(L1), val(L2), |X| - 1 + a(L) - l(L1) - l(L2)),
// where a(L) counts S-vertices seeing L and l(Y) counts those whose
// neighbourhood outside X is non-empty and inside Y. For each threshold t and
// each pair of l-classes, ranked subset convolution of the "value <= t"
// indicators tells which L admit such a split.
inline std::vector<std::uint16_t> join_layer(const CoverSpace& cs, const TripleIndex& index,
                                             const std::vector<std::uint16_t>& prev_plain,
                                             JoinLayerCounters* counters = nullptr) {
  std::vector<std::uint16_t> out(index.size(), kUnreachable);
  const int c = cs.size();
  const CoverMask full = cs.full();
  const auto& nbs = cs.independent_neighborhoods();

  struct Entry {
    std::uint32_t set;
    std::uint16_t value;
    std::uint16_t side;
  };
  struct Target {
    std::uint32_t set;
    std::uint32_t id;
    int rank;
    int base;  // |X| - 1 + a(L)
    int best;
  };
  std::vector<Entry> entries;
  std::vector<Target> targets;
  std::vector<CoverMask> union_full;
  std::vector<std::uint32_t> union_small;
  std::vector<std::uint64_t> indicator, product;
  // zeta[class][rank] over the universe, empty when the rank has no members
  std::vector<std::vector<std::vector<std::uint64_t>>> zeta;

  for (std::uint64_t xm = 0; xm < (std::uint64_t{1} << c); ++xm) {
    const CoverMask x = static_cast<CoverMask>(xm);
    const std::uint32_t m = index.component_count(x);
    if (m < 2) continue;
    const CoverMask universe = full & ~x;
    const int s = popcount(universe);
    const std::size_t cells = std::size_t{1} << s;
    const CoverMask* comps = index.components_begin(x);
    const std::uint64_t first = index.first_id(x);
    const int bag_size = popcount(x);

    union_full.assign(std::size_t{1} << m, 0);
    union_small.assign(std::size_t{1} << m, 0);
    entries.clear();
    targets.clear();
    const std::uint64_t all = (std::uint64_t{1} << m) - 1;
    for (std::uint64_t sel = 1; sel <= all; ++sel) {
      const int j = std::countr_zero(sel);
      const std::uint64_t prev = sel & (sel - 1);
      union_full[sel] = union_full[prev] | comps[j];
      union_small[sel] = union_small[prev] | detail::compress(comps[j], universe);
      const CoverMask l = union_full[sel];
      if (sel != all) {
        const std::uint16_t v = prev_plain[first + sel];
        if (v != kUnreachable) {
          int side = 0;
          for (CoverMask nb : nbs) {
            const CoverMask outside = nb & universe;
            side += outside && (outside & ~l) == 0;
          }
          entries.push_back({union_small[sel], v, static_cast<std::uint16_t>(side)});
        }
      }
      if (std::popcount(sel) >= 2) {
        int seen = 0;
        for (CoverMask nb : nbs) seen += (nb & l) != 0;
        targets.push_back({union_small[sel], static_cast<std::uint32_t>(first + sel), popcount(l),
                           bag_size - 1 + seen, kUnreachable});
      }
    }
    if (entries.size() < 2 || targets.empty()) continue;
    if (counters) counters->cells += cells;

    std::vector<std::uint16_t> thresholds;
    for (const auto& e : entries) thresholds.push_back(e.value);
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    for (std::uint16_t t : thresholds) {
      int worst = 0;
      for (const auto& tg : targets) worst = std::max(worst, tg.best);
      if (t >= worst) break;

      std::vector<int> classes;
      for (const auto& e : entries)
        if (e.value <= t) classes.push_back(e.side);
      std::sort(classes.begin(), classes.end());
      classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
      const std::size_t cc = classes.size();
      zeta.assign(cc, std::vector<std::vector<std::uint64_t>>(static_cast<std::size_t>(s + 1)));
      for (const auto& e : entries) {
        if (e.value > t) continue;
        const std::size_t k = static_cast<std::size_t>(
            std::lower_bound(classes.begin(), classes.end(), e.side) - classes.begin());
        auto& layer = zeta[k][static_cast<std::size_t>(std::popcount(e.set))];
        if (layer.empty()) layer.assign(cells, 0);
        layer[e.set] = 1;
      }
      for (auto& by_rank : zeta)
        for (auto& layer : by_rank)
          if (!layer.empty()) {
            zeta_in_place(std::span<std::uint64_t>(layer), s);
            if (counters) counters->transform_ops += static_cast<std::uint64_t>(s) * cells;
          }

      const int max_sigma = 2 * classes.back();
      for (int r = 2; r <= s; ++r) {
        bool needed = false;
        for (const auto& tg : targets) needed |= tg.rank == r && tg.best > t;
        if (!needed) continue;
        std::vector<bool> found(targets.size(), false);
        for (int sigma = max_sigma; sigma >= 0; --sigma) {
          // Skip sums that cannot improve any unresolved target of this rank.
          bool useful = false;
          for (std::size_t i = 0; i < targets.size(); ++i) {
            const auto& tg = targets[i];
            if (tg.rank == r && !found[i] && std::max<int>(t, tg.base - sigma) < tg.best) useful = true;
          }
          if (!useful) break;
          product.assign(cells, 0);
          bool any = false;
          for (std::size_t a = 0; a < cc; ++a) {
            const int b_side = sigma - classes[a];
            if (b_side < classes[a]) break;
            const auto it = std::lower_bound(classes.begin(), classes.end(), b_side);
            if (it == classes.end() || *it != b_side) continue;
            const std::size_t b = static_cast<std::size_t>(it - classes.begin());
            for (int i = 1; i < r; ++i) {
              const auto& left = zeta[a][static_cast<std::size_t>(i)];
              const auto& right = zeta[b][static_cast<std::size_t>(r - i)];
              if (left.empty() || right.empty()) continue;
              any = true;
              for (std::size_t y = 0; y < cells; ++y) product[y] += left[y] * right[y];
              if (counters) counters->transform_ops += cells;
            }
          }
          if (!any) continue;
          mobius_in_place(std::span<std::uint64_t>(product), s);
          if (counters) counters->transform_ops += static_cast<std::uint64_t>(s) * cells;
          for (std::size_t i = 0; i < targets.size(); ++i) {
            auto& tg = targets[i];
            if (tg.rank != r || found[i] || product[tg.set] == 0) continue;
            found[i] = true;
            tg.best = std::min(tg.best, std::max<int>(t, tg.base - sigma));
          }
        }
      }
    }
    for (const auto& tg : targets) out[tg.id] = static_cast<std::uint16_t>(tg.best);
  }
  return out;
}

// O*(3^k) treewidth DP layered by the number of joins on any leaf-to-node path.
// Layer d reads join values built from layer d-1; iteration stops once the
// join-upper values repeat, which happens by layer |C|.
class TreewidthLayers {
 public:
  TreewidthLayers(const CoverSpace& cs, const TripleIndex& index)
      : cs_(cs), index_(index), tables_(index, cs.size()) {
    detail::check_budget(index.size(), 18u + 2u * static_cast<unsigned>(cs.size()));
    join_.assign(index.size(), kUnreachable);
    sweep();
  }

  // Computes the next layer. Returns false, leaving the tables unchanged in
  // value, when the previous layer was already stable.
  bool step() {
    if (stable_) return false;
    JoinLayerCounters counters;
    const std::vector<std::uint16_t> prev = tables_.plain;
    join_ = join_layer(cs_, index_, prev, layer_ == 0 ? &first_join_ : &counters);
    sweep();
    ++layer_;
    stable_ = tables_.plain == prev;
    return !stable_;
  }

  void run_to_fixpoint() {
    while (step())
      if (layer_ > cs_.size() + 1) throw InternalError("join layers failed to stabilise");
  }

  int layer() const { return layer_; }
  bool stable() const { return stable_; }
  const TwTables& tables() const { return tables_; }
  const std::vector<std::uint16_t>& join_lower() const { return join_; }
  const JoinLayerCounters& first_join_counters() const { return first_join_; }
  std::uint64_t states() const { return states_; }

 private:
  void sweep() {
    std::fill(tables_.lower.begin(), tables_.lower.end(), kUnreachable);
    std::fill(tables_.plain.begin(), tables_.plain.end(), kUnreachable);
    std::fill(tables_.forget.begin(), tables_.forget.end(), kUnreachable);
    states_ = 0;
    TwProfile p;
    for (std::uint32_t id : index_.order()) {
      const ValidTriple t = index_.triple(id);
      p.compute(cs_, t);
      int uppers = 0;
      for (CoverMask m = t.bag; m; m &= m - 1) uppers += (cs_.cover_neighbors(std::countr_zero(m)) & t.rest) == 0;
      if (t.lower == 0) {
        if (t.bag == 0) continue;
        tables_.lower[id] = static_cast<std::uint16_t>(p.bag_size - 1);
        tables_.choice[id] = LowerChoice::make(LowerChoice::Degenerate, 0);
        tables_.finish(cs_, id, t, p);
        states_ += static_cast<std::uint64_t>(uppers);
        continue;
      }
      int best = kUnreachable;
      std::uint32_t arg = 0;
      detail::best_simple_lower(cs_, index_, tables_, t, p, best, arg);
      if (join_[id] < best) {
        best = join_[id];
        arg = LowerChoice::make(LowerChoice::Join, 0);
      }
      std::uint64_t lowers = static_cast<std::uint64_t>(popcount(t.lower)) + (popcount(t.lower) >= 2 ? 1 : 0);
      for (CoverMask m = t.bag; m; m &= m - 1)
        lowers += (cs_.cover_neighbors(std::countr_zero(m)) & t.lower) == 0;
      uppers += popcount(t.rest) + (t.rest ? 1 : 0);
      states_ += lowers * static_cast<std::uint64_t>(uppers);
      tables_.lower[id] = static_cast<std::uint16_t>(best);
      tables_.choice[id] = arg;
      tables_.finish(cs_, id, t, p);
    }
  }

  const CoverSpace& cs_;
  const TripleIndex& index_;
  TwTables tables_;
  std::vector<std::uint16_t> join_;
  JoinLayerCounters first_join_;
  std::uint64_t states_ = 0;
  int layer_ = 0;
  bool stable_ = false;
};

inline WidthResult treewidth_vc_3k(const Graph& g, const SolveOptions& opt = {}) {
  WidthResult res;
  if (g.n() == 0) return res;
  const Augmented aug = detail::prepare(g, opt);
  const CoverSpace cs(aug);
  const TripleIndex index(cs);
  TreewidthLayers layers(cs, index);
  layers.run_to_fixpoint();

  const int univ = cs.univ_index();
  const std::uint16_t best = layers.tables().forget_value(index.find(cs.full() & ~bit(univ), bit(univ)), univ);
  if (best == kUnreachable) throw InternalError("final treewidth state is unreachable");
  res.width = best - 1;
  res.stats.cover_size = static_cast<std::size_t>(cs.size() - 1);
  res.stats.valid_triples = index.size();
  res.stats.states = layers.states();
  res.stats.peak_table_entries = layers.tables().entries() + 2 * index.size();
  res.stats.join_layers = static_cast<std::uint64_t>(layers.layer());
  res.stats.join_cells = layers.first_join_counters().cells;
  res.stats.join_transform_ops = layers.first_join_counters().transform_ops;
  if (opt.witness)
    res.witness = detail::finish_witness(g, reconstruct_tree(cs, index, layers.tables()), aug.univ, res.width);
  return res;
}

}  // namespace vcw
