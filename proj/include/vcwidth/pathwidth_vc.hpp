#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "decomposition.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "valid_states.hpp"
#include "vertex_cover.hpp"

namespace vcw {

inline constexpr std::uint16_t kUnreachable = 0xFFFF;

// Memory the per-triple DP tables may use.
inline constexpr std::uint64_t kTableBudgetBytes = std::uint64_t{3} << 30;

struct WidthResult {
  int width = -1;
  Decomposition witness;
  SolverStats stats;
};

struct SolveOptions {
  std::optional<VertexSet> cover;  // vertex cover of the input graph; computed when absent
  std::size_t max_cover = 20;      // refuse larger covers with a ResourceError
  bool witness = true;
};

namespace detail {

inline Augmented prepare(const Graph& g, const SolveOptions& opt) {
  VertexSet cover = opt.cover ? *opt.cover : VertexSet(g.n());
  if (opt.cover) {
    if (cover.universe() != g.n()) throw InputError("cover universe does not match graph");
    if (!is_vertex_cover(g, cover)) throw InputError("supplied set is not a vertex cover");
  } else {
    auto found = minimum_vertex_cover(g, opt.max_cover);
    if (!found) throw ResourceError("vertex cover number exceeds the limit of " + std::to_string(opt.max_cover));
    cover = found->vertices;
  }
  if (cover.size() > opt.max_cover)
    throw ResourceError("cover of size " + std::to_string(cover.size()) + " exceeds the limit of " +
                        std::to_string(opt.max_cover));
  return augment(g, cover);
}

inline void check_budget(std::uint64_t triples, std::uint64_t bytes_per_triple) {
  if (triples * bytes_per_triple > kTableBudgetBytes)
    throw ResourceError("DP tables would need " + std::to_string(triples * bytes_per_triple >> 20) +
                        " MiB, over the budget of " + std::to_string(kTableBudgetBytes >> 20) + " MiB");
}

// Drops the universal vertex and redundant bags, then checks the result
// against the original graph and the reported width.
inline Decomposition finish_witness(const Graph& g, Decomposition d, VertexId univ, int width) {
  strip_vertex(d, univ);
  d = simplify(d);
  auto rep = validate(g, d);
  if (!rep.ok()) throw InternalError("reconstructed decomposition is invalid: " + rep.errors.front());
  if (rep.width != width)
    throw InternalError("reconstructed decomposition has width " + std::to_string(rep.width) +
                        ", expected " + std::to_string(width));
  return d;
}

}  // namespace detail

// Minimum partial pathwidth per (triple, upper op). The upper op on vertex v
// is Introduce(v) when v is in R and Forget(v) when v is in X; likewise the
// lower op on u is Introduce(u) for u in X and Forget(u) for u in L.
class PathwidthTable {
 public:
  PathwidthTable(const CoverSpace& cs, const TripleIndex& index) : cs_(cs), index_(index), c_(cs.size()) {
    detail::check_budget(index.size(), 3u * static_cast<unsigned>(c_));
    value_.assign(index.size() * static_cast<std::size_t>(c_), kUnreachable);
    choice_.assign(index.size() * static_cast<std::size_t>(c_), 0xFF);
    run();
  }

  std::uint16_t value(std::uint32_t id, int v) const { return value_[slot(id, v)]; }
  int choice(std::uint32_t id, int v) const { return choice_[slot(id, v)]; }
  std::uint64_t states() const { return states_; }
  std::uint64_t entries() const { return value_.size(); }

  // Lower/upper op of a state given by vertex and triple.
  OpTag lower_op(const ValidTriple& t, int u) const {
    return has(t.bag, u) ? OpTag::introduce(u) : OpTag::forget(u);
  }
  OpTag upper_op(const ValidTriple& t, int v) const {
    return has(t.rest, v) ? OpTag::introduce(v) : OpTag::forget(v);
  }

  // Triple that precedes `id` through lower op u.
  std::uint32_t predecessor(std::uint32_t id, int u) const {
    const ValidTriple t = index_.triple(id);
    return has(t.bag, u) ? index_.find(t.lower, t.bag & ~bit(u)) : index_.find(t.lower & ~bit(u), t.bag | bit(u));
  }

  static bool is_base(const ValidTriple& t, int u) { return t.lower == 0 && t.bag == bit(u); }

 private:
  std::size_t slot(std::uint32_t id, int v) const {
    return static_cast<std::size_t>(id) * static_cast<std::size_t>(c_) + static_cast<std::size_t>(v);
  }

  void run() {
    const auto& nbs = cs_.independent_neighborhoods();
    std::array<int, kMaxCoverBits> lower_forced{}, upper_forced{};
    std::array<CoverMask, kMaxCoverBits> confined_with{};
    std::array<int, kMaxCoverBits> lows{};
    std::array<std::uint16_t, kMaxCoverBits> prior{};

    for (std::uint32_t id : index_.order()) {
      const ValidTriple t = index_.triple(id);
      const int bag_size = popcount(t.bag);
      int crossing = 0;
      bool any_confined = false;
      CoverMask confined_union = 0;
      lower_forced.fill(0);
      upper_forced.fill(0);
      confined_with.fill(0);
      for (CoverMask nb : nbs) {
        const bool sees_l = nb & t.lower, sees_r = nb & t.rest;
        crossing += sees_l && sees_r;
        if (sees_l && (nb & ~(t.lower | t.bag)) == 0)
          for (CoverMask m = nb & t.bag; m; m &= m - 1) ++lower_forced[std::countr_zero(m)];
        if (sees_r && (nb & ~(t.rest | t.bag)) == 0)
          for (CoverMask m = nb & t.bag; m; m &= m - 1) ++upper_forced[std::countr_zero(m)];
        if ((nb & ~t.bag) == 0) {
          any_confined = true;
          confined_union |= nb;
          for (CoverMask m = nb; m; m &= m - 1) confined_with[std::countr_zero(m)] |= nb;
        }
      }

      int low_count = 0;
      for (int u = 0; u < c_; ++u) {
        std::uint16_t in;
        if (has(t.bag, u)) {
          if (cs_.cover_neighbors(u) & t.lower) continue;
          if (is_base(t, u)) {
            in = 0;
          } else {
            in = value_[slot(index_.find(t.lower, t.bag & ~bit(u)), u)];
          }
        } else if (has(t.lower, u)) {
          in = value_[slot(index_.find(t.lower & ~bit(u), t.bag | bit(u)), u)];
        } else {
          continue;
        }
        if (in == kUnreachable) continue;
        lows[static_cast<std::size_t>(low_count)] = u;
        prior[static_cast<std::size_t>(low_count)] = in;
        ++low_count;
      }

      for (int v = 0; v < c_; ++v) {
        const bool up_intro = has(t.rest, v);
        if (!up_intro && !(has(t.bag, v) && (cs_.cover_neighbors(v) & t.rest) == 0)) continue;
        const int up_forced = up_intro ? 0 : upper_forced[static_cast<std::size_t>(v)];
        int best = kUnreachable, arg = 0xFF;
        for (int i = 0; i < low_count; ++i) {
          const int u = lows[static_cast<std::size_t>(i)];
          const bool low_intro = has(t.bag, u);
          bool extra;
          if (low_intro)
            extra = up_intro ? has(confined_union, u) : has(confined_with[static_cast<std::size_t>(u)], v);
          else
            extra = up_intro ? any_confined : has(confined_union, v);
          const int low_forced = low_intro ? lower_forced[static_cast<std::size_t>(u)] : 0;
          const int local = bag_size + crossing + std::max({low_forced, up_forced, extra ? 1 : 0}) - 1;
          const int value = std::max<int>(local, prior[static_cast<std::size_t>(i)]);
          if (value < best) {
            best = value;
            arg = u;
          }
        }
        states_ += static_cast<std::uint64_t>(low_count);
        value_[slot(id, v)] = static_cast<std::uint16_t>(best);
        choice_[slot(id, v)] = static_cast<std::uint8_t>(arg);
      }
    }
  }

  const CoverSpace& cs_;
  const TripleIndex& index_;
  int c_;
  std::vector<std::uint16_t> value_;
  std::vector<std::uint8_t> choice_;
  std::uint64_t states_ = 0;
};

// Follows back-references from the final state and expands each quintuple into
// a run of bags: lower-forced vertices in the first, upper-forced in the last,
// one interior bag per newly placed confined vertex.
inline Decomposition reconstruct_path(const CoverSpace& cs, const TripleIndex& index, const PathwidthTable& table) {
  const int univ = cs.univ_index();
  std::uint32_t id = index.find(cs.full() & ~bit(univ), bit(univ));
  int upper = univ;
  std::vector<Quintuple> chain;
  while (true) {
    const ValidTriple t = index.triple(id);
    const int u = table.choice(id, upper);
    if (u == 0xFF) throw InternalError("path reconstruction reached an unreachable state");
    chain.push_back({table.lower_op(t, u), t, table.upper_op(t, upper), false});
    if (PathwidthTable::is_base(t, u)) break;
    id = table.predecessor(id, u);
    upper = u;
  }
  std::reverse(chain.begin(), chain.end());

  const Graph& g = cs.graph();
  VertexSet placed(g.n());
  std::vector<Bag> bags;
  for (const Quintuple& q : chain) {
    const BoundarySets b = boundary_sets_pw(cs, q);
    Bag base = cs.to_vertices(q.triple.bag);
    base.insert(base.end(), b.crossing.begin(), b.crossing.end());
    Bag first = base, last = base;
    first.insert(first.end(), b.lower_forced.begin(), b.lower_forced.end());
    last.insert(last.end(), b.upper_forced.begin(), b.upper_forced.end());
    bags.push_back(first);
    for (VertexId x : b.confined) {
      if (placed.contains(x)) continue;
      placed.insert(x);
      Bag mid = base;
      mid.push_back(x);
      bags.push_back(mid);
    }
    bags.push_back(last);
  }
  return make_path_decomposition(std::move(bags));
}

inline WidthResult pathwidth_vc(const Graph& g, const SolveOptions& opt = {}) {
  WidthResult res;
  res.witness.kind = DecompositionKind::Path;
  if (g.n() == 0) return res;
  const Augmented aug = detail::prepare(g, opt);
  const CoverSpace cs(aug);
  const TripleIndex index(cs);
  const PathwidthTable table(cs, index);

  const int univ = cs.univ_index();
  const std::uint16_t best = table.value(index.find(cs.full() & ~bit(univ), bit(univ)), univ);
  if (best == kUnreachable) throw InternalError("final pathwidth state is unreachable");
  res.width = best - 1;
  res.stats.cover_size = static_cast<std::size_t>(cs.size() - 1);
  res.stats.valid_triples = index.size();
  res.stats.states = table.states();
  res.stats.peak_table_entries = table.entries();
  if (opt.witness)
    res.witness = detail::finish_witness(g, reconstruct_path(cs, index, table), aug.univ, res.width);
  return res;
}

}  // namespace vcw
