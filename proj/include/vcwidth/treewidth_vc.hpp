#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "decomposition.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "pathwidth_vc.hpp"
#include "valid_states.hpp"

namespace vcw {

// Encoded argmin lower op of a treewidth triple: kind in the top two bits,
// cover vertex or first join part below.
struct LowerChoice {
  enum Kind : std::uint32_t { Degenerate = 0, Introduce = 1, Forget = 2, Join = 3 };
  static std::uint32_t make(Kind k, std::uint32_t payload) { return (static_cast<std::uint32_t>(k) << 30) | payload; }
  static Kind kind(std::uint32_t c) { return static_cast<Kind>(c >> 30); }
  static std::uint32_t payload(std::uint32_t c) { return c & ((std::uint32_t{1} << 30) - 1); }
};

// Per-triple counts of S-vertices feeding the local treewidth.
struct TwProfile {
  int bag_size = 0;
  int crossing = 0;
  bool extra_slot = false;  // some S-vertex has N(x) = X exactly
  std::array<std::uint16_t, kMaxCoverBits> lower_forced{};  // for lower Introduce(u)
  std::array<std::uint16_t, kMaxCoverBits> upper_forced{};  // for upper Forget(v)

  void compute(const CoverSpace& cs, const ValidTriple& t) {
    bag_size = popcount(t.bag);
    crossing = 0;
    extra_slot = false;
    lower_forced.fill(0);
    upper_forced.fill(0);
    for (CoverMask nb : cs.independent_neighborhoods()) {
      const bool sees_l = nb & t.lower, sees_r = nb & t.rest;
      crossing += sees_l && sees_r;
      if (sees_l && (nb & ~(t.lower | t.bag)) == 0)
        for (CoverMask m = nb & t.bag; m; m &= m - 1) ++lower_forced[static_cast<std::size_t>(std::countr_zero(m))];
      if (sees_r && (nb & ~(t.rest | t.bag)) == 0)
        for (CoverMask m = nb & t.bag; m; m &= m - 1) ++upper_forced[static_cast<std::size_t>(std::countr_zero(m))];
      if (nb == t.bag) extra_slot = true;
    }
  }
};

// S-vertices seeing both join parts and nothing in R.
inline int join_lower_forced(const CoverSpace& cs, const ValidTriple& t, CoverMask first) {
  int count = 0;
  for (CoverMask nb : cs.independent_neighborhoods()) count += boundary::lower_forced_join(nb, t, first);
  return count;
}

// Values of a treewidth DP. lower[id] is the best over lower ops of the part
// of ptw that does not depend on the upper op; the state value for an upper
// op is max(lower, the upper op's own local bound).
class TwTables {
 public:
  TwTables(const TripleIndex& index, int c) : index_(index), c_(c) {
    lower.assign(index.size(), kUnreachable);
    choice.assign(index.size(), 0);
    plain.assign(index.size(), kUnreachable);
    forget.assign(index.size() * static_cast<std::size_t>(c), kUnreachable);
  }

  // Upper Introduce(v) or Join.
  std::uint16_t plain_value(std::uint32_t id) const { return plain[id]; }
  std::uint16_t forget_value(std::uint32_t id, int v) const {
    return forget[static_cast<std::size_t>(id) * static_cast<std::size_t>(c_) + static_cast<std::size_t>(v)];
  }

  // Fills the upper-op values of a triple once its lower value is final.
  void finish(const CoverSpace& cs, std::uint32_t id, const ValidTriple& t, const TwProfile& p) {
    const std::uint16_t low = lower[id];
    const int slot = p.extra_slot ? 1 : 0;
    if (low == kUnreachable) return;
    if (t.lower != 0 && t.rest != 0)
      plain[id] = static_cast<std::uint16_t>(std::max<int>(low, p.bag_size - 1 + std::max(p.crossing, slot)));
    for (CoverMask m = t.bag; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      if (cs.cover_neighbors(v) & t.rest) continue;
      const int local = p.bag_size - 1 + std::max(p.crossing + p.upper_forced[static_cast<std::size_t>(v)], slot);
      forget[static_cast<std::size_t>(id) * static_cast<std::size_t>(c_) + static_cast<std::size_t>(v)] =
          static_cast<std::uint16_t>(std::max<int>(low, local));
    }
  }

  std::uint64_t entries() const { return lower.size() * 3 + forget.size(); }

  std::vector<std::uint16_t> lower;
  std::vector<std::uint32_t> choice;
  std::vector<std::uint16_t> plain;
  std::vector<std::uint16_t> forget;

 private:
  const TripleIndex& index_;
  int c_;
};

namespace detail {

// Best non-join lower op of a triple with L non-empty, reading finished predecessor values.
inline void best_simple_lower(const CoverSpace& cs, const TripleIndex& index, const TwTables& tab,
                              const ValidTriple& t, const TwProfile& p, int& best, std::uint32_t& arg) {
  for (int u = 0; u < cs.size(); ++u) {
    int in, local;
    std::uint32_t code;
    if (has(t.bag, u)) {
      if (cs.cover_neighbors(u) & t.lower) continue;
      in = tab.plain_value(index.find(t.lower, t.bag & ~bit(u)));
      local = p.bag_size - 1 + p.crossing + p.lower_forced[static_cast<std::size_t>(u)];
      code = LowerChoice::make(LowerChoice::Introduce, static_cast<std::uint32_t>(u));
    } else if (has(t.lower, u)) {
      in = tab.forget_value(index.find(t.lower & ~bit(u), t.bag | bit(u)), u);
      local = p.bag_size - 1 + p.crossing;
      code = LowerChoice::make(LowerChoice::Forget, static_cast<std::uint32_t>(u));
    } else {
      continue;
    }
    if (in == kUnreachable) continue;
    const int value = std::max(in, local);
    if (value < best) {
      best = value;
      arg = code;
    }
  }
}

}  // namespace detail

// O*(4^k) treewidth DP: join lower ops are enumerated with explicit parts.
class TreewidthTable4k {
 public:
  TreewidthTable4k(const CoverSpace& cs, const TripleIndex& index)
      : cs_(cs), index_(index), tables_(index, cs.size()) {
    detail::check_budget(index.size(), 12u + 2u * static_cast<unsigned>(cs.size()));
    join_.assign(index.size(), kUnreachable);
    run();
  }

  const TwTables& tables() const { return tables_; }
  // Best over JoinWithParts lower ops only.
  std::uint16_t join_lower(std::uint32_t id) const { return join_[id]; }
  std::uint64_t states() const { return states_; }

 private:
  void run() {
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
      std::uint64_t lowers = static_cast<std::uint64_t>(popcount(t.lower));
      for (CoverMask m = t.bag; m; m &= m - 1)
        lowers += (cs_.cover_neighbors(std::countr_zero(m)) & t.lower) == 0;

      int join_best = kUnreachable;
      if (popcount(t.lower) >= 2) {
        const CoverMask low = t.lower & (~t.lower + 1), others = t.lower ^ low;
        for (CoverMask sub = others;; sub = (sub - 1) & others) {
          const CoverMask first = sub | low, second = t.lower ^ first;
          if (second && (cs_.cover_neighbors_of(first) & second) == 0) {
            ++lowers;
            const int in = std::max(tables_.plain_value(index_.find(first, t.bag)),
                                    tables_.plain_value(index_.find(second, t.bag)));
            if (in != kUnreachable) {
              const int local = p.bag_size - 1 + p.crossing + join_lower_forced(cs_, t, first);
              const int value = std::max(in, local);
              if (value < join_best) join_best = value;
              if (value < best) {
                best = value;
                arg = LowerChoice::make(LowerChoice::Join, first);
              }
            }
          }
          if (sub == 0) break;
        }
      }
      uppers += popcount(t.rest) + (t.rest ? 1 : 0);
      states_ += lowers * static_cast<std::uint64_t>(uppers);
      join_[id] = static_cast<std::uint16_t>(join_best);
      tables_.lower[id] = static_cast<std::uint16_t>(best);
      tables_.choice[id] = arg;
      tables_.finish(cs_, id, t, p);
    }
  }

  const CoverSpace& cs_;
  const TripleIndex& index_;
  TwTables tables_;
  std::vector<std::uint16_t> join_;
  std::uint64_t states_ = 0;
};

// Expands the tree of quintuples behind the final state into a tree
// decomposition of G'. Each quintuple becomes a path min-mid-max of bags X;
// crossing vertices join all three, lower-forced ones the min bag and
// upper-forced ones the max bag; each confined S-vertex not placed yet gets a
// leaf bag N[x] hanging off the mid bag. Joins chosen without stored parts are
// recovered by searching the splits of L.
inline Decomposition reconstruct_tree(const CoverSpace& cs, const TripleIndex& index, const TwTables& tab) {
  struct Node {
    std::uint32_t id;
    OpTag upper;
    std::size_t parent;
  };
  const int univ = cs.univ_index();
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<Node> nodes{{index.find(cs.full() & ~bit(univ), bit(univ)), OpTag::forget(univ), none}};
  std::vector<Quintuple> quints;

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::uint32_t id = nodes[i].id;
    const ValidTriple t = index.triple(id);
    const std::uint32_t code = tab.choice[id];
    Quintuple q{OpTag::forget(0), t, nodes[i].upper, false};
    switch (LowerChoice::kind(code)) {
      case LowerChoice::Degenerate:
        q.degenerate = true;
        break;
      case LowerChoice::Introduce: {
        const int u = static_cast<int>(LowerChoice::payload(code));
        q.lower = OpTag::introduce(u);
        nodes.push_back({index.find(t.lower, t.bag & ~bit(u)), OpTag::introduce(u), i});
        break;
      }
      case LowerChoice::Forget: {
        const int u = static_cast<int>(LowerChoice::payload(code));
        q.lower = OpTag::forget(u);
        nodes.push_back({index.find(t.lower & ~bit(u), t.bag | bit(u)), OpTag::forget(u), i});
        break;
      }
      case LowerChoice::Join: {
        CoverMask first = LowerChoice::payload(code);
        if (first == 0) {
          TwProfile p;
          p.compute(cs, t);
          const CoverMask low = t.lower & (~t.lower + 1), others = t.lower ^ low;
          for (CoverMask sub = others;; sub = (sub - 1) & others) {
            const CoverMask cand = sub | low, second = t.lower ^ cand;
            if (second && (cs.cover_neighbors_of(cand) & second) == 0) {
              const int in = std::max(tab.plain_value(index.find(cand, t.bag)), tab.plain_value(index.find(second, t.bag)));
              const int local = p.bag_size - 1 + p.crossing + join_lower_forced(cs, t, cand);
              if (std::max(in, local) == tab.lower[id]) {
                first = cand;
                break;
              }
            }
            if (sub == 0) break;
          }
          if (first == 0) throw InternalError("no join split reproduces the stored value");
        }
        q.lower = OpTag::join_with_parts(first);
        nodes.push_back({index.find(first, t.bag), OpTag::join(), i});
        nodes.push_back({index.find(t.lower ^ first, t.bag), OpTag::join(), i});
        break;
      }
    }
    quints.push_back(q);
  }

  Decomposition d;
  const Graph& g = cs.graph();
  VertexSet placed(g.n());
  std::vector<std::size_t> low_bag(nodes.size()), high_bag(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const BoundarySets b = boundary_sets_tw(cs, quints[i]);
    Bag base = cs.to_vertices(quints[i].triple.bag);
    base.insert(base.end(), b.crossing.begin(), b.crossing.end());
    Bag low = base, high = base;
    low.insert(low.end(), b.lower_forced.begin(), b.lower_forced.end());
    high.insert(high.end(), b.upper_forced.begin(), b.upper_forced.end());
    const std::size_t at = d.bags.size();
    d.bags.push_back(std::move(low));
    d.bags.push_back(base);
    d.bags.push_back(std::move(high));
    d.tree_edges.emplace_back(at, at + 1);
    d.tree_edges.emplace_back(at + 1, at + 2);
    low_bag[i] = at;
    high_bag[i] = at + 2;
    if (nodes[i].parent != none) d.tree_edges.emplace_back(at + 2, low_bag[nodes[i].parent]);
    for (VertexId x : b.confined) {
      if (placed.contains(x)) continue;
      placed.insert(x);
      Bag leaf(g.neighbors(x).begin(), g.neighbors(x).end());
      leaf.push_back(x);
      d.tree_edges.emplace_back(at + 1, d.bags.size());
      d.bags.push_back(std::move(leaf));
    }
  }
  for (auto& bag : d.bags) std::sort(bag.begin(), bag.end());
  d.root = high_bag[0];
  return d;
}

inline WidthResult treewidth_vc_4k(const Graph& g, const SolveOptions& opt = {}) {
  WidthResult res;
  if (g.n() == 0) return res;
  const Augmented aug = detail::prepare(g, opt);
  const CoverSpace cs(aug);
  const TripleIndex index(cs);
  const TreewidthTable4k table(cs, index);

  const int univ = cs.univ_index();
  const std::uint16_t best = table.tables().forget_value(index.find(cs.full() & ~bit(univ), bit(univ)), univ);
  if (best == kUnreachable) throw InternalError("final treewidth state is unreachable");
  res.width = best - 1;
  res.stats.cover_size = static_cast<std::size_t>(cs.size() - 1);
  res.stats.valid_triples = index.size();
  res.stats.states = table.states();
  res.stats.peak_table_entries = table.tables().entries();
  if (opt.witness)
    res.witness = detail::finish_witness(g, reconstruct_tree(cs, index, table.tables()), aug.univ, res.width);
  return res;
}

}  // namespace vcw
