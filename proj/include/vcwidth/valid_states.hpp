#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "vertex_cover.hpp"

namespace vcw {

// Bit i stands for cover vertex i under a CoverSpace's index mapping.
using CoverMask = std::uint32_t;

// Hard limit on |C| for the triple-based solvers (one X-indexed table of 2^|C| slots).
inline constexpr std::size_t kMaxCoverBits = 24;

inline int popcount(CoverMask m) { return std::popcount(m); }
inline bool has(CoverMask m, int i) { return (m >> i) & 1u; }
inline CoverMask bit(int i) { return CoverMask{1} << i; }

// G' = G plus a universal vertex, with C = cover of G plus that vertex.
struct Augmented {
  Graph graph;
  VertexId univ = 0;
  VertexSet cover;
};

inline Augmented augment(const Graph& g, const VertexSet& cover_of_g) {
  if (!is_vertex_cover(g, cover_of_g)) throw InputError("supplied set is not a vertex cover");
  auto [gp, univ] = add_universal_vertex(g);
  VertexSet c(gp.n());
  cover_of_g.for_each([&](VertexId v) { c.insert(v); });
  c.insert(univ);
  return {std::move(gp), univ, std::move(c)};
}

// The cover C of G' as bit positions, plus the C-neighborhoods of the independent set S.
class CoverSpace {
 public:
  CoverSpace(const Graph& g, const VertexSet& cover, VertexId univ) : graph_(&g) {
    if (cover.universe() != g.n()) throw InputError("cover universe does not match graph");
    if (!cover.contains(univ)) throw InputError("cover must contain the universal vertex");
    if (!is_vertex_cover(g, cover)) throw InputError("set is not a vertex cover of the graph");
    // Universal vertex takes the highest bit; the rest keep ascending vertex order.
    cover.for_each([&](VertexId v) {
      if (v != univ) vertices_.push_back(v);
    });
    vertices_.push_back(univ);
    if (vertices_.size() > kMaxCoverBits)
      throw ResourceError("cover of size " + std::to_string(vertices_.size()) + " exceeds the limit of " +
                          std::to_string(kMaxCoverBits));
    std::vector<int> index(g.n(), -1);
    for (std::size_t i = 0; i < vertices_.size(); ++i) index[vertices_[i]] = static_cast<int>(i);
    cover_adj_.assign(vertices_.size(), 0);
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      for (VertexId u : g.neighbors(vertices_[i]))
        if (index[u] >= 0) cover_adj_[i] |= bit(index[u]);
    for (VertexId x = 0; x < g.n(); ++x) {
      if (index[x] >= 0) continue;
      CoverMask nb = 0;
      for (VertexId u : g.neighbors(x)) nb |= bit(index[u]);
      independent_.push_back(x);
      independent_nb_.push_back(nb);
    }
  }

  explicit CoverSpace(const Augmented& a) : CoverSpace(a.graph, a.cover, a.univ) {}

  const Graph& graph() const { return *graph_; }
  int size() const { return static_cast<int>(vertices_.size()); }
  CoverMask full() const { return static_cast<CoverMask>((std::uint64_t{1} << vertices_.size()) - 1); }
  int univ_index() const { return size() - 1; }
  VertexId vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  const std::vector<VertexId>& cover_vertices() const { return vertices_; }

  // Neighbors of cover vertex i inside C.
  CoverMask cover_neighbors(int i) const { return cover_adj_[static_cast<std::size_t>(i)]; }
  CoverMask cover_neighbors_of(CoverMask m) const {
    CoverMask out = 0;
    for (; m; m &= m - 1) out |= cover_adj_[static_cast<std::size_t>(std::countr_zero(m))];
    return out;
  }

  // S = V \ C and the cover neighborhood of each member.
  const std::vector<VertexId>& independent_vertices() const { return independent_; }
  const std::vector<CoverMask>& independent_neighborhoods() const { return independent_nb_; }

  std::vector<VertexId> to_vertices(CoverMask m) const {
    std::vector<VertexId> out;
    for (; m; m &= m - 1) out.push_back(vertices_[static_cast<std::size_t>(std::countr_zero(m))]);
    return out;
  }

 private:
  const Graph* graph_;
  std::vector<VertexId> vertices_;
  std::vector<CoverMask> cover_adj_;
  std::vector<VertexId> independent_;
  std::vector<CoverMask> independent_nb_;
};

// (L, X, R): cover vertices below the node, in its bag, and not yet seen.
struct ValidTriple {
  CoverMask lower = 0, bag = 0, rest = 0;
  bool operator==(const ValidTriple&) const = default;
};

inline bool is_valid_triple(const CoverSpace& cs, const ValidTriple& t) {
  if ((t.lower & t.bag) || (t.lower & t.rest) || (t.bag & t.rest) ||
      (t.lower | t.bag | t.rest) != cs.full())
    throw InputError("triple is not a partition of the cover");
  return (cs.cover_neighbors_of(t.lower) & t.rest) == 0;
}

struct OpTag {
  enum class Kind : std::uint8_t { Introduce, Forget, Join, JoinWithParts };
  Kind kind = Kind::Introduce;
  int vertex = -1;      // cover index for Introduce and Forget
  CoverMask parts = 0;  // first part for JoinWithParts

  static OpTag introduce(int v) { return {Kind::Introduce, v, 0}; }
  static OpTag forget(int v) { return {Kind::Forget, v, 0}; }
  static OpTag join() { return {Kind::Join, -1, 0}; }
  static OpTag join_with_parts(CoverMask first) { return {Kind::JoinWithParts, -1, first}; }
  bool operator==(const OpTag&) const = default;
};

struct Quintuple {
  OpTag lower;
  ValidTriple triple;
  OpTag upper;
  bool degenerate = false;  // treewidth leaf state with an empty lower part
};

// Lower ops per treewidth rules. Joins come in canonical form: the first part
// holds the lowest vertex of L.
inline std::vector<OpTag> tw_lower_ops(const CoverSpace& cs, const ValidTriple& t) {
  std::vector<OpTag> ops;
  for (int u = 0; u < cs.size(); ++u) {
    if (has(t.bag, u) && (cs.cover_neighbors(u) & t.lower) == 0) ops.push_back(OpTag::introduce(u));
    if (has(t.lower, u)) ops.push_back(OpTag::forget(u));
  }
  if (popcount(t.lower) >= 2) {
    const CoverMask low = t.lower & (~t.lower + 1), others = t.lower ^ low;
    for (CoverMask sub = others;; sub = (sub - 1) & others) {
      CoverMask first = sub | low, second = t.lower ^ first;
      if (second && (cs.cover_neighbors_of(first) & second) == 0) ops.push_back(OpTag::join_with_parts(first));
      if (sub == 0) break;
    }
  }
  return ops;
}

// Upper ops per treewidth rules. Join is offered iff R is non-empty: taking
// the whole of R as the sibling's lower part always yields two valid triples.
inline std::vector<OpTag> tw_upper_ops(const CoverSpace& cs, const ValidTriple& t) {
  std::vector<OpTag> ops;
  for (int v = 0; v < cs.size(); ++v) {
    if (has(t.rest, v)) ops.push_back(OpTag::introduce(v));
    if (has(t.bag, v) && (cs.cover_neighbors(v) & t.rest) == 0) ops.push_back(OpTag::forget(v));
  }
  if (t.rest) ops.push_back(OpTag::join());
  return ops;
}

struct PathOps {
  std::vector<OpTag> lower, upper;
};

inline PathOps pw_ops(const CoverSpace& cs, const ValidTriple& t) {
  PathOps ops;
  for (int u = 0; u < cs.size(); ++u) {
    if (has(t.bag, u) && (cs.cover_neighbors(u) & t.lower) == 0) ops.lower.push_back(OpTag::introduce(u));
    if (has(t.lower, u)) ops.lower.push_back(OpTag::forget(u));
    if (has(t.rest, u)) ops.upper.push_back(OpTag::introduce(u));
    if (has(t.bag, u) && (cs.cover_neighbors(u) & t.rest) == 0) ops.upper.push_back(OpTag::forget(u));
  }
  return ops;
}

// Membership tests for the S-vertex classes, given N(x) as a cover mask.
namespace boundary {

inline bool crossing(CoverMask nb, const ValidTriple& t) { return (nb & t.lower) && (nb & t.rest); }

inline bool lower_forced_introduce(CoverMask nb, const ValidTriple& t, int u) {
  return (nb & ~(t.lower | t.bag)) == 0 && has(nb, u) && (nb & t.lower);
}

inline bool lower_forced_join(CoverMask nb, const ValidTriple& t, CoverMask first) {
  const CoverMask second = t.lower & ~first;
  return (nb & first) && (nb & second) && (nb & t.rest) == 0;
}

inline bool upper_forced_forget(CoverMask nb, const ValidTriple& t, int v) {
  return (nb & ~(t.rest | t.bag)) == 0 && has(nb, v) && (nb & t.rest);
}

inline bool confined(CoverMask nb, const ValidTriple& t) { return (nb & ~t.bag) == 0; }

// Path rule: a confined vertex must lose a neighbor across each adjacent bag change.
inline bool confined_path(CoverMask nb, const Quintuple& q) {
  if (!confined(nb, q.triple)) return false;
  if (q.lower.kind == OpTag::Kind::Introduce && !has(nb, q.lower.vertex)) return false;
  if (q.upper.kind == OpTag::Kind::Forget && !has(nb, q.upper.vertex)) return false;
  return true;
}

}  // namespace boundary

struct BoundarySets {
  std::vector<VertexId> crossing;      // sees both L and R
  std::vector<VertexId> lower_forced;  // must sit in the lowest bag of the node's subpath
  std::vector<VertexId> upper_forced;  // must sit in the highest bag
  std::vector<VertexId> confined;      // all neighbors inside X
  int extra_slot = 0;                  // 1 when a confined vertex needs its own bag slot
};

inline BoundarySets boundary_sets_tw(const CoverSpace& cs, const Quintuple& q) {
  BoundarySets b;
  const auto& s = cs.independent_vertices();
  const auto& nbs = cs.independent_neighborhoods();
  const ValidTriple& t = q.triple;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const CoverMask nb = nbs[i];
    if (boundary::crossing(nb, t)) b.crossing.push_back(s[i]);
    bool low = false;
    if (!q.degenerate) {
      if (q.lower.kind == OpTag::Kind::Introduce) low = boundary::lower_forced_introduce(nb, t, q.lower.vertex);
      if (q.lower.kind == OpTag::Kind::JoinWithParts) low = boundary::lower_forced_join(nb, t, q.lower.parts);
    }
    if (low) b.lower_forced.push_back(s[i]);
    if (q.upper.kind == OpTag::Kind::Forget && boundary::upper_forced_forget(nb, t, q.upper.vertex))
      b.upper_forced.push_back(s[i]);
    if (boundary::confined(nb, t)) {
      b.confined.push_back(s[i]);
      if (nb == t.bag) b.extra_slot = 1;
    }
  }
  return b;
}

inline BoundarySets boundary_sets_pw(const CoverSpace& cs, const Quintuple& q) {
  BoundarySets b;
  const auto& s = cs.independent_vertices();
  const auto& nbs = cs.independent_neighborhoods();
  const ValidTriple& t = q.triple;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const CoverMask nb = nbs[i];
    if (boundary::crossing(nb, t)) b.crossing.push_back(s[i]);
    if (q.lower.kind == OpTag::Kind::Introduce && boundary::lower_forced_introduce(nb, t, q.lower.vertex))
      b.lower_forced.push_back(s[i]);
    if (q.upper.kind == OpTag::Kind::Forget && boundary::upper_forced_forget(nb, t, q.upper.vertex))
      b.upper_forced.push_back(s[i]);
    if (boundary::confined_path(nb, q)) b.confined.push_back(s[i]);
  }
  b.extra_slot = b.confined.empty() ? 0 : 1;
  return b;
}

inline int local_treewidth(const ValidTriple& t, const BoundarySets& b) {
  const int cross = static_cast<int>(b.crossing.size());
  return popcount(t.bag) +
         std::max({cross + static_cast<int>(b.lower_forced.size()),
                   cross + static_cast<int>(b.upper_forced.size()), b.extra_slot}) -
         1;
}

inline int local_pathwidth(const ValidTriple& t, const BoundarySets& b) {
  return popcount(t.bag) + static_cast<int>(b.crossing.size()) +
         std::max({static_cast<int>(b.lower_forced.size()), static_cast<int>(b.upper_forced.size()),
                   b.extra_slot}) -
         1;
}

// Dense numbering of all valid triples. For a fixed X the valid L are exactly
// the unions of connected components of G[C \ X], so triple (L, X) gets id
// offset[X] + (bitmask of the components inside L).
class TripleIndex {
 public:
  static constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();

  explicit TripleIndex(const CoverSpace& cs, std::uint64_t max_triples = std::uint64_t{1} << 31)
      : full_(cs.full()) {
    const std::size_t slots = std::size_t{1} << cs.size();
    offset_.resize(slots + 1);
    comp_start_.resize(slots + 1);
    std::uint64_t total = 0;
    for (std::size_t x = 0; x < slots; ++x) {
      offset_[x] = total;
      comp_start_[x] = static_cast<std::uint32_t>(components_.size());
      CoverMask left = full_ & ~static_cast<CoverMask>(x);
      while (left) {
        CoverMask comp = left & (~left + 1), grow = comp;
        while (grow) {
          grow = cs.cover_neighbors_of(grow) & left & ~comp;
          comp |= grow;
        }
        components_.push_back(comp);
        left &= ~comp;
      }
      total += std::uint64_t{1} << (components_.size() - comp_start_[x]);
      if (total > max_triples)
        throw ResourceError("valid triple count exceeds the limit of " + std::to_string(max_triples));
    }
    offset_[slots] = total;
    comp_start_[slots] = static_cast<std::uint32_t>(components_.size());

    lower_.resize(total);
    bag_.resize(total);
    std::vector<std::uint64_t> bucket_size(static_cast<std::size_t>((cs.size() + 1) * (cs.size() + 1)), 0);
    auto bucket = [&](CoverMask l, CoverMask x) {
      return static_cast<std::size_t>(popcount(l) * (cs.size() + 1) + popcount(x));
    };
    for (std::size_t x = 0; x < slots; ++x) {
      const std::uint32_t c0 = comp_start_[x], cn = comp_start_[x + 1] - c0;
      for (std::uint64_t sel = 0; sel < (std::uint64_t{1} << cn); ++sel) {
        CoverMask l = 0;
        for (std::uint32_t j = 0; j < cn; ++j)
          if (sel >> j & 1) l |= components_[c0 + j];
        const std::uint64_t id = offset_[x] + sel;
        lower_[id] = l;
        bag_[id] = static_cast<CoverMask>(x);
        ++bucket_size[bucket(l, static_cast<CoverMask>(x))];
      }
    }
    std::vector<std::uint64_t> start(bucket_size.size() + 1, 0);
    for (std::size_t b = 0; b < bucket_size.size(); ++b) start[b + 1] = start[b] + bucket_size[b];
    order_.resize(total);
    for (std::uint64_t id = 0; id < total; ++id)
      order_[start[bucket(lower_[id], bag_[id])]++] = static_cast<std::uint32_t>(id);
  }

  std::size_t size() const { return lower_.size(); }

  ValidTriple triple(std::uint32_t id) const {
    return {lower_[id], bag_[id], full_ & ~(lower_[id] | bag_[id])};
  }
  CoverMask lower(std::uint32_t id) const { return lower_[id]; }
  CoverMask bag(std::uint32_t id) const { return bag_[id]; }

  // Id of (L, X, C \ (L u X)), or npos when that triple is not valid.
  std::uint32_t find(CoverMask l, CoverMask x) const {
    if ((l & x) || ((l | x) & ~full_)) return npos;
    const std::uint32_t c0 = comp_start_[x], cn = comp_start_[x + 1] - c0;
    std::uint64_t sel = 0;
    for (std::uint32_t j = 0; j < cn; ++j) {
      const CoverMask comp = components_[c0 + j], in = comp & l;
      if (in == comp)
        sel |= std::uint64_t{1} << j;
      else if (in)
        return npos;
    }
    return static_cast<std::uint32_t>(offset_[x] + sel);
  }

  // Components of G[C \ X], in the order used for ids.
  const CoverMask* components_begin(CoverMask x) const { return components_.data() + comp_start_[x]; }
  std::uint32_t component_count(CoverMask x) const { return comp_start_[x + 1] - comp_start_[x]; }
  std::uint64_t first_id(CoverMask x) const { return offset_[x]; }

  // Ids sorted by |L|, then |X|: every triple comes after the triples it depends on.
  const std::vector<std::uint32_t>& order() const { return order_; }

 private:
  CoverMask full_;
  std::vector<std::uint64_t> offset_;
  std::vector<std::uint32_t> comp_start_;
  std::vector<CoverMask> components_;
  std::vector<CoverMask> lower_, bag_;
  std::vector<std::uint32_t> order_;
};

inline std::vector<ValidTriple> enumerate_valid_triples(const CoverSpace& cs) {
  TripleIndex index(cs);
  std::vector<ValidTriple> out;
  out.reserve(index.size());
  for (std::uint32_t id : index.order()) out.push_back(index.triple(id));
  return out;
}

// Counters shared by the triple-based solvers.
struct SolverStats {
  std::size_t cover_size = 0;  // k, the cover size of the input graph
  std::uint64_t valid_triples = 0;
  std::uint64_t states = 0;
  std::uint64_t peak_table_entries = 0;
  std::uint64_t join_layers = 0;
  std::uint64_t join_cells = 0;      // universe cells touched by join layer 1
  std::uint64_t join_transform_ops = 0;  // zeta, product and Mobius steps in join layer 1
};

}  // namespace vcw
