#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace vcw {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

// Fixed-universe bitset over [0, universe).
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  VertexSet(std::size_t universe, std::initializer_list<VertexId> members) : VertexSet(universe) {
    for (VertexId v : members) insert(v);
  }

  template <class Range>
  static VertexSet from_range(std::size_t universe, const Range& members) {
    VertexSet s(universe);
    for (auto v : members) s.insert(static_cast<VertexId>(v));
    return s;
  }

  static VertexSet full(std::size_t universe) {
    VertexSet s(universe);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  std::size_t universe() const { return universe_; }

  bool contains(VertexId v) const {
    return v < universe_ && (words_[v >> 6] >> (v & 63) & 1) != 0;
  }

  void insert(VertexId v) {
    check(v);
    words_[v >> 6] |= std::uint64_t{1} << (v & 63);
  }

  void erase(VertexId v) {
    check(v);
    words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  }

  std::size_t size() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool empty() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  VertexSet& operator|=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  // set difference
  VertexSet& operator-=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  VertexSet complement() const {
    VertexSet s(universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] = ~words_[i];
    s.trim();
    return s;
  }

  bool is_subset_of(const VertexSet& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  bool intersects(const VertexSet& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        f(static_cast<VertexId>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
        w &= w - 1;
      }
    }
  }

  std::vector<VertexId> to_vector() const {
    std::vector<VertexId> out;
    out.reserve(size());
    for_each([&](VertexId v) { out.push_back(v); });
    return out;
  }

  bool operator==(const VertexSet&) const = default;

 private:
  void check(VertexId v) const {
    if (v >= universe_)
      throw InputError("vertex " + std::to_string(v) + " outside universe of size " +
                       std::to_string(universe_));
  }
  void same_universe(const VertexSet& o) const {
    if (o.universe_ != universe_) throw InputError("vertex sets over different universes");
  }
  void trim() {
    if (universe_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

// Simple undirected graph on vertices 0..n-1. Immutable once built.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  // Throws InputError on self-loops, duplicate edges and out-of-range endpoints.
  Graph(std::size_t n, std::span<const Edge> edges) : adj_(n) {
    edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
      if (u >= n || v >= n)
        throw InputError("edge {" + std::to_string(u) + "," + std::to_string(v) +
                         "} has an endpoint outside [0," + std::to_string(n) + ")");
      if (u == v) throw InputError("self-loop on vertex " + std::to_string(u));
      edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end())
      throw InputError("duplicate edge {" + std::to_string(dup->first) + "," +
                       std::to_string(dup->second) + "}");
    for (auto [u, v] : edges_) {
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
  }

  Graph(std::size_t n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  std::size_t n() const { return adj_.size(); }
  std::size_t m() const { return edges_.size(); }

  // Sorted neighbor list.
  std::span<const VertexId> neighbors(VertexId v) const {
    check(v);
    return adj_[v];
  }

  std::size_t degree(VertexId v) const { return neighbors(v).size(); }

  bool adjacent(VertexId u, VertexId v) const {
    check(v);
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  // Edges as (u, v) with u < v, sorted.
  const std::vector<Edge>& edges() const { return edges_; }

  bool operator==(const Graph& o) const { return n() == o.n() && edges_ == o.edges_; }

 private:
  void check(VertexId v) const {
    if (v >= adj_.size())
      throw InputError("vertex " + std::to_string(v) + " out of range for graph with " +
                       std::to_string(adj_.size()) + " vertices");
  }

  std::vector<std::vector<VertexId>> adj_;
  std::vector<Edge> edges_;
};

inline VertexSet neighborhood(const Graph& g, VertexId v) {
  return VertexSet::from_range(g.n(), g.neighbors(v));
}

// N(W): neighbors of W outside W.
inline VertexSet set_neighborhood(const Graph& g, const VertexSet& w) {
  if (w.universe() != g.n()) throw InputError("vertex set universe does not match graph");
  VertexSet out(g.n());
  w.for_each([&](VertexId v) {
    for (VertexId u : g.neighbors(v)) out.insert(u);
  });
  return out - w;
}

inline VertexSet closed_neighborhood(const Graph& g, const VertexSet& w) {
  return set_neighborhood(g, w) | w;
}

inline Graph complement(const Graph& g) {
  std::vector<Edge> edges;
  const auto n = static_cast<VertexId>(g.n());
  for (VertexId u = 0; u < n; ++u) {
    auto nb = g.neighbors(u);
    auto it = std::upper_bound(nb.begin(), nb.end(), u);
    for (VertexId v = u + 1; v < n; ++v) {
      if (it != nb.end() && *it == v) {
        ++it;
        continue;
      }
      edges.emplace_back(u, v);
    }
  }
  return Graph(g.n(), edges);
}

// Returns the new graph and the id of the added vertex (always n).
inline std::pair<Graph, VertexId> add_universal_vertex(const Graph& g) {
  std::vector<Edge> edges = g.edges();
  const auto univ = static_cast<VertexId>(g.n());
  for (VertexId v = 0; v < univ; ++v) edges.emplace_back(v, univ);
  return {Graph(g.n() + 1, edges), univ};
}

struct InducedSubgraph {
  Graph graph;
  std::vector<VertexId> to_parent;    // new id -> old id
  std::vector<VertexId> from_parent;  // old id -> new id, or npos
  static constexpr VertexId npos = static_cast<VertexId>(-1);
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& w) {
  if (w.universe() != g.n()) throw InputError("vertex set universe does not match graph");
  InducedSubgraph out;
  out.to_parent = w.to_vector();
  out.from_parent.assign(g.n(), InducedSubgraph::npos);
  for (std::size_t i = 0; i < out.to_parent.size(); ++i)
    out.from_parent[out.to_parent[i]] = static_cast<VertexId>(i);
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges())
    if (w.contains(u) && w.contains(v)) edges.emplace_back(out.from_parent[u], out.from_parent[v]);
  out.graph = Graph(out.to_parent.size(), edges);
  return out;
}

}  // namespace vcw
