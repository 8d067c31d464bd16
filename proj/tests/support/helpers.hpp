#pragma once

// Generators and slow reference implementations shared by the unit tests and
// the acceptance runner. Nothing here calls into the solvers.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "vcwidth/decomposition.hpp"
#include "vcwidth/graph.hpp"

namespace vcw::test {

inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph(n, edges);
}

// Vertices 0..k-1 form a cover: edges among them with probability q, edges to
// the other n-k vertices with probability p. Vertex i is always matched to
// k+i, so the minimum cover has size exactly k when n >= 2k.
inline Graph planted_cover_graph(std::size_t n, std::size_t k, double p, double q, std::mt19937_64& rng) {
  std::bernoulli_distribution cp(p), cq(q);
  std::vector<Edge> edges;
  for (VertexId i = 0; i < k; ++i)
    for (VertexId j = i + 1; j < k; ++j)
      if (cq(rng)) edges.emplace_back(i, j);
  for (VertexId i = 0; i < k; ++i)
    for (VertexId x = static_cast<VertexId>(k); x < n; ++x)
      if (x - k == i || cp(rng)) edges.emplace_back(i, x);
  return Graph(n, edges);
}

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (VertexId i = 1; i < n; ++i) e.emplace_back(i - 1, i);
  return Graph(n, e);
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (VertexId i = 0; i < n; ++i) e.emplace_back(i, static_cast<VertexId>((i + 1) % n));
  return Graph(n, e);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, e);
}

inline Graph grid_graph(std::size_t rows, std::size_t cols) {
  std::vector<Edge> e;
  auto id = [&](std::size_t r, std::size_t c) { return static_cast<VertexId>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (r + 1 < rows) e.emplace_back(id(r, c), id(r + 1, c));
      if (c + 1 < cols) e.emplace_back(id(r, c), id(r, c + 1));
    }
  return Graph(rows * cols, e);
}

// Complete binary tree with the given height (height 0 is one vertex).
inline Graph binary_tree(int height) {
  const std::size_t n = (std::size_t{1} << (height + 1)) - 1;
  std::vector<Edge> e;
  for (VertexId v = 1; v < n; ++v) e.emplace_back((v - 1) / 2, v);
  return Graph(n, e);
}

inline Graph random_tree(std::size_t n, std::mt19937_64& rng) {
  std::vector<Edge> e;
  for (VertexId v = 1; v < n; ++v) e.emplace_back(std::uniform_int_distribution<VertexId>(0, v - 1)(rng), v);
  return Graph(n, e);
}

// Brute force minimum vertex cover size over all 2^n subsets.
inline std::size_t brute_force_cover_size(const Graph& g) {
  std::size_t best = g.n();
  for (std::uint32_t s = 0; s < (1u << g.n()); ++s) {
    bool ok = true;
    for (auto [u, v] : g.edges())
      if (!(s >> u & 1) && !(s >> v & 1)) {
        ok = false;
        break;
      }
    if (ok) best = std::min<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(s)));
  }
  return best;
}

// Plain reading of the three decomposition axioms. Returns width, or -2 when
// some axiom fails. Assumes the bag graph is a tree.
inline int naive_decomposition_width(const Graph& g, const std::vector<Bag>& bags,
                                     const std::vector<TreeEdge>& edges) {
  std::vector<std::vector<std::size_t>> adj(bags.size());
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  auto in = [&](std::size_t i, VertexId v) { return std::find(bags[i].begin(), bags[i].end(), v) != bags[i].end(); };
  for (VertexId v = 0; v < g.n(); ++v) {
    std::vector<std::size_t> holding;
    for (std::size_t i = 0; i < bags.size(); ++i)
      if (in(i, v)) holding.push_back(i);
    if (holding.empty()) return -2;
    std::vector<bool> seen(bags.size(), false);
    std::vector<std::size_t> stack{holding[0]};
    seen[holding[0]] = true;
    std::size_t reached = 0;
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      ++reached;
      for (std::size_t y : adj[x])
        if (!seen[y] && in(y, v)) {
          seen[y] = true;
          stack.push_back(y);
        }
    }
    if (reached != holding.size()) return -2;
  }
  for (auto [u, v] : g.edges()) {
    bool found = false;
    for (std::size_t i = 0; i < bags.size() && !found; ++i) found = in(i, u) && in(i, v);
    if (!found) return -2;
  }
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

// Width of eliminating vertices in the given order: the largest number of
// later neighbours in the fill-in graph.
inline int elimination_width(const Graph& g, const std::vector<VertexId>& order) {
  const std::size_t n = g.n();
  std::vector<std::set<VertexId>> adj(n);
  for (auto [u, v] : g.edges()) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  int w = -1;
  for (VertexId v : order) {
    w = std::max(w, static_cast<int>(adj[v].size()));
    for (VertexId a : adj[v])
      for (VertexId b : adj[v])
        if (a != b) adj[a].insert(b);
    for (VertexId a : adj[v]) adj[a].erase(v);
    adj[v].clear();
  }
  return w;
}

// Vertex separation of a layout: the most placed vertices with an unplaced neighbour.
inline int layout_separation(const Graph& g, const std::vector<VertexId>& order) {
  std::vector<int> pos(g.n());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  int w = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    int cut = 0;
    for (std::size_t j = 0; j <= i; ++j) {
      bool open = false;
      for (VertexId u : g.neighbors(order[j])) open = open || pos[u] > static_cast<int>(i);
      cut += open;
    }
    w = std::max(w, cut);
  }
  return w;
}

// Treewidth by trying all n! elimination orderings.
inline int treewidth_by_orderings(const Graph& g) {
  if (g.n() == 0) return -1;
  std::vector<VertexId> order(g.n());
  std::iota(order.begin(), order.end(), 0);
  int best = static_cast<int>(g.n());
  do best = std::min(best, elimination_width(g, order));
  while (std::next_permutation(order.begin(), order.end()));
  return best;
}

// Pathwidth by trying all n! layouts.
inline int pathwidth_by_layouts(const Graph& g) {
  if (g.n() == 0) return -1;
  std::vector<VertexId> order(g.n());
  std::iota(order.begin(), order.end(), 0);
  int best = static_cast<int>(g.n());
  do best = std::min(best, layout_separation(g, order));
  while (std::next_permutation(order.begin(), order.end()));
  return best;
}

// Tree decomposition from an elimination ordering: bag of v is v plus its later
// neighbours in the fill-in graph, hung below the earliest of them.
inline Decomposition decomposition_from_order(const Graph& g, const std::vector<VertexId>& order) {
  const std::size_t n = g.n();
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<std::set<VertexId>> adj(n);
  for (auto [u, v] : g.edges()) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  Decomposition d;
  d.bags.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const VertexId v = order[i];
    Bag bag{v};
    std::size_t parent = n;
    for (VertexId a : adj[v]) {
      bag.push_back(a);
      parent = std::min(parent, pos[a]);
      for (VertexId b : adj[v])
        if (a != b) adj[a].insert(b);
    }
    for (VertexId a : adj[v]) adj[a].erase(v);
    std::sort(bag.begin(), bag.end());
    d.bags[i] = bag;
    // vertices with no later neighbour hang below the next bag to keep one tree
    if (i + 1 < n) d.tree_edges.emplace_back(i, parent < n ? parent : i + 1);
  }
  d.root = n ? n - 1 : 0;
  return d;
}

// Path decomposition from a layout: bag i holds order[i] and every earlier
// vertex with a neighbour at position >= i.
inline Decomposition path_from_layout(const Graph& g, const std::vector<VertexId>& order) {
  std::vector<std::size_t> pos(g.n());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  std::vector<Bag> bags;
  for (std::size_t i = 0; i < order.size(); ++i) {
    Bag bag{order[i]};
    for (std::size_t j = 0; j < i; ++j) {
      bool open = false;
      for (VertexId u : g.neighbors(order[j])) open = open || pos[u] >= i;
      if (open) bag.push_back(order[j]);
    }
    bags.push_back(bag);
  }
  return make_path_decomposition(std::move(bags));
}

inline std::vector<VertexId> random_order(std::size_t n, std::mt19937_64& rng) {
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

// The O(3^s) definition of subset convolution.
inline std::vector<std::int64_t> naive_convolution(const std::vector<std::int64_t>& f,
                                                   const std::vector<std::int64_t>& g) {
  std::vector<std::int64_t> h(f.size(), 0);
  for (std::size_t x = 0; x < f.size(); ++x)
    for (std::size_t y = x;; y = (y - 1) & x) {
      h[x] += f[y] * g[x ^ y];
      if (y == 0) break;
    }
  return h;
}

}  // namespace vcw::test
