#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"

// Exact O*(2^n) baselines over vertex subsets. Kept free of any solver code.
namespace vcw::oracle {

inline constexpr std::size_t kMaxOracleVertices = 26;

namespace detail {

inline std::vector<std::uint32_t> masks(const Graph& g, std::size_t cap) {
  if (g.n() > cap)
    throw ResourceError("oracle limited to " + std::to_string(cap) + " vertices, graph has " +
                        std::to_string(g.n()));
  std::vector<std::uint32_t> adj(g.n(), 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= std::uint32_t{1} << v;
    adj[v] |= std::uint32_t{1} << u;
  }
  return adj;
}

inline std::uint32_t union_of(const std::vector<std::uint32_t>& adj, std::uint32_t set) {
  std::uint32_t out = 0;
  for (; set; set &= set - 1) out |= adj[static_cast<std::size_t>(std::countr_zero(set))];
  return out;
}

}  // namespace detail

// Min over elimination orderings: TW(S) = min_v max(TW(S-v), |Q(S-v, v)|), where
// Q(S, v) holds the vertices outside S+v reachable from v through S.
inline int treewidth_exact(const Graph& g, std::size_t cap = kMaxOracleVertices) {
  const auto adj = detail::masks(g, cap);
  const std::size_t n = g.n();
  if (n == 0) return -1;
  const std::uint32_t all = static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
  std::vector<std::int8_t> tw(std::size_t{1} << n, 0);
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= all && s != 0; ++s) {
    int best = 127;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const std::uint32_t before = s & ~(std::uint32_t{1} << v);
      int prior = tw[before];
      if (prior >= best) continue;
      std::uint32_t reach = 0, frontier = adj[static_cast<std::size_t>(v)] & before;
      while (frontier) {
        reach |= frontier;
        frontier = detail::union_of(adj, frontier) & before & ~reach;
      }
      const std::uint32_t q = (adj[static_cast<std::size_t>(v)] | detail::union_of(adj, reach)) & ~s;
      best = std::min(best, std::max(prior, std::popcount(q)));
    }
    tw[s] = static_cast<std::int8_t>(best);
    if (s == all) break;
  }
  return tw[all];
}

// Vertex separation: vs(L) = max(|N(L)|, min_v vs(L-v)), vs(empty) = 0.
inline int pathwidth_exact(const Graph& g, std::size_t cap = kMaxOracleVertices) {
  const auto adj = detail::masks(g, cap);
  const std::size_t n = g.n();
  if (n == 0) return -1;
  const std::uint32_t all = static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
  std::vector<std::int8_t> vs(std::size_t{1} << n, 0);
  for (std::uint32_t l = 1; l <= all && l != 0; ++l) {
    int best = 127;
    for (std::uint32_t rest = l; rest; rest &= rest - 1)
      best = std::min<int>(best, vs[l & ~(std::uint32_t{1} << std::countr_zero(rest))]);
    const int boundary = std::popcount(detail::union_of(adj, l) & ~l);
    vs[l] = static_cast<std::int8_t>(std::max(best, boundary));
    if (l == all) break;
  }
  return vs[all];
}

// Graph number `code` among the 2^(n(n-1)/2) labelled graphs on n vertices.
// Bit j of code selects the j-th pair (u, v), u < v, in lexicographic order.
inline Graph small_graph(std::size_t n, std::uint64_t code) {
  std::vector<Edge> edges;
  std::size_t j = 0;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v, ++j)
      if (code >> j & 1) edges.emplace_back(u, v);
  return Graph(n, edges);
}

template <class F>
void enumerate_small_graphs(std::size_t n, F&& visit) {
  const std::size_t pairs = n * (n > 0 ? n - 1 : 0) / 2;
  if (pairs > 40) throw ResourceError("too many graphs to enumerate on " + std::to_string(n) + " vertices");
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << pairs); ++code) visit(small_graph(n, code));
}

}  // namespace vcw::oracle
