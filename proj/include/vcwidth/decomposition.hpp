#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"

namespace vcw {

enum class DecompositionKind { Tree, Path };

using Bag = std::vector<VertexId>;  // sorted, no duplicates
using TreeEdge = std::pair<std::size_t, std::size_t>;

// Path kind keeps its bags in path order with edges (i, i+1).
struct Decomposition {
  DecompositionKind kind = DecompositionKind::Tree;
  std::vector<Bag> bags;
  std::vector<TreeEdge> tree_edges;
  std::size_t root = 0;

  int width() const {
    int w = -1;
    for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
    return w;
  }
};

inline Decomposition make_path_decomposition(std::vector<Bag> bags) {
  Decomposition d;
  d.kind = DecompositionKind::Path;
  for (auto& b : bags) {
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }
  d.bags = std::move(bags);
  for (std::size_t i = 1; i < d.bags.size(); ++i) d.tree_edges.emplace_back(i - 1, i);
  return d;
}

// Same bags and same undirected edge set; root is ignored.
inline bool structurally_equal(const Decomposition& a, const Decomposition& b) {
  auto norm = [](const std::vector<TreeEdge>& es) {
    std::vector<TreeEdge> out;
    for (auto [x, y] : es) out.emplace_back(std::min(x, y), std::max(x, y));
    std::sort(out.begin(), out.end());
    return out;
  };
  return a.kind == b.kind && a.bags == b.bags && norm(a.tree_edges) == norm(b.tree_edges);
}

struct ValidationReport {
  int width = -1;
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

namespace detail {

// Returns an empty string when the edges form a tree on `count` nodes.
inline std::string tree_shape_error(std::size_t count, const std::vector<TreeEdge>& edges,
                                    bool path) {
  if (count == 0)
    return edges.empty() ? "" : "decomposition without bags has tree edges";
  for (auto [a, b] : edges) {
    if (a >= count || b >= count) return "tree edge references a missing bag";
    if (a == b) return "tree edge is a loop at bag " + std::to_string(a);
  }
  if (edges.size() != count - 1)
    return "bag graph has " + std::to_string(edges.size()) + " edges, a tree on " +
           std::to_string(count) + " bags needs " + std::to_string(count - 1);
  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> degree(count, 0);
  for (auto [a, b] : edges) {
    auto ra = find(a), rb = find(b);
    if (ra == rb) return "bag graph has a cycle through bags " + std::to_string(a) + " and " +
                         std::to_string(b);
    parent[ra] = rb;
    ++degree[a];
    ++degree[b];
  }
  if (path)
    for (std::size_t i = 0; i < count; ++i)
      if (degree[i] > 2) return "path decomposition bag " + std::to_string(i) + " has degree " +
                                std::to_string(degree[i]);
  return "";
}

}  // namespace detail

// Checks coverage, edge containment and connectivity. Vertex and bag names in
// messages are offset by label_base (1 for user-facing output).
inline ValidationReport validate(const Graph& g, const Decomposition& d, int label_base = 0) {
  ValidationReport rep;
  rep.width = d.width();
  auto name = [&](std::size_t x) { return std::to_string(x + static_cast<std::size_t>(label_base)); };
  const std::size_t n = g.n(), count = d.bags.size();

  std::string shape = detail::tree_shape_error(count, d.tree_edges, d.kind == DecompositionKind::Path);
  if (!shape.empty()) rep.errors.push_back(shape);
  if (count > 0 && d.root >= count) rep.errors.push_back("root is not a bag");

  std::vector<std::vector<std::size_t>> holders(n);
  for (std::size_t i = 0; i < count; ++i) {
    const Bag& b = d.bags[i];
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] >= n) {
        rep.errors.push_back("bag " + name(i) + " contains unknown vertex " + name(b[j]));
        continue;
      }
      if (j > 0 && b[j] <= b[j - 1]) {
        rep.errors.push_back("bag " + name(i) + " is not sorted or repeats vertex " + name(b[j]));
        continue;
      }
      holders[b[j]].push_back(i);
    }
  }
  for (VertexId v = 0; v < n; ++v)
    if (holders[v].empty()) rep.errors.push_back("vertex " + name(v) + " is in no bag");

  for (auto [u, v] : g.edges()) {
    const auto& a = holders[u];
    const auto& b = holders[v];
    std::vector<std::size_t> both;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
    if (both.empty())
      rep.errors.push_back("edge {" + name(u) + "," + name(v) + "} is in no bag");
  }

  if (shape.empty() && count > 0) {
    // In a tree, the bags holding v are connected iff they span exactly |bags|-1 tree edges.
    std::vector<std::size_t> inside(n, 0);
    for (auto [a, b] : d.tree_edges) {
      const Bag& ba = d.bags[a];
      const Bag& bb = d.bags[b];
      std::vector<VertexId> common;
      std::set_intersection(ba.begin(), ba.end(), bb.begin(), bb.end(), std::back_inserter(common));
      for (VertexId v : common)
        if (v < n) ++inside[v];
    }
    for (VertexId v = 0; v < n; ++v)
      if (!holders[v].empty() && inside[v] + 1 != holders[v].size())
        rep.errors.push_back("bags containing vertex " + name(v) + " are not connected");
  }
  return rep;
}

inline int require_valid(const Graph& g, const Decomposition& d) {
  auto rep = validate(g, d);
  if (!rep.ok()) throw InputError("invalid decomposition: " + rep.errors.front());
  return rep.width;
}

// Removes vertex v from every bag.
inline void strip_vertex(Decomposition& d, VertexId v) {
  for (auto& b : d.bags) b.erase(std::remove(b.begin(), b.end(), v), b.end());
}

// Contracts every bag that is empty or contained in a neighbouring bag.
// Validity and width are preserved; path decompositions stay paths.
inline Decomposition simplify(const Decomposition& d) {
  const std::size_t count = d.bags.size();
  std::vector<std::set<std::size_t>> adj(count);
  for (auto [a, b] : d.tree_edges) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  std::vector<bool> alive(count, true);
  std::vector<std::size_t> merged_into(count);
  std::iota(merged_into.begin(), merged_into.end(), std::size_t{0});
  std::deque<std::size_t> work;
  for (std::size_t i = 0; i < count; ++i) work.push_back(i);
  std::size_t remaining = count;

  while (!work.empty()) {
    std::size_t a = work.front();
    work.pop_front();
    if (!alive[a]) continue;
    const Bag& ba = d.bags[a];
    std::size_t target = count;
    for (std::size_t b : adj[a]) {
      const Bag& bb = d.bags[b];
      if (std::includes(bb.begin(), bb.end(), ba.begin(), ba.end())) {
        target = b;
        break;
      }
    }
    if (target == count) {
      if (ba.empty() && remaining == 1) {
        alive[a] = false;
        --remaining;
      }
      continue;
    }
    alive[a] = false;
    --remaining;
    merged_into[a] = target;
    adj[target].erase(a);
    for (std::size_t c : adj[a]) {
      if (c == target) continue;
      adj[c].erase(a);
      adj[c].insert(target);
      adj[target].insert(c);
      work.push_back(c);
    }
    adj[a].clear();
    work.push_back(target);
  }

  auto resolve = [&](std::size_t x) {
    while (merged_into[x] != x) x = merged_into[x];
    return x;
  };

  Decomposition out;
  out.kind = d.kind;
  if (remaining == 0) return out;
  std::vector<std::size_t> order;
  if (d.kind == DecompositionKind::Path) {
    std::size_t start = count;
    for (std::size_t i = 0; i < count && start == count; ++i)
      if (alive[i] && adj[i].size() <= 1) start = i;
    std::size_t prev = count, cur = start;
    while (cur != count) {
      order.push_back(cur);
      std::size_t next = count;
      for (std::size_t c : adj[cur])
        if (c != prev) next = c;
      prev = cur;
      cur = next;
    }
  } else {
    for (std::size_t i = 0; i < count; ++i)
      if (alive[i]) order.push_back(i);
  }
  std::vector<std::size_t> index(count, count);
  for (std::size_t i = 0; i < order.size(); ++i) {
    index[order[i]] = i;
    out.bags.push_back(d.bags[order[i]]);
  }
  if (d.kind == DecompositionKind::Path) {
    for (std::size_t i = 1; i < order.size(); ++i) out.tree_edges.emplace_back(i - 1, i);
    out.root = 0;
  } else {
    for (std::size_t a : order)
      for (std::size_t b : adj[a])
        if (a < b) out.tree_edges.emplace_back(index[a], index[b]);
    std::size_t r = d.root < count ? resolve(d.root) : order.front();
    out.root = alive[r] ? index[r] : 0;
  }
  return out;
}

enum class NiceKind { Leaf, Introduce, Forget, Join };

struct NiceNode {
  NiceKind kind = NiceKind::Leaf;
  VertexId vertex = 0;  // the introduced, forgotten or leaf vertex
  Bag bag;
  std::vector<std::size_t> children;
};

struct NiceDecomposition {
  std::vector<NiceNode> nodes;
  std::size_t root = 0;

  int width() const {
    int w = -1;
    for (const auto& nd : nodes) w = std::max(w, static_cast<int>(nd.bag.size()) - 1);
    return w;
  }

  Decomposition to_decomposition() const {
    Decomposition d;
    for (const auto& nd : nodes) d.bags.push_back(nd.bag);
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (std::size_t c : nodes[i].children) d.tree_edges.emplace_back(i, c);
    d.root = root;
    return d;
  }
};

// Lists every violated niceness rule; empty when nd is nice.
inline std::vector<std::string> nice_violations(const NiceDecomposition& nd) {
  std::vector<std::string> out;
  if (nd.nodes.empty()) return out;
  if (nd.nodes[nd.root].bag.size() != 1) out.push_back("root bag does not have size 1");
  for (std::size_t i = 0; i < nd.nodes.size(); ++i) {
    const NiceNode& x = nd.nodes[i];
    const std::string at = "node " + std::to_string(i) + ": ";
    switch (x.kind) {
      case NiceKind::Leaf:
        if (!x.children.empty() || x.bag != Bag{x.vertex}) out.push_back(at + "bad leaf");
        break;
      case NiceKind::Introduce:
      case NiceKind::Forget: {
        if (x.children.size() != 1) {
          out.push_back(at + "needs exactly one child");
          break;
        }
        Bag expect = nd.nodes[x.children[0]].bag;
        if (x.kind == NiceKind::Introduce) {
          if (std::binary_search(expect.begin(), expect.end(), x.vertex))
            out.push_back(at + "introduces a vertex the child already has");
          expect.insert(std::lower_bound(expect.begin(), expect.end(), x.vertex), x.vertex);
        } else {
          auto it = std::lower_bound(expect.begin(), expect.end(), x.vertex);
          if (it == expect.end() || *it != x.vertex)
            out.push_back(at + "forgets a vertex the child lacks");
          else
            expect.erase(it);
        }
        if (expect != x.bag) out.push_back(at + "bag does not match its operation");
        break;
      }
      case NiceKind::Join:
        if (x.children.size() != 2) out.push_back(at + "join needs two children");
        for (std::size_t c : x.children)
          if (nd.nodes[c].bag != x.bag) out.push_back(at + "join child bag differs");
        break;
    }
  }
  return out;
}

// Converts a valid decomposition into nice form. Path decompositions are
// rooted at an end, so no join nodes appear.
inline NiceDecomposition make_nice(const Graph& g, const Decomposition& input) {
  require_valid(g, input);
  const Decomposition d = simplify(input);
  NiceDecomposition nd;
  const std::size_t count = d.bags.size();
  if (count == 0) return nd;

  std::vector<std::vector<std::size_t>> adj(count);
  for (auto [a, b] : d.tree_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& l : adj) std::sort(l.begin(), l.end());
  std::size_t root = d.kind == DecompositionKind::Path ? 0 : d.root;

  std::vector<std::size_t> parent(count, count), order;
  order.reserve(count);
  std::vector<std::size_t> stack{root};
  std::vector<bool> seen(count, false);
  seen[root] = true;
  while (!stack.empty()) {
    std::size_t x = stack.back();
    stack.pop_back();
    order.push_back(x);
    for (std::size_t y : adj[x])
      if (!seen[y]) {
        seen[y] = true;
        parent[y] = x;
        stack.push_back(y);
      }
  }

  auto add = [&](NiceKind kind, VertexId v, Bag bag, std::vector<std::size_t> children) {
    nd.nodes.push_back(NiceNode{kind, v, std::move(bag), std::move(children)});
    return nd.nodes.size() - 1;
  };
  // Grows or shrinks the bag of node `top` one vertex at a time until it equals `target`.
  auto morph = [&](std::size_t top, const Bag& target) {
    Bag cur = nd.nodes[top].bag;
    for (VertexId v : Bag(cur)) {
      if (std::binary_search(target.begin(), target.end(), v)) continue;
      cur.erase(std::find(cur.begin(), cur.end(), v));
      top = add(NiceKind::Forget, v, cur, {top});
    }
    for (VertexId v : target) {
      if (std::binary_search(cur.begin(), cur.end(), v)) continue;
      cur.insert(std::lower_bound(cur.begin(), cur.end(), v), v);
      top = add(NiceKind::Introduce, v, cur, {top});
    }
    return top;
  };

  // Reverse DFS order visits children before parents.
  std::vector<std::size_t> built(count);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::size_t x = *it;
    const Bag& bag = d.bags[x];
    std::vector<std::size_t> tops;
    for (std::size_t y : adj[x])
      if (y != parent[x]) tops.push_back(morph(built[y], bag));
    if (tops.empty()) {
      std::size_t top = add(NiceKind::Leaf, bag.front(), Bag{bag.front()}, {});
      built[x] = morph(top, bag);
      continue;
    }
    std::size_t top = tops.front();
    for (std::size_t i = 1; i < tops.size(); ++i) top = add(NiceKind::Join, 0, bag, {top, tops[i]});
    built[x] = top;
  }

  std::size_t top = built[root];
  Bag cur = nd.nodes[top].bag;
  while (cur.size() > 1) {
    VertexId v = cur.front();
    cur.erase(cur.begin());
    top = add(NiceKind::Forget, v, cur, {top});
  }
  nd.root = top;
  return nd;
}

struct Trace {
  VertexSet lower, bag, rest;
};

// Splits C by node i: cover vertices seen only strictly below i, in i's bag, and the rest.
inline Trace trace_of_node(const NiceDecomposition& nd, std::size_t i, const VertexSet& c) {
  if (i >= nd.nodes.size()) throw InputError("node " + std::to_string(i) + " does not exist");
  const std::size_t n = c.universe();
  VertexSet below(n), bag(n);
  for (VertexId v : nd.nodes[i].bag)
    if (v < n) bag.insert(v);
  std::vector<std::size_t> stack(nd.nodes[i].children);
  while (!stack.empty()) {
    std::size_t x = stack.back();
    stack.pop_back();
    for (VertexId v : nd.nodes[x].bag)
      if (v < n) below.insert(v);
    for (std::size_t y : nd.nodes[x].children) stack.push_back(y);
  }
  Trace t{(below - bag) & c, bag & c, VertexSet(n)};
  t.rest = c - t.lower - t.bag;
  return t;
}

}  // namespace vcw
