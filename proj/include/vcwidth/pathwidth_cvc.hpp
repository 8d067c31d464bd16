#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "decomposition.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "pathwidth_vc.hpp"
#include "vertex_cover.hpp"

namespace vcw {

struct CvcOptions {
  std::optional<VertexSet> cover;  // vertex cover of the complement graph
  std::size_t max_cover = 26;
  bool witness = true;
};

// pw(G[N[L]]; N(L)) for every subset L of C, where C covers the complement of
// G: the best vertex separation of layouts of L that end next to N(L).
class RootedPathwidthTable {
 public:
  RootedPathwidthTable(const Graph& g, std::vector<VertexId> cover) : cover_(std::move(cover)) {
    if (cover_.size() > 30) throw ResourceError("complement cover too large for a subset table");
    words_ = (g.n() + 63) / 64;
    nb_.assign(cover_.size() * words_, 0);
    for (std::size_t i = 0; i < cover_.size(); ++i)
      for (VertexId u : g.neighbors(cover_[i])) nb_[i * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
    const std::size_t size = std::size_t{1} << cover_.size();
    value_.assign(size, 0);
    choice_.assign(size, 0xFF);
    for (std::uint32_t l = 1; l < size; ++l) {
      int best = kUnreachable, arg = 0;
      for (std::uint32_t m = l; m; m &= m - 1) {
        const int u = std::countr_zero(m);
        if (value_[l & ~(std::uint32_t{1} << u)] < best) {
          best = value_[l & ~(std::uint32_t{1} << u)];
          arg = u;
        }
      }
      value_[l] = static_cast<std::uint16_t>(std::max(best, boundary_size(l)));
      choice_[l] = static_cast<std::uint8_t>(arg);
    }
  }

  std::size_t cover_size() const { return cover_.size(); }
  int value(std::uint32_t l) const { return value_[l]; }
  int choice(std::uint32_t l) const { return choice_[l]; }

  // |N(L)| in G.
  int boundary_size(std::uint32_t l) const { return static_cast<int>(boundary(l).size()); }

  std::vector<VertexId> boundary(std::uint32_t l) const {
    std::vector<std::uint64_t> acc(words_, 0);
    for (std::uint32_t m = l; m; m &= m - 1) {
      const std::size_t i = static_cast<std::size_t>(std::countr_zero(m));
      for (std::size_t w = 0; w < words_; ++w) acc[w] |= nb_[i * words_ + w];
    }
    for (std::uint32_t m = l; m; m &= m - 1) {
      const VertexId v = cover_[static_cast<std::size_t>(std::countr_zero(m))];
      acc[v / 64] &= ~(std::uint64_t{1} << (v % 64));
    }
    std::vector<VertexId> out;
    for (std::size_t w = 0; w < words_; ++w)
      for (std::uint64_t x = acc[w]; x; x &= x - 1) out.push_back(static_cast<VertexId>(w * 64 + std::countr_zero(x)));
    return out;
  }

  // Bags of the layout behind value(l), ordered from the far end towards N(L).
  std::vector<Bag> side_bags(std::uint32_t l) const {
    std::vector<Bag> bags;
    while (l) {
      const int u = choice(l);
      Bag bag = boundary(l);
      bag.push_back(cover_[static_cast<std::size_t>(u)]);
      bags.push_back(std::move(bag));
      l &= ~(std::uint32_t{1} << u);
    }
    std::reverse(bags.begin(), bags.end());
    return bags;
  }

  const std::vector<VertexId>& cover() const { return cover_; }

 private:
  std::vector<VertexId> cover_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> nb_;
  std::vector<std::uint16_t> value_;
  std::vector<std::uint8_t> choice_;
};

// Pathwidth parameterized by the vertex cover number of the complement: the
// vertices outside the cover form a clique S, some bag holds all of S, and
// the two sides of that bag are rooted layouts of L and of C \ N[L].
inline WidthResult pathwidth_cvc(const Graph& g, const CvcOptions& opt = {}) {
  WidthResult res;
  res.witness.kind = DecompositionKind::Path;
  if (g.n() == 0) return res;
  const Graph comp = complement(g);
  VertexSet cover(g.n());
  if (opt.cover) {
    if (opt.cover->universe() != g.n() || !is_vertex_cover(comp, *opt.cover))
      throw InputError("supplied set is not a vertex cover of the complement graph");
    cover = *opt.cover;
  } else {
    auto found = minimum_vertex_cover(comp, opt.max_cover);
    if (!found) throw ResourceError("complement vertex cover exceeds the limit of " + std::to_string(opt.max_cover));
    cover = found->vertices;
  }
  if (cover.size() > opt.max_cover)
    throw ResourceError("complement cover of size " + std::to_string(cover.size()) + " exceeds the limit of " +
                        std::to_string(opt.max_cover));

  const std::vector<VertexId> c = cover.to_vector();
  const RootedPathwidthTable table(g, c);
  const std::size_t k = c.size();
  const int clique = static_cast<int>(g.n() - k);
  std::vector<int> index(g.n(), -1);
  for (std::size_t i = 0; i < k; ++i) index[c[i]] = static_cast<int>(i);

  int best = kUnreachable;
  std::uint32_t best_l = 0;
  const std::uint32_t full = static_cast<std::uint32_t>((std::uint64_t{1} << k) - 1);
  for (std::uint32_t l = 0; l <= full; ++l) {
    std::uint32_t closed = l;
    int outside_cover = 0;  // |N(L) cap C|
    for (VertexId v : table.boundary(l))
      if (index[v] >= 0) {
        closed |= std::uint32_t{1} << index[v];
        ++outside_cover;
      }
    const std::uint32_t r = full & ~closed;
    const int value = std::max({table.value(l), table.value(r), clique + outside_cover - 1});
    if (value < best) {
      best = value;
      best_l = l;
    }
    if (l == full) break;
  }
  res.width = best;
  res.stats.cover_size = k;
  res.stats.peak_table_entries = std::uint64_t{1} << k;
  res.stats.states = std::uint64_t{1} << k;
  if (!opt.witness) return res;

  std::vector<Bag> bags = table.side_bags(best_l);
  Bag middle;
  for (VertexId v = 0; v < g.n(); ++v)
    if (index[v] < 0) middle.push_back(v);
  std::uint32_t closed = best_l;
  for (VertexId v : table.boundary(best_l)) {
    if (index[v] >= 0) {
      middle.push_back(v);
      closed |= std::uint32_t{1} << index[v];
    }
  }
  bags.push_back(std::move(middle));
  std::vector<Bag> right = table.side_bags(full & ~closed);
  bags.insert(bags.end(), right.rbegin(), right.rend());
  Decomposition d = simplify(make_path_decomposition(std::move(bags)));
  auto rep = validate(g, d);
  if (!rep.ok()) throw InternalError("complement-cover witness is invalid: " + rep.errors.front());
  if (rep.width != res.width)
    throw InternalError("complement-cover witness has width " + std::to_string(rep.width) + ", expected " +
                        std::to_string(res.width));
  res.witness = std::move(d);
  return res;
}

}  // namespace vcw
