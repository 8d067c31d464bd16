#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "graph.hpp"

namespace vcw {

struct Cover {
  VertexSet vertices;
  std::size_t k = 0;
};

inline bool is_vertex_cover(const Graph& g, const VertexSet& w) {
  if (w.universe() != g.n()) throw InputError("vertex set universe does not match graph");
  for (auto [u, v] : g.edges())
    if (!w.contains(u) && !w.contains(v)) return false;
  return true;
}

namespace detail {

// Branch and bound: take the max-degree vertex or its whole neighborhood.
class CoverSearch {
 public:
  CoverSearch(const Graph& g, std::size_t bound)
      : g_(g), alive_(g.n(), true), deg_(g.n()), best_size_(bound), best_(g.n()) {
    for (VertexId v = 0; v < g.n(); ++v) deg_[v] = g.degree(v);
  }

  // Smallest cover of size < the initial bound, if any.
  std::optional<Cover> run() {
    search(0);
    if (!found_) return std::nullopt;
    return Cover{best_, best_size_};
  }

 private:
  void remove(VertexId v) {
    alive_[v] = false;
    for (VertexId u : g_.neighbors(v))
      if (alive_[u]) --deg_[u];
    log_.push_back(v);
  }

  void undo(std::size_t mark) {
    while (log_.size() > mark) {
      VertexId v = log_.back();
      log_.pop_back();
      alive_[v] = true;
      for (VertexId u : g_.neighbors(v))
        if (alive_[u]) ++deg_[u];
    }
  }

  void take(VertexId v) {
    chosen_.push_back(v);
    remove(v);
  }

  std::size_t matching_bound() {
    std::vector<bool> matched(g_.n(), false);
    std::size_t size = 0;
    for (VertexId v = 0; v < g_.n(); ++v) {
      if (!alive_[v] || matched[v] || deg_[v] == 0) continue;
      for (VertexId u : g_.neighbors(v))
        if (alive_[u] && !matched[u]) {
          matched[u] = matched[v] = true;
          ++size;
          break;
        }
    }
    return size;
  }

  void search(std::size_t depth_size) {
    const std::size_t log_mark = log_.size(), chosen_mark = chosen_.size();
    auto restore = [&] {
      undo(log_mark);
      chosen_.resize(chosen_mark);
    };

    bool changed = true;
    while (changed) {
      changed = false;
      for (VertexId v = 0; v < g_.n(); ++v) {
        if (!alive_[v]) continue;
        if (deg_[v] == 0) {
          remove(v);
        } else if (deg_[v] == 1) {
          for (VertexId u : g_.neighbors(v))
            if (alive_[u]) {
              take(u);
              break;
            }
          changed = true;
        }
      }
    }
    std::size_t size = depth_size + (chosen_.size() - chosen_mark);
    if (size >= best_size_) return restore();

    VertexId pick = 0;
    std::size_t top = 0;
    for (VertexId v = 0; v < g_.n(); ++v)
      if (alive_[v] && deg_[v] > top) {
        top = deg_[v];
        pick = v;
      }
    if (top == 0) {
      best_size_ = size;
      best_ = VertexSet::from_range(g_.n(), chosen_);
      found_ = true;
      return restore();
    }
    if (size + matching_bound() >= best_size_) return restore();

    const std::size_t inner_log = log_.size(), inner_chosen = chosen_.size();
    take(pick);
    search(size + 1);
    undo(inner_log);
    chosen_.resize(inner_chosen);

    if (size + top < best_size_) {
      for (VertexId u : g_.neighbors(pick))
        if (alive_[u]) take(u);
      remove(pick);
      search(size + top);
    }
    restore();
  }

  const Graph& g_;
  std::vector<bool> alive_;
  std::vector<std::size_t> deg_;
  std::vector<VertexId> log_, chosen_;
  std::size_t best_size_;
  VertexSet best_;
  bool found_ = false;
};

}  // namespace detail

inline Cover minimum_vertex_cover(const Graph& g) {
  return *detail::CoverSearch(g, g.n() + 1).run();
}

// Minimum cover if one of size at most `limit` exists.
inline std::optional<Cover> minimum_vertex_cover(const Graph& g, std::size_t limit) {
  return detail::CoverSearch(g, limit + 1).run();
}

}  // namespace vcw
