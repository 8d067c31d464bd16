#pragma once

#include <charconv>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "decomposition.hpp"
#include "errors.hpp"
#include "graph.hpp"

namespace vcw {

// Largest vertex or bag count a file may declare.
inline constexpr std::uint64_t kMaxDeclaredCount = std::uint64_t{1} << 22;

struct GraphDocument {
  std::uint64_t n = 0, m = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;  // 1-indexed
  std::vector<std::string> comments;
};

struct DecompositionDocument {
  std::uint64_t bag_count = 0;
  std::uint64_t declared_bag_size = 0;  // the header's width+1 field
  std::uint64_t declared_n = 0;
  std::vector<std::vector<std::uint64_t>> bags;  // bags[i] is bag i+1, 1-indexed vertices
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;  // 1-indexed bag ids
  bool path = false;
};

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
  std::string_view text;
};

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

inline std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0, pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    Line line{number, {}, raw};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && is_space(raw[i])) ++i;
      std::size_t j = i;
      while (j < raw.size() && !is_space(raw[j])) ++j;
      if (j > i) line.tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
    pos = end + 1;
  }
  return out;
}

inline std::string shown(std::string_view tok) {
  std::string s;
  for (char c : tok.substr(0, 20)) s += (c >= 32 && c < 127) ? c : '?';
  return tok.size() > 20 ? s + "..." : s;
}

inline std::uint64_t number(const Line& line, std::string_view tok, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec == std::errc::result_out_of_range)
    throw ParseError(line.number, std::string(what) + " '" + shown(tok) + "' is too large");
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line.number, std::string("expected ") + what + ", found '" + shown(tok) + "'");
  return v;
}

inline std::size_t last_line_number(std::string_view text) {
  std::size_t lines = 1;
  for (char c : text) lines += c == '\n';
  return lines;
}

}  // namespace detail

inline GraphDocument parse_gr_document(std::string_view text) {
  GraphDocument doc;
  std::size_t header_line = 0;
  std::unordered_set<std::uint64_t> seen;
  for (const auto& line : detail::split_lines(text)) {
    const auto& t = line.tokens;
    if (t[0] == "c") {
      doc.comments.emplace_back(line.text);
      continue;
    }
    if (t[0] == "p") {
      if (header_line) throw ParseError(line.number, "duplicate header (first at line " +
                                                         std::to_string(header_line) + ")");
      if (t.size() != 4 || t[1] != "tw") throw ParseError(line.number, "header must read 'p tw <n> <m>'");
      doc.n = detail::number(line, t[2], "vertex count");
      doc.m = detail::number(line, t[3], "edge count");
      if (doc.n > kMaxDeclaredCount) throw ParseError(line.number, "vertex count exceeds the supported maximum");
      if (doc.m > doc.n * (doc.n > 0 ? doc.n - 1 : 0) / 2)
        throw ParseError(line.number, "edge count exceeds what a simple graph on n vertices allows");
      header_line = line.number;
      continue;
    }
    if (!header_line) throw ParseError(line.number, "edge line before the 'p tw' header");
    if (t.size() != 2) throw ParseError(line.number, "edge line must have exactly two endpoints");
    std::uint64_t u = detail::number(line, t[0], "vertex id");
    std::uint64_t v = detail::number(line, t[1], "vertex id");
    for (auto x : {u, v})
      if (x < 1 || x > doc.n)
        throw ParseError(line.number, "endpoint " + std::to_string(x) + " outside [1," +
                                          std::to_string(doc.n) + "]");
    if (u == v) throw ParseError(line.number, "self-loop on vertex " + std::to_string(u));
    if (doc.edges.size() == doc.m)
      throw ParseError(line.number, "more edge lines than the " + std::to_string(doc.m) + " declared");
    std::uint64_t key = std::min(u, v) * (doc.n + 1) + std::max(u, v);
    if (!seen.insert(key).second)
      throw ParseError(line.number, "duplicate edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
    doc.edges.emplace_back(u, v);
  }
  if (!header_line) throw ParseError(detail::last_line_number(text), "missing 'p tw' header");
  if (doc.edges.size() != doc.m)
    throw ParseError(header_line, "header declares " + std::to_string(doc.m) + " edges but " +
                                      std::to_string(doc.edges.size()) + " were given");
  return doc;
}

inline Graph to_graph(const GraphDocument& doc) {
  std::vector<Edge> edges;
  edges.reserve(doc.edges.size());
  for (auto [u, v] : doc.edges) edges.emplace_back(static_cast<VertexId>(u - 1), static_cast<VertexId>(v - 1));
  return Graph(doc.n, edges);
}

inline Graph parse_gr(std::string_view text) { return to_graph(parse_gr_document(text)); }

inline std::string emit_gr(const Graph& g) {
  std::ostringstream out;
  out << "p tw " << g.n() << ' ' << g.m() << '\n';
  for (auto [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

inline DecompositionDocument parse_td(std::string_view text) {
  DecompositionDocument doc;
  std::size_t header_line = 0;
  std::vector<std::size_t> bag_line;
  std::vector<std::uint64_t> parent;
  auto find = [&](std::uint64_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& line : detail::split_lines(text)) {
    const auto& t = line.tokens;
    if (t[0] == "c") {
      if (t.size() == 2 && t[1] == "path") doc.path = true;
      continue;
    }
    if (t[0] == "s") {
      if (header_line) throw ParseError(line.number, "duplicate header (first at line " +
                                                         std::to_string(header_line) + ")");
      if (t.size() != 5 || t[1] != "td") throw ParseError(line.number, "header must read 's td <N> <w+1> <n>'");
      doc.bag_count = detail::number(line, t[2], "bag count");
      doc.declared_bag_size = detail::number(line, t[3], "bag size");
      doc.declared_n = detail::number(line, t[4], "vertex count");
      if (doc.bag_count > kMaxDeclaredCount) throw ParseError(line.number, "bag count exceeds the supported maximum");
      doc.bags.assign(doc.bag_count, {});
      bag_line.assign(doc.bag_count, 0);
      parent.resize(doc.bag_count);
      std::iota(parent.begin(), parent.end(), std::uint64_t{0});
      header_line = line.number;
      continue;
    }
    if (!header_line) throw ParseError(line.number, "line before the 's td' header");
    if (t[0] == "b") {
      if (t.size() < 2) throw ParseError(line.number, "bag line without an id");
      std::uint64_t id = detail::number(line, t[1], "bag id");
      if (id < 1 || id > doc.bag_count)
        throw ParseError(line.number, "bag id " + std::to_string(id) + " outside [1," +
                                          std::to_string(doc.bag_count) + "]");
      if (bag_line[id - 1]) throw ParseError(line.number, "bag " + std::to_string(id) + " defined twice");
      bag_line[id - 1] = line.number;
      auto& bag = doc.bags[id - 1];
      for (std::size_t i = 2; i < t.size(); ++i) {
        std::uint64_t v = detail::number(line, t[i], "vertex id");
        if (v < 1 || v > doc.declared_n)
          throw ParseError(line.number, "vertex " + std::to_string(v) + " outside [1," +
                                            std::to_string(doc.declared_n) + "]");
        bag.push_back(v);
      }
      std::vector<std::uint64_t> sorted = bag;
      std::sort(sorted.begin(), sorted.end());
      auto dup = std::adjacent_find(sorted.begin(), sorted.end());
      if (dup != sorted.end())
        throw ParseError(line.number, "vertex " + std::to_string(*dup) + " repeated in bag " + std::to_string(id));
      continue;
    }
    if (t.size() != 2) throw ParseError(line.number, "tree edge line must have exactly two bag ids");
    std::uint64_t a = detail::number(line, t[0], "bag id");
    std::uint64_t b = detail::number(line, t[1], "bag id");
    for (auto x : {a, b})
      if (x < 1 || x > doc.bag_count)
        throw ParseError(line.number, "bag id " + std::to_string(x) + " outside [1," +
                                          std::to_string(doc.bag_count) + "]");
    if (a == b) throw ParseError(line.number, "tree edge joins bag " + std::to_string(a) + " to itself");
    auto ra = find(a - 1), rb = find(b - 1);
    if (ra == rb) throw ParseError(line.number, "tree edge {" + std::to_string(a) + "," + std::to_string(b) +
                                                    "} closes a cycle");
    parent[ra] = rb;
    doc.edges.emplace_back(a, b);
  }
  if (!header_line) throw ParseError(detail::last_line_number(text), "missing 's td' header");
  for (std::size_t i = 0; i < doc.bag_count; ++i)
    if (!bag_line[i]) throw ParseError(header_line, "bag " + std::to_string(i + 1) + " is never defined");
  if (doc.bag_count > 0 && doc.edges.size() != doc.bag_count - 1)
    throw ParseError(header_line, "bag graph is not a tree: " + std::to_string(doc.edges.size()) +
                                      " edges for " + std::to_string(doc.bag_count) + " bags");
  std::uint64_t largest = 0;
  for (const auto& b : doc.bags) largest = std::max<std::uint64_t>(largest, b.size());
  if (largest != doc.declared_bag_size)
    throw ParseError(header_line, "header declares bag size " + std::to_string(doc.declared_bag_size) +
                                      " but the largest bag has " + std::to_string(largest));
  if (doc.path) {
    std::vector<int> degree(doc.bag_count, 0);
    for (auto [a, b] : doc.edges)
      if (++degree[a - 1] > 2 || ++degree[b - 1] > 2)
        throw ParseError(header_line, "decomposition marked 'c path' is not a path");
  }
  return doc;
}

// 0-indexed decomposition. Path documents come back with bags in path order.
inline Decomposition to_decomposition(const DecompositionDocument& doc) {
  Decomposition d;
  d.kind = doc.path ? DecompositionKind::Path : DecompositionKind::Tree;
  const std::size_t count = doc.bag_count;
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (doc.path && count > 1) {
    std::vector<std::vector<std::size_t>> adj(count);
    for (auto [a, b] : doc.edges) {
      adj[a - 1].push_back(b - 1);
      adj[b - 1].push_back(a - 1);
    }
    std::size_t cur = 0;
    while (adj[cur].size() == 2) ++cur;
    order.clear();
    std::size_t prev = count;
    while (cur != count) {
      order.push_back(cur);
      std::size_t next = count;
      for (std::size_t c : adj[cur])
        if (c != prev) next = c;
      prev = cur;
      cur = next;
    }
  }
  std::vector<std::size_t> index(count);
  for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = i;
  for (std::size_t i : order) {
    Bag bag;
    for (auto v : doc.bags[i]) bag.push_back(static_cast<VertexId>(v - 1));
    std::sort(bag.begin(), bag.end());
    d.bags.push_back(std::move(bag));
  }
  if (doc.path) {
    for (std::size_t i = 1; i < count; ++i) d.tree_edges.emplace_back(i - 1, i);
  } else {
    for (auto [a, b] : doc.edges) d.tree_edges.emplace_back(index[a - 1], index[b - 1]);
  }
  return d;
}

inline std::string emit_td(const Decomposition& d, std::size_t n) {
  std::ostringstream out;
  if (d.kind == DecompositionKind::Path) out << "c path\n";
  out << "s td " << d.bags.size() << ' ' << d.width() + 1 << ' ' << n << '\n';
  for (std::size_t i = 0; i < d.bags.size(); ++i) {
    out << "b " << i + 1;
    for (VertexId v : d.bags[i]) out << ' ' << v + 1;
    out << '\n';
  }
  for (auto [a, b] : d.tree_edges) out << a + 1 << ' ' << b + 1 << '\n';
  return out.str();
}

// Whitespace-separated 1-indexed vertex ids.
inline VertexSet parse_cover(std::string_view text, std::size_t n) {
  VertexSet cover(n);
  for (const auto& line : detail::split_lines(text))
    for (auto tok : line.tokens) {
      std::uint64_t v = detail::number(line, tok, "vertex id");
      if (v < 1 || v > n)
        throw ParseError(line.number, "cover vertex " + std::to_string(v) + " outside [1," + std::to_string(n) + "]");
      if (cover.contains(static_cast<VertexId>(v - 1)))
        throw ParseError(line.number, "cover vertex " + std::to_string(v) + " listed twice");
      cover.insert(static_cast<VertexId>(v - 1));
    }
  return cover;
}

}  // namespace vcw
