#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace evencycle {

using vertex = std::uint32_t;
using edge = std::pair<vertex, vertex>;

// Immutable undirected simple graph on vertices 0..n-1 with sorted adjacency.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  // Throws precondition_error on a self-loop, duplicate edge or id >= n.
  static Graph from_edges(std::size_t n, std::span<const edge> edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n)
        throw precondition_error("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                 ") names a vertex >= " + std::to_string(n));
      if (u == v) throw precondition_error("self-loop at vertex " + std::to_string(u));
      g.adj_[u].push_back(v);
      g.adj_[v].push_back(u);
    }
    for (vertex v = 0; v < n; ++v) {
      auto& a = g.adj_[v];
      std::sort(a.begin(), a.end());
      if (auto it = std::adjacent_find(a.begin(), a.end()); it != a.end())
        throw precondition_error("duplicate edge (" + std::to_string(std::min(v, *it)) + "," +
                                 std::to_string(std::max(v, *it)) + ")");
    }
    g.m_ = edges.size();
    return g;
  }

  std::size_t order() const noexcept { return adj_.size(); }
  std::size_t size() const noexcept { return m_; }
  bool empty() const noexcept { return adj_.empty(); }

  std::span<const vertex> neighbors(vertex v) const { return adj_[v]; }
  std::size_t degree(vertex v) const { return adj_[v].size(); }

  bool has_edge(vertex u, vertex v) const {
    if (u >= order() || v >= order()) return false;
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    return std::binary_search(a.begin(), a.end(), &a == &adj_[u] ? v : u);
  }

  std::size_t min_degree() const {
    std::size_t best = order() ? adj_[0].size() : 0;
    for (const auto& a : adj_) best = std::min(best, a.size());
    return best;
  }

  double average_degree() const { return order() ? 2.0 * double(m_) / double(order()) : 0.0; }

  // Edges with u < v, sorted lexicographically.
  std::vector<edge> edges() const {
    std::vector<edge> out;
    out.reserve(m_);
    for (vertex u = 0; u < order(); ++u)
      for (vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  std::vector<std::vector<vertex>> adj_;
  std::size_t m_ = 0;
};

// A graph derived from a parent graph, with the id of every vertex in the parent.
struct Subgraph {
  Graph graph;
  std::vector<vertex> to_parent;

  vertex parent_of(vertex v) const { return to_parent[v]; }

  std::vector<vertex> lift(std::span<const vertex> vs) const {
    std::vector<vertex> out;
    out.reserve(vs.size());
    for (vertex v : vs) out.push_back(to_parent[v]);
    return out;
  }
};

// Boolean membership table over 0..n-1.
class VertexMask {
 public:
  VertexMask() = default;
  explicit VertexMask(std::size_t n) : bits_(n, 0) {}
  VertexMask(std::size_t n, std::span<const vertex> members) : bits_(n, 0) {
    for (vertex v : members) bits_.at(v) = 1;
  }
  bool operator[](vertex v) const { return v < bits_.size() && bits_[v]; }
  void set(vertex v, bool on = true) { bits_[v] = on ? 1 : 0; }
  std::size_t universe() const noexcept { return bits_.size(); }

 private:
  std::vector<unsigned char> bits_;
};

inline std::vector<vertex> sorted_unique(std::vector<vertex> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

// e(X, Y): edges with one end in X and the other in Y (X, Y disjoint).
inline std::size_t edges_between(const Graph& g, std::span<const vertex> x, std::span<const vertex> y) {
  VertexMask in_y(g.order(), y);
  std::size_t count = 0;
  for (vertex u : x)
    for (vertex v : g.neighbors(u))
      if (in_y[v]) ++count;
  return count;
}

// G[keep]; local ids follow the sorted order of keep.
inline Subgraph induced_subgraph(const Graph& g, std::span<const vertex> keep) {
  Subgraph s;
  s.to_parent = sorted_unique({keep.begin(), keep.end()});
  std::vector<vertex> local(g.order(), vertex(-1));
  for (vertex i = 0; i < s.to_parent.size(); ++i) local[s.to_parent[i]] = i;
  std::vector<edge> es;
  for (vertex i = 0; i < s.to_parent.size(); ++i)
    for (vertex w : g.neighbors(s.to_parent[i]))
      if (local[w] != vertex(-1) && i < local[w]) es.emplace_back(i, local[w]);
  s.graph = Graph::from_edges(s.to_parent.size(), es);
  return s;
}

// G[X, Y]: vertex set X ∪ Y keeping only the edges that cross between X and Y.
inline Subgraph crossing_subgraph(const Graph& g, std::span<const vertex> x, std::span<const vertex> y) {
  std::vector<vertex> all(x.begin(), x.end());
  all.insert(all.end(), y.begin(), y.end());
  Subgraph s;
  s.to_parent = sorted_unique(std::move(all));
  if (s.to_parent.size() != x.size() + y.size())
    throw precondition_error("crossing_subgraph needs disjoint vertex sets");
  std::vector<vertex> local(g.order(), vertex(-1));
  for (vertex i = 0; i < s.to_parent.size(); ++i) local[s.to_parent[i]] = i;
  VertexMask in_y(g.order(), y);
  std::vector<edge> es;
  for (vertex u : x)
    for (vertex w : g.neighbors(u))
      if (in_y[w]) es.emplace_back(std::min(local[u], local[w]), std::max(local[u], local[w]));
  s.graph = Graph::from_edges(s.to_parent.size(), es);
  return s;
}

// ---------------------------------------------------------------------------
// Text format: "n m" then m lines "u v".

inline Graph load_graph(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto next_line = [&](std::string_view& out) {
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      out = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      if (out.find_first_not_of(" \t\r") != std::string_view::npos) return true;
    }
    return false;
  };
  auto parse_pair = [&](std::string_view line, std::uint64_t& a, std::uint64_t& b) {
    const char* p = line.data();
    const char* end = line.data() + line.size();
    auto skip = [&] {
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    };
    skip();
    auto r1 = std::from_chars(p, end, a);
    if (r1.ec != std::errc{} || r1.ptr == p) return false;
    p = r1.ptr;
    if (p == end || (*p != ' ' && *p != '\t')) return false;
    skip();
    auto r2 = std::from_chars(p, end, b);
    if (r2.ec != std::errc{} || r2.ptr == p) return false;
    p = r2.ptr;
    skip();
    return p == end;
  };

  std::string_view line;
  if (!next_line(line)) throw parse_error(0, "empty input: expected header \"n m\"");
  std::uint64_t n = 0, m = 0;
  if (!parse_pair(line, n, m)) throw parse_error(line_no, "malformed header, expected \"n m\"");
  if (n > std::uint64_t(vertex(-1))) throw parse_error(line_no, "vertex count too large");

  std::vector<edge> es;
  es.reserve(std::min<std::uint64_t>(m, 1u << 20));
  std::unordered_set<std::uint64_t> seen;
  while (next_line(line)) {
    std::uint64_t u = 0, v = 0;
    if (!parse_pair(line, u, v)) throw parse_error(line_no, "malformed edge line, expected \"u v\"");
    if (es.size() == m) throw parse_error(line_no, "more edge lines than the header's m = " + std::to_string(m));
    if (u >= n || v >= n) throw parse_error(line_no, "vertex id >= n = " + std::to_string(n));
    if (u == v) throw parse_error(line_no, "self-loop at vertex " + std::to_string(u));
    vertex a = vertex(std::min(u, v)), b = vertex(std::max(u, v));
    if (!seen.insert((std::uint64_t(a) << 32) | b).second)
      throw parse_error(line_no, "duplicate edge " + std::to_string(a) + " " + std::to_string(b));
    es.emplace_back(a, b);
  }
  if (es.size() != m)
    throw parse_error(line_no, "expected " + std::to_string(m) + " edge lines, found " + std::to_string(es.size()));
  return Graph::from_edges(n, es);
}

inline std::string serialize(const Graph& g) {
  std::ostringstream out;
  out << g.order() << ' ' << g.size() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------

struct Bipartition {
  std::vector<vertex> left;
  std::vector<vertex> right;
};

// Proper 2-colouring if g is bipartite.
inline std::optional<Bipartition> two_coloring(const Graph& g) {
  std::vector<int> side(g.order(), -1);
  for (vertex s = 0; s < g.order(); ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    std::deque<vertex> queue{s};
    while (!queue.empty()) {
      vertex u = queue.front();
      queue.pop_front();
      for (vertex w : g.neighbors(u)) {
        if (side[w] == -1) {
          side[w] = 1 - side[u];
          queue.push_back(w);
        } else if (side[w] == side[u]) {
          return std::nullopt;
        }
      }
    }
  }
  Bipartition b;
  for (vertex v = 0; v < g.order(); ++v) (side[v] == 0 ? b.left : b.right).push_back(v);
  return b;
}

inline bool is_bipartite(const Graph& g) { return two_coloring(g).has_value(); }

struct BipartiteHalf {
  Bipartition parts;
  Graph subgraph;  // spanning: same vertex ids as the input
};

// Locally optimal cut: no single vertex move increases the number of crossing
// edges, hence at least half of the edges cross.
inline BipartiteHalf bipartite_half(const Graph& g) {
  if (g.empty()) throw precondition_error("bipartite_half needs a nonempty graph");
  if (auto proper = two_coloring(g)) return {std::move(*proper), g};  // every edge already crosses
  const std::size_t n = g.order();
  std::vector<int> side(n, 0);
  for (vertex v = 0; v < n; ++v) {
    std::size_t on_left = 0, on_right = 0;
    for (vertex w : g.neighbors(v)) {
      if (w >= v) break;
      (side[w] == 0 ? on_left : on_right)++;
    }
    side[v] = on_left > on_right ? 1 : 0;
  }
  for (bool moved = true; moved;) {
    moved = false;
    for (vertex v = 0; v < n; ++v) {
      std::size_t same = 0;
      for (vertex w : g.neighbors(v))
        if (side[w] == side[v]) ++same;
      if (2 * same > g.degree(v)) {
        side[v] = 1 - side[v];
        moved = true;
      }
    }
  }
  BipartiteHalf out;
  std::vector<edge> crossing;
  for (auto [u, v] : g.edges())
    if (side[u] != side[v]) crossing.emplace_back(u, v);
  for (vertex v = 0; v < n; ++v) (side[v] == 0 ? out.parts.left : out.parts.right).push_back(v);
  out.subgraph = Graph::from_edges(n, crossing);
  return out;
}

// Maximal induced subgraph of minimum degree >= min_deg (possibly empty).
inline Subgraph min_degree_core(const Graph& g, std::size_t min_deg) {
  if (min_deg < 1) throw precondition_error("min_degree_core needs a degree floor >= 1");
  const std::size_t n = g.order();
  std::vector<std::size_t> deg(n);
  std::vector<char> removed(n, 0);
  std::vector<vertex> stack;
  for (vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] < min_deg) {
      removed[v] = 1;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    vertex v = stack.back();
    stack.pop_back();
    for (vertex w : g.neighbors(v)) {
      if (removed[w]) continue;
      if (--deg[w] < min_deg) {
        removed[w] = 1;
        stack.push_back(w);
      }
    }
  }
  std::vector<vertex> keep;
  for (vertex v = 0; v < n; ++v)
    if (!removed[v]) keep.push_back(v);
  return induced_subgraph(g, keep);
}

// Largest floor with a nonempty core, i.e. the degeneracy.
inline std::size_t degeneracy(const Graph& g) {
  std::size_t lo = 0, hi = g.order();
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    if (min_degree_core(g, mid).graph.order() > 0)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

// ---------------------------------------------------------------------------

struct CycleCert {
  std::vector<vertex> vertices;
  std::size_t length() const noexcept { return vertices.size(); }
  friend bool operator==(const CycleCert&, const CycleCert&) = default;
};

enum class CycleDefect { none, length_mismatch, too_short, vertex_out_of_range, repeated_vertex, missing_edge };

inline Verdict<CycleDefect> verify_cycle(const Graph& g, const CycleCert& c, std::size_t expected_len) {
  using V = Verdict<CycleDefect>;
  const auto& vs = c.vertices;
  if (vs.size() != expected_len)
    return V::fail(CycleDefect::length_mismatch,
                   "length " + std::to_string(vs.size()) + " != " + std::to_string(expected_len));
  if (vs.size() < 3) return V::fail(CycleDefect::too_short, "a cycle needs at least 3 vertices");
  for (vertex v : vs)
    if (v >= g.order()) return V::fail(CycleDefect::vertex_out_of_range, "vertex " + std::to_string(v));
  auto sorted = vs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    return V::fail(CycleDefect::repeated_vertex, "vertices are not distinct");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    vertex a = vs[i], b = vs[(i + 1) % vs.size()];
    if (!g.has_edge(a, b))
      return V::fail(CycleDefect::missing_edge, "(" + std::to_string(a) + "," + std::to_string(b) + ") is not an edge");
  }
  return V::pass();
}

}  // namespace evencycle
