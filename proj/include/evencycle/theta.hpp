#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "graph.hpp"

namespace evencycle {

// A cycle of length at least 2k together with a chord.
struct ThetaGraph {
  std::vector<vertex> cycle;
  edge chord{0, 0};

  std::size_t length() const noexcept { return cycle.size(); }
  std::vector<vertex> vertices() const { return sorted_unique(cycle); }
  friend bool operator==(const ThetaGraph&, const ThetaGraph&) = default;
  friend auto operator<=>(const ThetaGraph& a, const ThetaGraph& b) {
    if (auto c = a.cycle <=> b.cycle; c != 0) return c;
    return a.chord <=> b.chord;
  }
};

enum class ThetaDefect { none, bad_cycle, too_short, chord_off_cycle, chord_is_cycle_edge, chord_not_edge };

inline Verdict<ThetaDefect> verify_theta(const Graph& g, const ThetaGraph& t, unsigned k) {
  using V = Verdict<ThetaDefect>;
  if (auto c = verify_cycle(g, CycleCert{t.cycle}, t.cycle.size()); !c)
    return V::fail(ThetaDefect::bad_cycle, c.detail);
  if (t.cycle.size() < 2 * std::size_t(k))
    return V::fail(ThetaDefect::too_short,
                   "cycle length " + std::to_string(t.cycle.size()) + " < " + std::to_string(2 * k));
  const auto [a, b] = t.chord;
  auto ia = std::find(t.cycle.begin(), t.cycle.end(), a), ib = std::find(t.cycle.begin(), t.cycle.end(), b);
  if (ia == t.cycle.end() || ib == t.cycle.end() || a == b)
    return V::fail(ThetaDefect::chord_off_cycle, "chord endpoints must be two cycle vertices");
  const std::size_t L = t.cycle.size(), gap = std::size_t(std::abs(ia - ib));
  if (gap == 1 || gap == L - 1) return V::fail(ThetaDefect::chord_is_cycle_edge, "chord joins consecutive cycle vertices");
  if (!g.has_edge(a, b)) return V::fail(ThetaDefect::chord_not_edge, "chord is not an edge of the graph");
  return V::pass();
}

inline nlohmann::json to_json(const ThetaGraph& t) {
  return {{"cycle", t.cycle}, {"chord", {t.chord.first, t.chord.second}}};
}

inline ThetaGraph theta_from_json(const nlohmann::json& j) {
  ThetaGraph t;
  t.cycle = j.at("cycle").get<std::vector<vertex>>();
  auto c = j.at("chord").get<std::vector<vertex>>();
  if (c.size() != 2) throw parse_error(0, "chord must have two endpoints");
  t.chord = {c[0], c[1]};
  return t;
}

// Least chord (a < b, lexicographic) of a cycle, if any.
inline std::optional<edge> least_chord(const Graph& g, const std::vector<vertex>& cycle) {
  const std::size_t L = cycle.size();
  std::map<vertex, std::size_t> pos;
  for (std::size_t i = 0; i < L; ++i) pos[cycle[i]] = i;
  std::size_t deg_sum = 0;
  for (const auto& entry : pos) deg_sum += g.degree(entry.first);
  if (deg_sum > L * L) {  // hubs on a short cycle: test pairs instead of scanning neighbourhoods
    for (auto ia = pos.begin(); ia != pos.end(); ++ia)
      for (auto ib = std::next(ia); ib != pos.end(); ++ib) {
        std::size_t gap = ia->second > ib->second ? ia->second - ib->second : ib->second - ia->second;
        if (gap != 1 && gap != L - 1 && g.has_edge(ia->first, ib->first)) return edge{ia->first, ib->first};
      }
    return std::nullopt;
  }
  for (auto [a, ia] : pos)
    for (vertex b : g.neighbors(a)) {
      if (b <= a) continue;
      auto it = pos.find(b);
      if (it == pos.end()) continue;
      std::size_t gap = ia > it->second ? ia - it->second : it->second - ia;
      if (gap != 1 && gap != L - 1) return edge{a, b};
    }
  return std::nullopt;
}

inline constexpr std::size_t exhaustive_theta_max_n = 20;

namespace detail {

// Enumerates cycles of length >= min_len in canonical form (least vertex first,
// second vertex smaller than the last) in lexicographic order, and returns the
// first one accepted by `accept`. DFS over increasing neighbour ids visits
// paths in lexicographic order and reports a cycle before its extensions, so
// the first hit is the lexicographically least accepted cycle.
class OrderedCycleSearch {
 public:
  using Accept = std::function<bool(const std::vector<vertex>&)>;

  OrderedCycleSearch(const Graph& g, std::size_t min_len, Accept accept, std::uint64_t budget)
      : g_(g), min_len_(min_len), accept_(std::move(accept)), budget_(budget), on_path_(g.order(), 0) {}

  std::optional<std::vector<vertex>> run() {
    for (vertex s = 0; s < g_.order(); ++s) {
      if (g_.order() - s < min_len_) break;
      start_ = s;
      path_ = {s};
      on_path_[s] = 1;
      bool hit = dfs();
      on_path_[s] = 0;
      if (hit) return path_;
    }
    return std::nullopt;
  }

 private:
  bool dfs() {
    if (++nodes_ > budget_) throw budget_exceeded("cycle enumeration exceeded its node budget");
    const vertex u = path_.back();
    for (vertex w : g_.neighbors(u)) {
      if (w < start_) continue;
      if (w == start_) {
        if (path_.size() >= min_len_ && path_.size() >= 3 && path_[1] < u && accept_(path_)) return true;
        continue;
      }
      if (on_path_[w]) continue;
      path_.push_back(w);
      on_path_[w] = 1;
      if (dfs()) return true;
      on_path_[w] = 0;
      path_.pop_back();
    }
    return false;
  }

  const Graph& g_;
  std::size_t min_len_;
  Accept accept_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  vertex start_ = 0;
  std::vector<vertex> path_;
  std::vector<char> on_path_;
};

}  // namespace detail

// Lexicographically least Θ-graph (cycle in canonical form, then least chord).
inline std::optional<ThetaGraph> find_theta_exhaustive(const Graph& g, unsigned k,
                                                       std::size_t max_n = exhaustive_theta_max_n,
                                                       std::uint64_t budget = 200'000'000) {
  if (g.order() > max_n)
    throw precondition_error("exhaustive search is capped at " + std::to_string(max_n) + " vertices");
  std::optional<edge> chord;
  detail::OrderedCycleSearch search(g, 2 * std::size_t(k), [&](const std::vector<vertex>& c) {
    chord = least_chord(g, c);
    return chord.has_value();
  }, budget);
  auto cycle = search.run();
  if (!cycle) return std::nullopt;
  return ThetaGraph{*cycle, *chord};
}

// Maximal-path construction: grow a path from the least vertex by least-id
// unvisited neighbours until stuck. All neighbours of the final endpoint lie on
// the path; in a bipartite graph they sit at every other position, so the
// farthest one closes a cycle of length >= 2k and any third one is a chord.
inline ThetaGraph find_theta_min_degree(const Graph& h, unsigned k) {
  if (k < 3) throw precondition_error("find_theta_min_degree needs k >= 3");
  if (h.order() == 0) throw precondition_error("graph is empty");
  if (!is_bipartite(h)) throw precondition_error("graph is not bipartite");
  for (vertex v = 0; v < h.order(); ++v)
    if (h.degree(v) < k)
      throw precondition_error("vertex " + std::to_string(v) + " has degree " + std::to_string(h.degree(v)) + " < " +
                               std::to_string(k));
  std::vector<std::int64_t> pos(h.order(), -1);
  std::vector<vertex> path{0};
  pos[0] = 0;
  for (;;) {
    const vertex u = path.back();
    auto next = std::find_if(h.neighbors(u).begin(), h.neighbors(u).end(), [&](vertex w) { return pos[w] < 0; });
    if (next == h.neighbors(u).end()) break;
    pos[*next] = std::int64_t(path.size());
    path.push_back(*next);
  }
  const vertex end = path.back();
  const std::size_t last = path.size() - 1;
  std::size_t far = last;
  for (vertex w : h.neighbors(end)) far = std::min(far, std::size_t(pos[w]));
  ThetaGraph t;
  t.cycle.assign(path.begin() + std::ptrdiff_t(far), path.end());
  std::optional<vertex> mid;
  for (vertex w : h.neighbors(end)) {
    const auto p = std::size_t(pos[w]);
    if (p != far && p != last - 1) {
      mid = w;
      break;
    }
  }
  if (!mid || t.cycle.size() < 2 * std::size_t(k))
    throw internal_contradiction("maximal path did not expose a theta graph",
                                 "path length " + std::to_string(path.size()) + ", cycle " +
                                     std::to_string(t.cycle.size()));
  t.chord = {std::min(end, *mid), std::max(end, *mid)};
  return t;
}

// Average degree >= 2k forces a nonempty k-core; search there and lift back.
inline ThetaGraph find_theta_avg_degree(const Graph& h, unsigned k) {
  if (k < 3) throw precondition_error("find_theta_avg_degree needs k >= 3");
  if (!is_bipartite(h)) throw precondition_error("graph is not bipartite");
  // avg degree 2m/n >= 2k  <=>  m >= k n
  if (h.order() == 0 || h.size() < std::size_t(k) * h.order())
    throw precondition_error("average degree " + std::to_string(h.average_degree()) + " < " + std::to_string(2 * k));
  Subgraph core = min_degree_core(h, k);
  if (core.graph.order() == 0)
    throw internal_contradiction("k-core empty despite average degree >= 2k", serialize(h));
  ThetaGraph local = find_theta_min_degree(core.graph, k);
  ThetaGraph t;
  t.cycle = core.lift(local.cycle);
  vertex a = core.parent_of(local.chord.first), b = core.parent_of(local.chord.second);
  t.chord = {std::min(a, b), std::max(a, b)};
  return t;
}

// ---------------------------------------------------------------------------

struct BipartitionVerdict {};  // every length-l path from W ends in W, and W, Z split every edge

using PathOrBipartition = std::variant<std::vector<vertex>, BipartitionVerdict>;

// Lexicographically least simple path of length l inside t (cycle edges plus
// the chord) that starts in W and ends in Z; otherwise the bipartition verdict.
inline PathOrBipartition path_between_parts(const ThetaGraph& t, std::span<const vertex> w_set,
                                            std::span<const vertex> z_set, std::size_t l) {
  const auto verts = t.vertices();
  if (verts.size() != t.cycle.size()) throw precondition_error("theta cycle repeats a vertex");
  auto w = sorted_unique({w_set.begin(), w_set.end()}), z = sorted_unique({z_set.begin(), z_set.end()});
  if (w.empty() || z.empty()) throw precondition_error("both parts must be nonempty");
  std::vector<vertex> both;
  std::set_union(w.begin(), w.end(), z.begin(), z.end(), std::back_inserter(both));
  if (both != verts || w.size() + z.size() != verts.size())
    throw precondition_error("W and Z must partition the theta vertices");
  if (l < 1 || l + 1 > verts.size()) throw precondition_error("path length out of range");

  std::map<vertex, std::vector<vertex>> adj;
  const std::size_t L = t.cycle.size();
  for (std::size_t i = 0; i < L; ++i) {
    vertex a = t.cycle[i], b = t.cycle[(i + 1) % L];
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  adj[t.chord.first].push_back(t.chord.second);
  adj[t.chord.second].push_back(t.chord.first);
  for (auto& [v, ns] : adj) ns = sorted_unique(std::move(ns));

  std::map<vertex, bool> in_z;
  for (vertex v : verts) in_z[v] = std::binary_search(z.begin(), z.end(), v);
  std::vector<vertex> path;
  std::map<vertex, bool> used;
  std::function<bool()> dfs = [&]() {
    if (path.size() == l + 1) return in_z[path.back()];
    for (vertex x : adj[path.back()]) {
      if (used[x]) continue;
      used[x] = true;
      path.push_back(x);
      if (dfs()) return true;
      path.pop_back();
      used[x] = false;
    }
    return false;
  };
  for (vertex s : w) {
    path = {s};
    used.clear();
    used[s] = true;
    if (dfs()) return path;
  }
  for (const auto& [v, ns] : adj)
    for (vertex x : ns)
      if (in_z[v] == in_z[x])
        throw internal_contradiction("no W-to-Z path although W, Z is not a bipartition",
                                     to_json(t).dump() + " l=" + std::to_string(l));
  return BipartitionVerdict{};
}

}  // namespace evencycle
