#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "graph.hpp"
#include "random.hpp"

namespace evencycle {

// ---------------------------------------------------------------------------
// Fixed-length cycle search.

namespace detail {

struct CycleSearch {
  const Graph& g;
  std::size_t length;
  vertex start = 0;
  std::vector<std::size_t> dist;  // distance to start inside vertices >= start
  std::vector<char> on_path;
  std::vector<vertex> path;

  bool extend() {
    vertex end = path.back();
    const std::size_t used = path.size() - 1;  // edges so far
    if (path.size() == length) return path[1] < end && g.has_edge(end, start);
    for (vertex w : g.neighbors(end)) {
      if (w <= start || on_path[w]) continue;
      // path gets used+1 edges, and needs dist[w] more to close.
      if (dist[w] > length - (used + 1)) continue;
      path.push_back(w);
      on_path[w] = 1;
      if (extend()) return true;
      on_path[w] = 0;
      path.pop_back();
    }
    return false;
  }
};

}  // namespace detail

// A simple cycle of exactly `length` vertices, or none. The cycle returned is
// the lexicographically least one written from its smallest vertex, with the
// second vertex smaller than the last.
inline std::optional<CycleCert> contains_cycle(const Graph& g, std::size_t length) {
  if (length < 3) throw precondition_error("cycle length must be at least 3");
  const std::size_t n = g.order();
  constexpr std::size_t inf = ~std::size_t{0} / 2;
  detail::CycleSearch search{g, length, 0, {}, {}, {}};
  search.on_path.assign(n, 0);
  for (vertex s = 0; s + length <= n; ++s) {
    search.start = s;
    search.dist.assign(n, inf);
    search.dist[s] = 0;
    std::deque<vertex> queue{s};
    while (!queue.empty()) {
      vertex u = queue.front();
      queue.pop_front();
      for (vertex w : g.neighbors(u))
        if (w > s && search.dist[w] == inf) {
          search.dist[w] = search.dist[u] + 1;
          queue.push_back(w);
        }
    }
    search.path = {s};
    search.on_path[s] = 1;
    bool found = search.extend();
    search.on_path[s] = 0;
    for (vertex v : search.path) search.on_path[v] = 0;
    if (found) return CycleCert{search.path};
  }
  return std::nullopt;
}

namespace detail {

// Subset DP: reach[mask] = endpoints of simple paths from the smallest vertex
// of mask covering exactly mask. Independent of the DFS search above.
inline bool has_cycle_subset_dp(std::span<const std::uint32_t> adj, std::size_t n, std::size_t length) {
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint32_t> reach(std::size_t{1} << n);
  for (std::size_t s = 0; s + length <= n; ++s) {
    const std::uint32_t allowed = full & ~((1u << s) - 1);
    std::fill(reach.begin(), reach.end(), 0);
    reach[std::size_t{1} << s] = 1u << s;
    for (std::uint32_t mask = 1u << s; mask <= full; ++mask) {
      if ((mask & ~allowed) || !(mask >> s & 1)) continue;
      const std::uint32_t ends = reach[mask];
      if (!ends) continue;
      if (std::size_t(__builtin_popcount(mask)) == length) {
        for (std::uint32_t e = ends; e; e &= e - 1)
          if (adj[__builtin_ctz(e)] & (1u << s)) return true;
        continue;
      }
      for (std::uint32_t e = ends; e; e &= e - 1)
        for (std::uint32_t f = adj[__builtin_ctz(e)] & allowed & ~mask; f; f &= f - 1)
          reach[mask | (1u << __builtin_ctz(f))] |= 1u << __builtin_ctz(f);
    }
  }
  return false;
}

inline Graph graph_from_masks(std::span<const std::uint32_t> adj, std::size_t n) {
  std::vector<edge> es;
  for (vertex u = 0; u < n; ++u)
    for (vertex v = u + 1; v < n; ++v)
      if (adj[u] & (1u << v)) es.emplace_back(u, v);
  return Graph::from_edges(n, es);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// ex(n, C_2k) by exhaustive search.

struct ExResult {
  std::size_t n = 0;
  unsigned k = 0;
  std::size_t max_edges = 0;
  Graph witness;
};

struct ExOptions {
  unsigned threads = 1;
  std::uint64_t node_budget = 4'000'000'000ull;
};

// Every graph on n <= 6 vertices; used to cross-check ex_brute.
inline ExResult ex_naive(std::size_t n, unsigned k) {
  if (k < 2) throw precondition_error("k must be at least 2");
  if (n < 1 || n > 6) throw budget_exceeded("ex_naive enumerates all graphs and is limited to n <= 6");
  std::vector<edge> pairs;
  for (vertex u = 0; u < n; ++u)
    for (vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::size_t best = 0;
  std::vector<std::uint32_t> best_adj(n, 0), adj(n);
  for (std::uint64_t sel = 0; sel < (std::uint64_t{1} << pairs.size()); ++sel) {
    const auto count = std::size_t(__builtin_popcountll(sel));
    if (count <= best && sel) continue;
    std::fill(adj.begin(), adj.end(), 0);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (sel >> i & 1) {
        adj[pairs[i].first] |= 1u << pairs[i].second;
        adj[pairs[i].second] |= 1u << pairs[i].first;
      }
    if (detail::has_cycle_subset_dp(adj, n, 2 * k)) continue;
    best = count;
    best_adj = adj;
  }
  return {n, k, best, detail::graph_from_masks(best_adj, n)};
}

namespace detail {

// Branch and bound over labelled graphs. Without loss of generality vertex 0
// has the maximum degree `cap` and N(0) = {1..cap}; every other vertex then has
// degree <= cap. One shard per cap value.
class ExShard {
 public:
  ExShard(std::size_t n, unsigned k, std::size_t cap, std::size_t beat, std::uint64_t budget)
      : n_(n), path_edges_(2 * k - 1), cap_(cap), best_(beat), budget_(budget), adj_(n, 0), deg_(n, 0) {
    for (vertex v = 1; v <= cap; ++v) link(0, v);
    for (vertex u = 1; u < n; ++u)
      for (vertex v = u + 1; v < n; ++v) pairs_.emplace_back(u, v);
  }

  // Max edge count found that beats `beat`, with its adjacency; nullopt if none does.
  std::optional<std::pair<std::size_t, std::vector<std::uint32_t>>> run() {
    search(0, cap_);
    if (best_adj_.empty()) return std::nullopt;
    return std::make_pair(best_, best_adj_);
  }

  std::uint64_t nodes() const { return nodes_; }
  bool exhausted() const { return nodes_ > budget_; }

 private:
  void link(vertex u, vertex v) {
    adj_[u] |= 1u << v;
    adj_[v] |= 1u << u;
    ++deg_[u];
    ++deg_[v];
  }
  void unlink(vertex u, vertex v) {
    adj_[u] &= ~(1u << v);
    adj_[v] &= ~(1u << u);
    --deg_[u];
    --deg_[v];
  }

  // Simple path with exactly `left` edges from u to target, avoiding `used`.
  bool path_of_length(vertex u, vertex target, std::size_t left, std::uint32_t used) const {
    if (left == 1) return adj_[u] & (1u << target);
    for (std::uint32_t f = adj_[u] & ~used & ~(1u << target); f; f &= f - 1) {
      vertex w = vertex(__builtin_ctz(f));
      if (path_of_length(w, target, left - 1, used | (1u << w))) return true;
    }
    return false;
  }

  bool closes_cycle(vertex u, vertex v) const { return path_of_length(u, v, path_edges_, 1u << u); }

  std::size_t upper_bound(std::size_t from, std::size_t edges) const {
    std::size_t open = 0, slack = 0;
    for (std::size_t i = from; i < pairs_.size(); ++i)
      if (deg_[pairs_[i].first] < cap_ && deg_[pairs_[i].second] < cap_) ++open;
    for (vertex v = 1; v < n_; ++v) slack += cap_ - deg_[v];
    return edges + std::min(open, slack / 2);
  }

  void search(std::size_t from, std::size_t edges) {
    if (++nodes_ > budget_) return;
    if (edges > best_) {
      best_ = edges;
      best_adj_ = adj_;
    }
    if (from == pairs_.size() || upper_bound(from, edges) <= best_) return;
    auto [u, v] = pairs_[from];
    if (deg_[u] < cap_ && deg_[v] < cap_ && !closes_cycle(u, v)) {
      link(u, v);
      search(from + 1, edges + 1);
      unlink(u, v);
    }
    search(from + 1, edges);
  }

  std::size_t n_, path_edges_, cap_, best_;
  std::uint64_t budget_, nodes_ = 0;
  std::vector<std::uint32_t> adj_, best_adj_;
  std::vector<std::size_t> deg_;
  std::vector<std::pair<vertex, vertex>> pairs_;
};

}  // namespace detail

inline constexpr std::size_t ex_brute_max_n = 12;

// Exact ex(n, C_2k) with one witness graph. Shards (one per maximum degree)
// are independent and max-merged; a greedy maximal C_2k-free graph seeds the
// lower bound.
inline ExResult ex_brute(std::size_t n, unsigned k, const ExOptions& opt = {}) {
  if (k < 2) throw precondition_error("k must be at least 2");
  if (n < 1) throw precondition_error("n must be at least 1");
  if (n < 2 * k) {
    std::vector<std::uint32_t> adj(n);
    for (vertex v = 0; v < n; ++v) adj[v] = ((1u << n) - 1) & ~(1u << v);
    return {n, k, n * (n - 1) / 2, detail::graph_from_masks(adj, n)};
  }
  if (n > ex_brute_max_n) throw budget_exceeded("ex_brute is limited to n <= " + std::to_string(ex_brute_max_n));

  // Greedy seed: add pairs in lexicographic order unless they close a C_2k.
  std::vector<std::uint32_t> seed(n, 0);
  std::size_t seed_edges = 0;
  for (vertex u = 0; u < n; ++u)
    for (vertex v = u + 1; v < n; ++v) {
      seed[u] |= 1u << v;
      seed[v] |= 1u << u;
      if (detail::has_cycle_subset_dp(seed, n, 2 * k)) {
        seed[u] &= ~(1u << v);
        seed[v] &= ~(1u << u);
      } else {
        ++seed_edges;
      }
    }

  std::vector<std::size_t> caps;
  for (std::size_t cap = n - 1; cap >= 1; --cap)
    if (n * cap / 2 > seed_edges) caps.push_back(cap);

  std::mutex merge;
  std::size_t best = seed_edges;
  std::vector<std::uint32_t> best_adj = seed;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> over_budget{false};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < caps.size();) {
      detail::ExShard shard(n, k, caps[i], seed_edges, opt.node_budget);
      auto found = shard.run();
      if (shard.exhausted()) over_budget = true;
      std::lock_guard lock(merge);
      if (found && found->first > best) {
        best = found->first;
        best_adj = found->second;
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, unsigned(caps.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (over_budget) throw budget_exceeded("ex_brute node budget exhausted");
  return {n, k, best, detail::graph_from_masks(best_adj, n)};
}

// ---------------------------------------------------------------------------
// Generators. Vertex numbering and draw order are part of the contract so that
// a seed names the same graph in any implementation.

// Left side 0..n1-1, right side n1..n1+n2-1; pairs drawn left-major.
inline Graph gen_random_bipartite(std::size_t n1, std::size_t n2, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw precondition_error("probability must lie in [0, 1]");
  SeededRng rng(seed);
  std::vector<edge> es;
  for (vertex u = 0; u < n1; ++u)
    for (vertex v = 0; v < n2; ++v)
      if (rng.bernoulli(p)) es.emplace_back(u, vertex(n1 + v));
  return Graph::from_edges(n1 + n2, es);
}

// Every left vertex picks delta distinct right neighbours, then every right
// vertex picks delta distinct left neighbours; the union is returned.
inline Graph gen_min_degree_bipartite(std::size_t n1, std::size_t n2, std::size_t delta, std::uint64_t seed) {
  if (delta > std::min(n1, n2))
    throw precondition_error("min degree " + std::to_string(delta) + " is infeasible with sides " +
                             std::to_string(n1) + ", " + std::to_string(n2));
  SeededRng rng(seed);
  std::vector<edge> es;
  for (vertex u = 0; u < n1; ++u)
    for (auto v : rng.sample(n2, delta)) es.emplace_back(u, vertex(n1 + v));
  for (vertex v = 0; v < n2; ++v)
    for (auto u : rng.sample(n1, delta)) es.emplace_back(vertex(u), vertex(n1 + v));
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  return Graph::from_edges(n1 + n2, es);
}

inline constexpr unsigned polarity_max_q = 13;

// Polarity graph of PG(2, q), q prime. Points are normalised vectors listed as
// (0,0,1), (0,1,z) for z = 0..q-1, then (1,y,z) in lexicographic order;
// u ~ v iff u.v = 0 (mod q) and u != v.
inline Graph gen_polarity_graph(unsigned q) {
  auto prime = [](unsigned x) {
    if (x < 2) return false;
    for (unsigned p = 2; p * p <= x; ++p)
      if (x % p == 0) return false;
    return true;
  };
  if (!prime(q)) throw precondition_error(std::to_string(q) + " is not prime");
  if (q > polarity_max_q) throw precondition_error("q must be at most " + std::to_string(polarity_max_q));
  std::vector<std::array<unsigned, 3>> pts{{0, 0, 1}};
  for (unsigned z = 0; z < q; ++z) pts.push_back({0, 1, z});
  for (unsigned y = 0; y < q; ++y)
    for (unsigned z = 0; z < q; ++z) pts.push_back({1, y, z});
  std::vector<edge> es;
  for (vertex a = 0; a < pts.size(); ++a)
    for (vertex b = a + 1; b < pts.size(); ++b) {
      unsigned dot = pts[a][0] * pts[b][0] + pts[a][1] * pts[b][1] + pts[a][2] * pts[b][2];
      if (dot % q == 0) es.emplace_back(a, b);
    }
  return Graph::from_edges(pts.size(), es);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<edge> es;
  for (vertex u = 0; u < n; ++u)
    for (vertex v = u + 1; v < n; ++v) es.emplace_back(u, v);
  return Graph::from_edges(n, es);
}

// Left side 0..a-1, right side a..a+b-1.
inline Graph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<edge> es;
  for (vertex u = 0; u < a; ++u)
    for (vertex v = 0; v < b; ++v) es.emplace_back(u, vertex(a + v));
  return Graph::from_edges(a + b, es);
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<edge> es;
  for (vertex v = 0; v < n; ++v) es.emplace_back(std::min<vertex>(v, vertex((v + 1) % n)), std::max<vertex>(v, vertex((v + 1) % n)));
  return Graph::from_edges(n, es);
}

inline Graph path_graph(std::size_t n) {
  std::vector<edge> es;
  for (vertex v = 0; v + 1 < n; ++v) es.emplace_back(v, v + 1);
  return Graph::from_edges(n, es);
}

// Centre 0, leaves 1..leaves.
inline Graph star_graph(std::size_t leaves) {
  std::vector<edge> es;
  for (vertex v = 1; v <= leaves; ++v) es.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, es);
}

inline Graph petersen_graph() {
  std::vector<edge> es;
  for (vertex i = 0; i < 5; ++i) {
    es.emplace_back(std::min<vertex>(i, (i + 1) % 5), std::max<vertex>(i, (i + 1) % 5));
    es.emplace_back(i, i + 5);
    es.emplace_back(std::min<vertex>(5 + i, 5 + (i + 2) % 5), std::max<vertex>(5 + i, 5 + (i + 2) % 5));
  }
  return Graph::from_edges(10, es);
}

// Vertex v > 0 attaches to a uniform earlier vertex.
inline Graph random_tree(std::size_t n, std::uint64_t seed) {
  SeededRng rng(seed);
  std::vector<edge> es;
  for (vertex v = 1; v < n; ++v) es.emplace_back(vertex(rng.uniform_below(v)), v);
  return Graph::from_edges(n, es);
}

// G(n, p), pairs drawn in lexicographic order.
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  SeededRng rng(seed);
  std::vector<edge> es;
  for (vertex u = 0; u < n; ++u)
    for (vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) es.emplace_back(u, v);
  return Graph::from_edges(n, es);
}

}  // namespace evencycle
