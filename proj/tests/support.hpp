#pragma once
// Deliberately naive reference implementations used only by the tests. They
// share no code with the library searches they check.

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include <evencycle/graph.hpp>

namespace testsupport {

using evencycle::Graph;
using evencycle::vertex;

inline bool adjacent(const Graph& g, vertex a, vertex b) {
  for (vertex w : g.neighbors(a))
    if (w == b) return true;
  return false;
}

// Any L-subset whose vertices can be ordered into a cycle (all orderings tried).
inline bool naive_has_cycle(const Graph& g, std::size_t L) {
  const std::size_t n = g.order();
  if (L < 3 || L > n) return false;
  std::vector<int> pick(n, 0);
  std::fill(pick.end() - std::ptrdiff_t(L), pick.end(), 1);
  do {
    std::vector<vertex> s;
    for (vertex v = 0; v < n; ++v)
      if (pick[v]) s.push_back(v);
    do {
      bool ok = true;
      for (std::size_t i = 0; i < L && ok; ++i) ok = adjacent(g, s[i], s[(i + 1) % L]);
      if (ok) return true;
    } while (std::next_permutation(s.begin() + 1, s.end()));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return false;
}

// Calls f on every closed simple walk from every start in both directions
// (each cycle is reported 2L times). Stops when f returns true.
inline bool for_each_cycle(const Graph& g, const std::function<bool(const std::vector<vertex>&)>& f) {
  const std::size_t n = g.order();
  std::vector<vertex> path;
  std::vector<char> used(n, 0);
  std::function<bool()> go = [&]() {
    for (vertex w : g.neighbors(path.back())) {
      if (w == path.front() && path.size() >= 3) {
        if (f(path)) return true;
        continue;
      }
      if (used[w]) continue;
      used[w] = 1;
      path.push_back(w);
      if (go()) return true;
      path.pop_back();
      used[w] = 0;
    }
    return false;
  };
  for (vertex s = 0; s < n; ++s) {
    path = {s};
    used.assign(n, 0);
    used[s] = 1;
    if (go()) return true;
  }
  return false;
}

inline bool has_chord(const Graph& g, const std::vector<vertex>& c) {
  const std::size_t L = c.size();
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = i + 2; j < L; ++j) {
      if (i == 0 && j == L - 1) continue;
      if (adjacent(g, c[i], c[j])) return true;
    }
  return false;
}

inline bool naive_theta_exists(const Graph& g, unsigned k) {
  return for_each_cycle(g, [&](const std::vector<vertex>& c) { return c.size() >= 2 * k && has_chord(g, c); });
}

// layer[v] in {0 (outside), 1, 2, 3}
inline bool naive_well_placed_exists(const Graph& g, const std::vector<int>& layer, unsigned k) {
  return for_each_cycle(g, [&](const std::vector<vertex>& c) {
    for (vertex v : c)
      if (layer[v] == 0) return false;
    if (c.size() < 2 * k || !has_chord(g, c)) return false;
    std::set<vertex> on(c.begin(), c.end());
    for (vertex v : c) {
      if (layer[v] != 2) continue;
      bool ok = false;
      for (vertex w : g.neighbors(v))
        if (layer[w] == 1 && !on.count(w)) ok = true;
      if (!ok) return false;
    }
    return true;
  });
}

inline std::size_t brute_max_cut(const Graph& g) {
  std::size_t best = 0;
  const std::size_t n = g.order();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    std::size_t cut = 0;
    for (auto [u, v] : g.edges()) cut += ((m >> u) & 1) != ((m >> v) & 1);
    best = std::max(best, cut);
  }
  return best;
}

}  // namespace testsupport
