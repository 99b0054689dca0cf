#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graph.hpp"

namespace evencycle {

struct ExplorationParams {
  unsigned k = 2;        // half the forbidden cycle length
  std::uint64_t d = 1;   // density parameter
  std::uint64_t delta = 8;  // degree-cap multiplier

  static ExplorationParams with_default_delta(unsigned k, std::uint64_t d) {
    return {k, d, std::uint64_t(k) * k * k};
  }

  std::uint64_t cap() const { return delta * d; }

  void validate() const {
    if (k < 2) throw precondition_error("k must be at least 2");
    if (d < 1) throw precondition_error("d must be at least 1");
    if (delta < 1) throw precondition_error("delta must be at least 1");
  }
};

enum class LevelTag { normal, big };

inline const char* to_string(LevelTag t) { return t == LevelTag::big ? "big" : "normal"; }

// One step of the capped exploration. All vertex lists are sorted.
struct Level {
  std::size_t index = 0;
  std::vector<vertex> candidates;  // unexplored neighbours of the previous level
  std::vector<vertex> big_set;     // candidates with more than cap unexplored neighbours
  std::vector<vertex> small_set;
  std::vector<vertex> chosen;      // the level itself
  LevelTag tag = LevelTag::normal;
};

struct Exploration {
  vertex root = 0;
  ExplorationParams params;
  std::vector<Level> levels;        // 0..depth
  std::vector<vertex> frontier;     // candidate set of step depth+1
  std::vector<std::int64_t> level_of;  // -1 for unexplored vertices
  std::vector<vertex> parent;       // least-id neighbour one level up; root for the root

  std::size_t depth() const { return levels.size() - 1; }

  // Candidate set of step i, for 0 <= i <= depth+1.
  const std::vector<vertex>& candidates(std::size_t i) const {
    return i < levels.size() ? levels[i].candidates : frontier;
  }
  const std::vector<vertex>& level(std::size_t i) const { return levels.at(i).chosen; }

  // root-ward chain v, parent(v), ..., root.
  std::vector<vertex> chain_to_root(vertex v) const {
    std::vector<vertex> out{v};
    while (out.back() != root) out.push_back(parent[out.back()]);
    return out;
  }
};

// Breadth-first exploration that only marks the chosen level as explored.
// Unexplored-neighbour counts at step i use the explored set as of the start of
// step i; vertices dropped as big members of a normal level stay unexplored.
inline Exploration explore(const Graph& g, vertex root, const ExplorationParams& p, std::size_t depth) {
  p.validate();
  if (root >= g.order()) throw precondition_error("root " + std::to_string(root) + " is not a vertex");
  if (depth < 1) throw precondition_error("depth must be at least 1");
  const std::size_t n = g.order();
  Exploration e;
  e.root = root;
  e.params = p;
  e.level_of.assign(n, -1);
  e.parent.assign(n, root);
  std::vector<char> explored(n, 0);

  Level zero;
  zero.candidates = zero.small_set = zero.chosen = {root};
  e.levels.push_back(zero);
  explored[root] = 1;
  e.level_of[root] = 0;

  auto candidates_after = [&](const std::vector<vertex>& prev) {
    std::vector<char> mark(n, 0);
    std::vector<vertex> out;
    for (vertex u : prev)
      for (vertex w : g.neighbors(u))
        if (!explored[w] && !mark[w]) {
          mark[w] = 1;
          out.push_back(w);
        }
    std::sort(out.begin(), out.end());
    return out;
  };

  for (std::size_t i = 1; i <= depth; ++i) {
    Level lv;
    lv.index = i;
    lv.candidates = candidates_after(e.levels[i - 1].chosen);
    for (vertex v : lv.candidates) {
      std::uint64_t unexplored = 0;
      for (vertex w : g.neighbors(v))
        if (!explored[w]) ++unexplored;
      (unexplored > p.cap() ? lv.big_set : lv.small_set).push_back(v);
    }
    // big iff |big| > |candidates| / (2k)
    const bool big = 2 * std::uint64_t(p.k) * lv.big_set.size() > lv.candidates.size();
    lv.tag = big ? LevelTag::big : LevelTag::normal;
    lv.chosen = big ? lv.candidates : lv.small_set;
    VertexMask prev(n, e.levels[i - 1].chosen);
    for (vertex v : lv.chosen) {
      explored[v] = 1;
      e.level_of[v] = std::int64_t(i);
      for (vertex w : g.neighbors(v))
        if (prev[w]) {
          e.parent[v] = w;
          break;
        }
    }
    e.levels.push_back(std::move(lv));
  }
  e.frontier = candidates_after(e.levels[depth].chosen);
  return e;
}

// ---------------------------------------------------------------------------
// Audits.

struct MinDegreeViolation {
  std::size_t i = 0;  // v lies in level i+1
  vertex v = 0;
  std::size_t count = 0;
};

struct MinDegreeAudit {
  std::size_t min_degree = 0;
  bool hypotheses_satisfied = true;
  std::vector<std::string> unmet;
  std::size_t checked = 0;
  std::vector<MinDegreeViolation> violations;
};

// For every v in level i+1, counts neighbours in level i plus the candidate set
// of step i+2; on bipartite graphs of minimum degree >= delta with delta <= cap
// every count is at least delta.
inline MinDegreeAudit audit_min_degree(const Graph& g, const Exploration& e, std::size_t delta) {
  MinDegreeAudit a;
  a.min_degree = delta;
  if (!is_bipartite(g)) a.unmet.push_back("graph is not bipartite");
  if (g.min_degree() < delta)
    a.unmet.push_back("minimum degree " + std::to_string(g.min_degree()) + " < " + std::to_string(delta));
  if (delta > e.params.cap())
    a.unmet.push_back("delta " + std::to_string(delta) + " exceeds cap " + std::to_string(e.params.cap()));
  a.hypotheses_satisfied = a.unmet.empty();
  for (std::size_t i = 0; i + 1 <= e.depth(); ++i) {
    std::vector<vertex> target = e.level(i);
    const auto& next = e.candidates(i + 2);
    target.insert(target.end(), next.begin(), next.end());
    VertexMask in_target(g.order(), target);
    for (vertex v : e.level(i + 1)) {
      std::size_t count = 0;
      for (vertex w : g.neighbors(v))
        if (in_target[w]) ++count;
      ++a.checked;
      if (count < delta) a.violations.push_back({i, v, count});
    }
  }
  return a;
}

// The five level-growth inequalities checked at index i:
//   right_degree      e(V_i, V_{i+1})  >= d |V_i|
//   left_degree       e(V_i, V_{i+1})  <= 2k |V_{i+1}|
//   left_degree_cand  e(V_i, V'_{i+1}) <= 2k |V'_{i+1}|
//   growth            |V_{i+1}| >= d |V_i| / (2k)
//   two_step_growth   |V_{i+1}| >= d^2 |V_{i-1}| / (400 k ln k)   (i >= 1)
enum class GrowthCheck { right_degree, left_degree, left_degree_cand, growth, two_step_growth };

// Identifiers used in the report schema.
inline const char* wire_id(GrowthCheck c) {
  switch (c) {
    case GrowthCheck::right_degree: return "(5)";
    case GrowthCheck::left_degree: return "(6)";
    case GrowthCheck::left_degree_cand: return "(7)";
    case GrowthCheck::growth: return "(8)";
    case GrowthCheck::two_step_growth: return "(9)";
  }
  return "?";
}

struct GrowthRow {
  GrowthCheck check;
  std::size_t i = 0;
  double lhs = 0, rhs = 0;
  bool holds = false;
};

struct GrowthAudit {
  std::vector<GrowthRow> rows;
  std::vector<std::pair<std::size_t, LevelTag>> level_sizes;  // (|V_i|, tag) per level

  std::size_t failures() const {
    std::size_t f = 0;
    for (const auto& r : rows) f += !r.holds;
    return f;
  }
};

inline GrowthAudit audit_growth(const Graph& g, const Exploration& e, const ExplorationParams& p) {
  GrowthAudit a;
  for (const auto& lv : e.levels) a.level_sizes.emplace_back(lv.chosen.size(), lv.tag);
  const std::uint64_t k = p.k, d = p.d;
  for (std::size_t i = 0; i < e.depth(); ++i) {
    const std::uint64_t vi = e.level(i).size(), vnext = e.level(i + 1).size(), cand = e.candidates(i + 1).size();
    const std::uint64_t e_next = edges_between(g, e.level(i), e.level(i + 1));
    const std::uint64_t e_cand = edges_between(g, e.level(i), e.candidates(i + 1));
    a.rows.push_back({GrowthCheck::right_degree, i, double(e_next), double(d * vi), e_next >= d * vi});
    a.rows.push_back({GrowthCheck::left_degree, i, double(e_next), double(2 * k * vnext), e_next <= 2 * k * vnext});
    a.rows.push_back({GrowthCheck::left_degree_cand, i, double(e_cand), double(2 * k * cand), e_cand <= 2 * k * cand});
    a.rows.push_back({GrowthCheck::growth, i, double(vnext), double(d * vi) / double(2 * k), 2 * k * vnext >= d * vi});
    if (i >= 1) {
      const long double rhs = (long double)(d) * d * e.level(i - 1).size() / (400.0L * k * std::log((long double)k));
      a.rows.push_back({GrowthCheck::two_step_growth, i, double(vnext), double(rhs), (long double)vnext >= rhs});
    }
  }
  return a;
}

inline nlohmann::json to_json(const GrowthAudit& a) {
  nlohmann::json j;
  j["levels"] = nlohmann::json::array();
  for (std::size_t i = 0; i < a.level_sizes.size(); ++i)
    j["levels"].push_back({{"i", i}, {"size", a.level_sizes[i].first}, {"tag", to_string(a.level_sizes[i].second)}});
  j["inequalities"] = nlohmann::json::array();
  for (const auto& r : a.rows)
    j["inequalities"].push_back({{"id", wire_id(r.check)}, {"i", r.i}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}});
  return j;
}

inline nlohmann::json to_json(const MinDegreeAudit& a) {
  nlohmann::json j{{"delta", a.min_degree},
                   {"hypotheses_satisfied", a.hypotheses_satisfied},
                   {"unmet", a.unmet},
                   {"checked", a.checked},
                   {"violations", nlohmann::json::array()}};
  for (const auto& v : a.violations) j["violations"].push_back({{"i", v.i}, {"v", v.v}, {"count", v.count}});
  return j;
}

}  // namespace evencycle
