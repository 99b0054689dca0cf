#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "exploration.hpp"
#include "oracle.hpp"
#include "theta.hpp"
#include "trilayered.hpp"
#include "wellplaced.hpp"

namespace evencycle {

// 80 sqrt(k ln k) n^(1+1/k) + 10 k^2 n.
inline double bound(std::uint64_t n, unsigned k) {
  if (k < 2) throw precondition_error("bound needs k >= 2");
  if (n < 1) throw precondition_error("bound needs n >= 1");
  const double kk = k, nn = double(n);
  return 80.0 * std::sqrt(kk * std::log(kk)) * std::pow(nn, 1.0 + 1.0 / kk) + 10.0 * kk * kk * nn;
}

// Average-degree threshold 20 sqrt(k ln k) n^(1/k) beyond which the levels outgrow n.
inline double degree_threshold(std::uint64_t n, unsigned k) {
  const double kk = k;
  return 20.0 * std::sqrt(kk * std::log(kk)) * std::pow(double(n), 1.0 / kk);
}

// ---------------------------------------------------------------------------
// Cycle extraction.

struct ExtractionTrace {
  std::vector<vertex> y;   // attachment vertices V_i ∩ V(F)
  vertex branch_vertex = 0;  // deepest common ancestor y*
  std::size_t ell = 0;     // its depth
  std::vector<vertex> w;   // Y-descendants of the chosen branch
  std::vector<vertex> p;   // the path inside F
};

namespace detail {

// root_paths[y] = (x, ..., y), length i, internally disjoint from V(F).
inline CycleCert close_through_tree(const Graph& g, const ThetaGraph& f,
                                    const std::map<vertex, std::vector<vertex>>& root_paths, std::size_t i,
                                    unsigned k, ExtractionTrace* trace) {
  ExtractionTrace tr;
  for (const auto& [y, p] : root_paths) tr.y.push_back(y);
  if (tr.y.size() < 2) throw precondition_error("need at least two attachment vertices");
  // Longest common prefix of the root paths ends at y*.
  std::size_t ell = 0;
  const auto& first = root_paths.begin()->second;
  for (;; ++ell) {
    if (ell + 1 >= first.size()) break;
    bool same = true;
    for (const auto& [y, p] : root_paths)
      if (p[ell + 1] != first[ell + 1]) same = false;
    if (!same) break;
  }
  tr.ell = ell;
  tr.branch_vertex = first[ell];
  if (ell >= i) throw internal_contradiction("attachment vertices share a root path", "");
  std::map<vertex, std::vector<vertex>> branches;  // child of y* -> Y-descendants
  for (const auto& [y, p] : root_paths) branches[p[ell + 1]].push_back(y);
  if (branches.size() < 2) throw internal_contradiction("tree does not branch at the common ancestor", "");
  auto pick = branches.begin();
  for (auto it = branches.begin(); it != branches.end(); ++it)
    if (it->second.size() < pick->second.size()) pick = it;
  tr.w = pick->second;
  std::vector<vertex> z;
  const auto fv = f.vertices();
  std::set_difference(fv.begin(), fv.end(), tr.w.begin(), tr.w.end(), std::back_inserter(z));
  const std::int64_t l = 2 * std::int64_t(k) - 2 * std::int64_t(i) + 2 * std::int64_t(ell);
  if (l < 1 || std::size_t(l) + 1 > fv.size())
    throw precondition_error("path length 2k - 2i + 2l = " + std::to_string(l) + " is out of range for this theta");
  auto res = path_between_parts(f, tr.w, z, std::size_t(l));
  if (std::holds_alternative<BipartitionVerdict>(res)) {
    nlohmann::json st{{"theta", to_json(f)}, {"W", tr.w}, {"l", l}, {"i", i}, {"ell", ell}};
    throw internal_contradiction("W, Z form a bipartition of the theta graph", st.dump());
  }
  tr.p = std::get<std::vector<vertex>>(res);
  const vertex wv = tr.p.front(), zv = tr.p.back();
  auto zp = root_paths.find(zv);
  if (zp == root_paths.end()) {
    nlohmann::json st{{"theta", to_json(f)}, {"path", tr.p}};
    throw internal_contradiction("path inside the theta graph ended outside the attachment layer", st.dump());
  }
  const auto& pw = root_paths.at(wv);
  const auto& pz = zp->second;
  // P (w..z), then z's tree path up to y*, then down to w (exclusive).
  CycleCert c{tr.p};
  for (std::size_t j = pz.size() - 2; j > ell; --j) c.vertices.push_back(pz[j]);
  for (std::size_t j = ell; j + 1 < pw.size(); ++j) c.vertices.push_back(pw[j]);
  if (std::size_t(l) + 2 * (i - ell) != 2 * std::size_t(k) || c.length() != 2 * std::size_t(k))
    throw internal_contradiction("extracted cycle has length " + std::to_string(c.length()),
                                 nlohmann::json{{"cycle", c.vertices}}.dump());
  if (auto v = verify_cycle(g, c, 2 * std::size_t(k)); !v)
    throw internal_contradiction("extracted cycle fails verification: " + v.detail,
                                 nlohmann::json{{"cycle", c.vertices}, {"theta", to_json(f)}}.dump());
  if (trace) *trace = std::move(tr);
  return c;
}

}  // namespace detail

// Well-placed Θ in G[V_{i-1}, V_i, V'_{i+1}]: root paths go y -> witness -> parent chain.
inline CycleCert extract_cycle(const Graph& g, const Exploration& e, std::size_t i, const WellPlacedCert& cert,
                               unsigned k, ExtractionTrace* trace = nullptr) {
  if (i < 1 || i + 1 > k) throw precondition_error("extraction needs 1 <= i <= k-1");
  if (i > e.depth()) throw precondition_error("level index beyond the exploration depth");
  Trilayered t = Trilayered::make(std::make_shared<const Graph>(g), e.level(i - 1), e.level(i), e.candidates(i + 1));
  if (auto v = verify_well_placed(t, cert, k); !v)
    throw precondition_error("certificate is not a well-placed theta in the level triple: " + v.detail);
  std::map<vertex, std::vector<vertex>> paths;
  for (vertex y : cert.theta.vertices()) {
    if (t.layer_of(y) != 2) continue;
    auto chain = e.chain_to_root(cert.witnesses.at(y));
    std::vector<vertex> p(chain.rbegin(), chain.rend());
    p.push_back(y);
    paths[y] = std::move(p);
  }
  return detail::close_through_tree(g, cert.theta, paths, i, k, trace);
}

// Θ in G[V_i, V_{i+1}]: root paths are the parent chains of V_i ∩ V(F).
inline CycleCert extract_cycle(const Graph& g, const Exploration& e, std::size_t i, const ThetaGraph& theta, unsigned k,
                               ExtractionTrace* trace = nullptr) {
  if (i < 1 || i + 1 > k) throw precondition_error("extraction needs 1 <= i <= k-1");
  if (i + 1 > e.depth()) throw precondition_error("level index beyond the exploration depth");
  if (auto v = verify_theta(g, theta, k); !v) throw precondition_error("certificate is not a theta graph: " + v.detail);
  const auto fv = theta.vertices();
  std::size_t in_i = 0;
  for (vertex v : fv) {
    const auto lv = e.level_of[v];
    if (lv != std::int64_t(i) && lv != std::int64_t(i + 1))
      throw precondition_error("theta vertex " + std::to_string(v) + " is not in levels i, i+1");
    in_i += lv == std::int64_t(i);
  }
  if (in_i == fv.size() || in_i == 0) {
    // A Θ inside a single level needs edges inside a level, impossible on the
    // bipartite graphs explored here.
    throw internal_contradiction("theta graph inside a single level", to_json(theta).dump());
  }
  std::map<vertex, std::vector<vertex>> paths;
  for (vertex y : fv) {
    if (e.level_of[y] != std::int64_t(i)) continue;
    auto chain = e.chain_to_root(y);
    for (std::size_t j = 1; j < chain.size(); ++j)
      if (std::binary_search(fv.begin(), fv.end(), chain[j]))
        throw precondition_error("parent chain of " + std::to_string(y) + " meets the theta graph");
    paths[y] = {chain.rbegin(), chain.rend()};
  }
  return detail::close_through_tree(g, theta, paths, i, k, trace);
}

// ---------------------------------------------------------------------------
// End-to-end pipeline.

struct PipelineOptions {
  std::size_t max_roots = 16;
  std::size_t oracle_max_n = 64;  // brute-force fallback cap
  std::uint64_t delta = 0;        // 0 = k^3
};

struct LevelHit {
  vertex root = 0;
  std::size_t i = 0;
  std::string kind;     // "pair" (G[V_i,V_{i+1}]) or "triple" (G[V_{i-1},V_i,V'_{i+1}])
  std::string outcome;  // "none", "theta", "cycle", "skipped: ...", "error: ..."
};

struct PipelineResult {
  std::optional<CycleCert> cycle;  // parent ids
  std::string route;               // "levels", "oracle" or ""
  std::vector<LevelHit> level_hits;
  std::vector<std::string> notes;  // unmet hypotheses and fallbacks
  nlohmann::json growth_audit = nlohmann::json::object();
  double bound_value = 0;
};

inline PipelineResult find_even_cycle(const Graph& g, unsigned k, std::uint64_t d, const PipelineOptions& opt = {}) {
  if (k < 2) throw precondition_error("k must be at least 2");
  if (d < 1) throw precondition_error("d must be at least 1");
  PipelineResult r;
  r.bound_value = bound(std::max<std::size_t>(g.order(), 1), k);
  if (g.size() == 0) {
    r.notes.push_back("graph has no edges");
    return r;
  }
  const ExplorationParams params{k, d, opt.delta ? opt.delta : std::uint64_t(k) * k * k};
  Graph h = bipartite_half(g).subgraph;
  const std::size_t floor = 2 * d + 5 * std::size_t(k) * k;
  Subgraph core = min_degree_core(h, floor);
  if (core.graph.order() == 0) {
    const std::size_t deg = degeneracy(h);
    r.notes.push_back("minimum degree 2d+5k^2 = " + std::to_string(floor) + " not reachable; using the " +
                      std::to_string(deg) + "-core (degeneracy)");
    core = min_degree_core(h, std::max<std::size_t>(deg, 1));
  }
  const Graph& c = core.graph;
  auto shared = std::make_shared<const Graph>(c);
  const std::size_t roots = std::min(opt.max_roots, c.order());
  for (vertex root = 0; root < roots && !r.cycle; ++root) {
    if (c.degree(root) == 0) continue;
    Exploration e = explore(c, root, params, k);
    if (root == 0 || r.growth_audit.empty()) r.growth_audit = to_json(audit_growth(c, e, params));
    for (std::size_t i = 1; i + 1 <= k && !r.cycle; ++i) {
      LevelHit pair{core.parent_of(root), i, "pair", "none"};
      try {
        if (auto found = try_locate_theta(c, e.level(i), {e.level(i + 1)}, k)) {
          pair.outcome = "theta (" + found->route + ")";
          r.cycle = extract_cycle(c, e, i, found->theta, k);
          pair.outcome = "cycle";
        }
      } catch (const error& ex) {
        pair.outcome = std::string("error: ") + ex.what();
      }
      r.level_hits.push_back(pair);
      if (r.cycle) break;

      LevelHit triple{core.parent_of(root), i, "triple", "none"};
      try {
        Trilayered t = Trilayered::make(shared, e.level(i - 1), e.level(i), e.candidates(i + 1));
        std::optional<WellPlacedCert> cert;
        if (t.order() <= exhaustive_theta_max_n) {
          cert = find_well_placed_exhaustive(t, k);
        } else {
          const PruneParams p{k, d, params.delta, std::max(1u, unsigned(std::ceil(2 * std::log(double(k)))))};
          auto dr = trilayered_dichotomy(t, p);
          if (auto* wp = std::get_if<WellPlacedCert>(&dr.outcome)) cert = *wp;
          else {
            triple.outcome = "theta in G[V_{i-1},V_i]";
            const auto& th = std::get<ThetaFound>(dr.outcome).theta;
            if (i >= 2) {
              r.cycle = extract_cycle(c, e, i - 1, th, k);
              triple.outcome = "cycle";
            }
          }
        }
        if (cert) {
          triple.outcome = "well-placed theta";
          r.cycle = extract_cycle(c, e, i, *cert, k);
          triple.outcome = "cycle";
        }
      } catch (const precondition_error& ex) {
        triple.outcome = std::string("skipped: ") + ex.what();
      } catch (const error& ex) {
        triple.outcome = std::string("error: ") + ex.what();
      }
      r.level_hits.push_back(triple);
    }
  }
  if (r.cycle) {
    r.cycle->vertices = core.lift(r.cycle->vertices);
    r.route = "levels";
    return r;
  }
  r.notes.push_back("no theta graph located at any level");
  if (g.order() <= opt.oracle_max_n) {
    if (auto oc = contains_cycle(g, 2 * std::size_t(k))) {
      r.cycle = *oc;
      r.route = "oracle";
      r.notes.push_back("cycle found by the brute-force fallback");
    } else {
      r.notes.push_back("brute force confirms the graph has no cycle of length " + std::to_string(2 * k));
    }
  } else {
    r.notes.push_back("graph too large for the brute-force fallback");
  }
  return r;
}

inline nlohmann::json to_json(const PipelineResult& r) {
  nlohmann::json hits = nlohmann::json::array();
  for (const auto& h : r.level_hits) hits.push_back({{"root", h.root}, {"i", h.i}, {"kind", h.kind}, {"outcome", h.outcome}});
  nlohmann::json j{{"result", r.cycle ? "cycle" : "none"},
                   {"cycle", r.cycle ? nlohmann::json(r.cycle->vertices) : nlohmann::json::array()},
                   {"route", r.route},
                   {"level_hits", hits},
                   {"growth_audit", r.growth_audit},
                   {"bound", r.bound_value},
                   {"notes", r.notes}};
  return j;
}

// ---------------------------------------------------------------------------

struct BoundAudit {
  std::size_t n = 0, edges = 0;
  unsigned k = 2;
  double bound_value = 0, d_threshold = 0;
  std::optional<bool> cycle_free;  // nullopt when over the oracle cap
  std::optional<CycleCert> cycle;

  // The bound claim, when it applies.
  std::optional<bool> within_bound() const {
    if (!cycle_free || !*cycle_free) return std::nullopt;
    return double(edges) <= bound_value;
  }
};

inline BoundAudit audit_bound(const Graph& g, unsigned k, std::size_t oracle_max_n = 64) {
  BoundAudit a;
  a.n = g.order();
  a.edges = g.size();
  a.k = k;
  a.bound_value = bound(std::max<std::size_t>(a.n, 1), k);
  a.d_threshold = degree_threshold(std::max<std::size_t>(a.n, 1), k);
  if (a.n <= oracle_max_n) {
    a.cycle = contains_cycle(g, 2 * std::size_t(k));
    a.cycle_free = !a.cycle.has_value();
  }
  return a;
}

inline nlohmann::json to_json(const BoundAudit& a) {
  nlohmann::json j{{"n", a.n}, {"k", a.k}, {"edges", a.edges}, {"bound", a.bound_value}, {"d_threshold", a.d_threshold}};
  j["cycle_free"] = a.cycle_free ? nlohmann::json(*a.cycle_free) : nlohmann::json("unknown");
  auto w = a.within_bound();
  j["within_bound"] = w ? nlohmann::json(*w) : nlohmann::json("not applicable");
  return j;
}

}  // namespace evencycle
