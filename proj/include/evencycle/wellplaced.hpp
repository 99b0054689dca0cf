#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "theta.hpp"
#include "trilayered.hpp"

namespace evencycle {

// A Θ-graph inside a trilayered graph plus, for every Θ-vertex in V2, a
// neighbour in V1 outside the Θ-graph.
struct WellPlacedCert {
  ThetaGraph theta;
  std::map<vertex, vertex> witnesses;
  friend bool operator==(const WellPlacedCert&, const WellPlacedCert&) = default;
};

inline nlohmann::json to_json(const WellPlacedCert& c) {
  nlohmann::json w = nlohmann::json::object();
  for (auto [v, x] : c.witnesses) w[std::to_string(v)] = x;
  return {{"theta", to_json(c.theta)}, {"witnesses", w}};
}

inline WellPlacedCert well_placed_from_json(const nlohmann::json& j) {
  WellPlacedCert c;
  c.theta = theta_from_json(j.at("theta"));
  for (const auto& [k, v] : j.at("witnesses").items()) c.witnesses[vertex(std::stoul(k))] = v.get<vertex>();
  return c;
}

enum class WellPlacedDefect { none, bad_theta, outside_layers, missing_witness, extra_witness, bad_witness };

inline Verdict<WellPlacedDefect> verify_well_placed(const Trilayered& t, const WellPlacedCert& c, unsigned k) {
  using V = Verdict<WellPlacedDefect>;
  if (auto v = verify_theta(t.host(), c.theta, k); !v) return V::fail(WellPlacedDefect::bad_theta, v.detail);
  const auto verts = c.theta.vertices();
  std::size_t middle = 0;
  for (vertex v : verts) {
    const int l = t.layer_of(v);
    if (l == 0) return V::fail(WellPlacedDefect::outside_layers, "vertex " + std::to_string(v) + " is in no layer");
    if (l != 2) continue;
    ++middle;
    auto it = c.witnesses.find(v);
    if (it == c.witnesses.end())
      return V::fail(WellPlacedDefect::missing_witness, "no witness for " + std::to_string(v));
    const vertex w = it->second;
    if (t.layer_of(w) != 1 || std::binary_search(verts.begin(), verts.end(), w) || !t.host().has_edge(v, w))
      return V::fail(WellPlacedDefect::bad_witness,
                     "witness " + std::to_string(w) + " for " + std::to_string(v) + " is not a V1 neighbour off the theta");
  }
  if (c.witnesses.size() != middle) return V::fail(WellPlacedDefect::extra_witness, "witness for a vertex outside V2");
  return V::pass();
}

namespace detail {

// Least-id witnesses for the V2 vertices of `cycle`, or nullopt if one is missing.
inline std::optional<std::map<vertex, vertex>> well_placed_witnesses(const Trilayered& t, const std::vector<vertex>& cycle) {
  const auto on = sorted_unique(cycle);
  std::map<vertex, vertex> w;
  for (vertex v : on) {
    if (t.layer_of(v) != 2) continue;
    bool found = false;
    for (vertex x : t.host().neighbors(v))
      if (t.layer_of(x) == 1 && !std::binary_search(on.begin(), on.end(), x)) {
        w[v] = x;
        found = true;
        break;
      }
    if (!found) return std::nullopt;
  }
  return w;
}

}  // namespace detail

// Lexicographically least well-placed Θ-graph (canonical cycle, then chord).
inline std::optional<WellPlacedCert> find_well_placed_exhaustive(const Trilayered& t, unsigned k,
                                                                 std::size_t max_n = exhaustive_theta_max_n,
                                                                 std::uint64_t budget = 200'000'000) {
  if (t.order() > max_n)
    throw precondition_error("exhaustive well-placed search is capped at " + std::to_string(max_n) + " vertices");
  Subgraph local = induced_subgraph(t.host(), t.vertices());
  std::optional<edge> chord;
  std::map<vertex, vertex> wit;
  detail::OrderedCycleSearch search(local.graph, 2 * std::size_t(k), [&](const std::vector<vertex>& c) {
    auto w = detail::well_placed_witnesses(t, local.lift(c));
    if (!w) return false;
    chord = least_chord(local.graph, c);
    if (!chord) return false;
    wit = std::move(*w);
    return true;
  }, budget);
  auto cycle = search.run();
  if (!cycle) return std::nullopt;
  WellPlacedCert c;
  c.theta.cycle = local.lift(*cycle);
  c.theta.chord = {local.parent_of(chord->first), local.parent_of(chord->second)};
  c.witnesses = std::move(wit);
  return c;
}

// ---------------------------------------------------------------------------
// Constructive search.

struct ConstructiveOptions {
  std::uint64_t budget = 0;  // family layers; 0 = 10 |V(T)| 2D'
};

struct ConstructiveTrace {
  std::size_t segment = 0;                       // D' = ceil(D): V2/V3 steps per segment are 2D'
  std::vector<std::vector<std::size_t>> families;  // |Q_1|, ..., |Q_{2D'-1}| per round
  std::size_t rounds = 0;
  std::string closing;  // which closing produced the certificate
};

struct ConstructiveResult {
  WellPlacedCert cert;
  ConstructiveTrace trace;
};

inline std::vector<std::string> constructive_precondition_failures(const Trilayered& t, const DegreeSpec& s, unsigned k,
                                                                   std::uint64_t d, std::uint64_t delta) {
  auto bad = abd_failures(s, k, delta, 2 * k - 2);
  if (t.v1().empty()) bad.push_back("V1 nonempty");
  const DegreeSpec need{s.A, s.B, rational(d + k), s.D};
  if (auto v = check_degree_spec(t, need); !v)
    bad.push_back(std::string("minimum degree [A:B,d+k:D] fails at bound ") + v.violation->bound + " (vertex " +
                  std::to_string(v.violation->v) + ")");
  for (vertex v : t.v2())
    if (t.degree_into(v, 3) > delta * d) {
      bad.push_back("vertex " + std::to_string(v) + " has more than delta*d neighbours in V3");
      break;
    }
  return bad;
}

// Grows a good path v0 ~ v1 ~ ... whose consecutive V1 vertices are joined by
// V2/V3-alternating segments, building the terminal families layer by layer.
// Every new terminal first tries to close a Θ-graph through its back edges on
// the current path (farthest back-neighbour, then the second farthest); those
// are the contradiction branches of the growth argument, and a finite host
// forces one of them to fire.
inline ConstructiveResult find_well_placed_constructive(const Trilayered& t, const DegreeSpec& s, unsigned k,
                                                        std::uint64_t d, std::uint64_t delta,
                                                        const ConstructiveOptions& opt = {}) {
  if (auto bad = constructive_precondition_failures(t, s, k, d, delta); !bad.empty())
    throw precondition_error("well-placed search preconditions fail: " + bad.front(), bad);
  const Graph& g = t.host();
  const std::size_t n = g.order();
  ConstructiveTrace trace;
  {
    const bigint num = boost::multiprecision::numerator(s.D), den = boost::multiprecision::denominator(s.D);
    trace.segment = std::max<std::size_t>(1, bigint((num + den - 1) / den).convert_to<std::size_t>());
  }
  const std::size_t layers = 2 * trace.segment - 1;
  const std::uint64_t budget = opt.budget ? opt.budget : 10 * std::uint64_t(t.order()) * 2 * trace.segment;
  std::uint64_t spent = 0;

  std::vector<vertex> path{t.v1().front()};
  std::vector<std::int64_t> pos(n, -1);
  pos[path[0]] = 0;
  std::vector<char> mark(n, 0);

  auto on_q = [&](const std::vector<vertex>& seg, vertex v) {
    return pos[v] >= 0 || std::find(seg.begin(), seg.end(), v) != seg.end();
  };
  auto q_at = [&](const std::vector<vertex>& seg, std::size_t i) { return i < path.size() ? path[i] : seg[i - path.size()]; };
  auto q_index = [&](const std::vector<vertex>& seg, vertex v) -> std::int64_t {
    if (pos[v] >= 0) return pos[v];
    auto it = std::find(seg.begin(), seg.end(), v);
    return it == seg.end() ? -1 : std::int64_t(path.size() + std::size_t(it - seg.begin()));
  };

  std::optional<ConstructiveResult> done;
  auto try_close = [&](const std::vector<vertex>& seg, const char* branch) {
    const std::size_t len = path.size() + seg.size(), end = len - 1;
    const vertex x = q_at(seg, end);
    std::vector<std::size_t> back;
    for (vertex w : g.neighbors(x)) {
      if (!t.layer_of(w)) continue;
      auto i = q_index(seg, w);
      if (i >= 0 && std::size_t(i) + 1 < end) back.push_back(std::size_t(i));
    }
    std::sort(back.begin(), back.end());
    for (std::size_t j = 0; j < std::min<std::size_t>(2, back.size()); ++j) {
      const std::size_t p = back[j];
      if (end - p + 1 < 2 * std::size_t(k)) break;
      std::vector<vertex> cycle;
      for (std::size_t i = p; i <= end; ++i) cycle.push_back(q_at(seg, i));
      auto chord = least_chord(g, cycle);
      if (!chord) continue;
      auto wit = detail::well_placed_witnesses(t, cycle);
      if (!wit) continue;
      WellPlacedCert c{ThetaGraph{cycle, *chord}, std::move(*wit)};
      if (!verify_well_placed(t, c, k)) continue;
      trace.closing = std::string(branch) + (j == 0 ? " (farthest back edge)" : " (second farthest back edge)");
      done = ConstructiveResult{std::move(c), trace};
      return true;
    }
    return false;
  };
  // w in V2 keeps the path good iff it has a V1 neighbour off the path.
  auto good_v2 = [&](const std::vector<vertex>& seg, vertex w) {
    for (vertex x : g.neighbors(w))
      if (t.layer_of(x) == 1 && !on_q(seg, x)) return true;
    return false;
  };

  for (;;) {
    ++trace.rounds;
    if (try_close({}, "path endpoint")) return *done;
    std::map<vertex, std::vector<vertex>> family;  // terminal -> segment after the path
    const vertex end = path.back();
    for (vertex u : g.neighbors(end))
      if (t.layer_of(u) == 2 && pos[u] < 0) {
        std::vector<vertex> seg{u};
        if (try_close(seg, "first middle vertex")) return *done;
        if (good_v2(seg, u)) family.emplace(u, std::move(seg));
      }
    trace.families.push_back({family.size()});
    for (std::size_t i = 2; i <= layers && !family.empty(); ++i) {
      if (++spent > budget) throw budget_exceeded("well-placed search exceeded its step budget");
      const int into = i % 2 == 0 ? 3 : 2;
      std::map<vertex, std::vector<vertex>> next;
      for (const auto& [u, seg] : family)
        for (vertex w : g.neighbors(u)) {
          if (t.layer_of(w) != into || next.count(w) || on_q(seg, w)) continue;
          std::vector<vertex> nseg = seg;
          nseg.push_back(w);
          if (try_close(nseg, into == 3 ? "outer-layer terminal" : "middle-layer terminal")) return *done;
          if (into == 3 || good_v2(nseg, w)) next.emplace(w, std::move(nseg));
        }
      family = std::move(next);
      trace.families.back().push_back(family.size());
    }
    bool extended = false;
    for (const auto& [u, seg] : family) {
      for (vertex v : g.neighbors(u)) {
        if (t.layer_of(v) != 1 || on_q(seg, v)) continue;
        std::vector<vertex> nseg = seg;
        nseg.push_back(v);
        if (try_close(nseg, "segment end")) return *done;
        // v leaves V1 \ Q; every middle vertex adjacent to v must keep another witness.
        bool good = true;
        for (vertex w : g.neighbors(v))
          if (t.layer_of(w) == 2 && on_q(nseg, w) && !good_v2(nseg, w)) {
            good = false;
            break;
          }
        if (!good) continue;
        for (vertex x : nseg) {
          pos[x] = std::int64_t(path.size());
          path.push_back(x);
        }
        extended = true;
        break;
      }
      if (extended) break;
    }
    if (!extended) {
      std::ostringstream st;
      st << "path:";
      for (vertex v : path) st << ' ' << v;
      throw internal_contradiction("good path cannot be extended and no well-placed theta closed", st.str());
    }
  }
}

// ---------------------------------------------------------------------------

struct DichotomyResult {
  std::variant<ThetaFound, WellPlacedCert> outcome;
  std::string route;  // "prune", "constructive", "exhaustive"
  std::vector<PruneStep> steps;
};

inline DichotomyResult trilayered_dichotomy(const Trilayered& t, const PruneParams& p) {
  const rational floor = rational(2 * p.d) + 5 * p.k * p.k;
  for (vertex v : t.v2()) {
    if (rational(t.degree_into(v, 1) + t.degree_into(v, 3)) < floor)
      throw precondition_error("vertex " + std::to_string(v) + " in V2 has degree below 2d + 5k^2", {"V2 degree"});
    if (t.degree_into(v, 3) > p.delta * p.d)
      throw precondition_error("vertex " + std::to_string(v) + " has more than delta*d neighbours in V3", {"V3 cap"});
  }
  const rational C(p.d + p.k);
  IterateResult it = iterate_prune(t, p, C);
  DichotomyResult r;
  r.steps = it.steps;
  if (auto* th = std::get_if<ThetaFound>(&it.outcome)) {
    r.outcome = *th;
    r.route = "prune";
    return r;
  }
  const auto& sw = std::get<SubgraphWithSpec>(it.outcome);
  try {
    r.outcome = find_well_placed_constructive(sw.sub, sw.spec, p.k, p.d, p.delta).cert;
    r.route = "constructive";
    return r;
  } catch (const budget_exceeded&) {
    if (sw.sub.order() > exhaustive_theta_max_n) throw;
  } catch (const internal_contradiction&) {
    if (sw.sub.order() > exhaustive_theta_max_n) throw;
  }
  auto c = find_well_placed_exhaustive(sw.sub, p.k);
  if (!c) throw internal_contradiction("pruned trilayered graph has no well-placed theta", serialize_layers(sw.sub));
  r.outcome = *c;
  r.route = "exhaustive";
  return r;
}

}  // namespace evencycle
