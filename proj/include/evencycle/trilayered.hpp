#pragma once

#include <array>
#include <cmath>
#include <deque>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "graph.hpp"
#include "theta.hpp"

namespace evencycle {

using rational = boost::multiprecision::cpp_rational;
using bigint = boost::multiprecision::cpp_int;

inline long double to_ld(const rational& r) { return r.convert_to<long double>(); }
inline std::string to_string(const rational& r) { return r.str(); }

// Three disjoint vertex sets of a host graph such that the only host edges
// among them join V1-V2 or V2-V3.
class Trilayered {
 public:
  Trilayered() = default;

  static Trilayered make(std::shared_ptr<const Graph> host, std::vector<vertex> v1, std::vector<vertex> v2,
                         std::vector<vertex> v3) {
    Trilayered t;
    t.host_ = std::move(host);
    t.layers_ = {sorted_unique(std::move(v1)), sorted_unique(std::move(v2)), sorted_unique(std::move(v3))};
    t.layer_of_.assign(t.host_->order(), -1);
    for (int l = 0; l < 3; ++l)
      for (vertex v : t.layers_[l]) {
        if (v >= t.host_->order()) throw precondition_error("layer vertex " + std::to_string(v) + " is not a vertex");
        if (t.layer_of_[v] >= 0) throw precondition_error("vertex " + std::to_string(v) + " lies in two layers");
        t.layer_of_[v] = static_cast<signed char>(l);
      }
    for (int l = 0; l < 3; ++l)
      for (vertex v : t.layers_[l])
        for (vertex w : t.host_->neighbors(v)) {
          int m = t.layer_of_[w];
          if (m >= 0 && std::abs(m - l) != 1)
            throw precondition_error("edge (" + std::to_string(v) + "," + std::to_string(w) +
                                     ") does not join consecutive layers");
        }
    return t;
  }

  static Trilayered make(Graph host, std::vector<vertex> v1, std::vector<vertex> v2, std::vector<vertex> v3) {
    return make(std::make_shared<const Graph>(std::move(host)), std::move(v1), std::move(v2), std::move(v3));
  }

  // Same host, sub-layers (must be subsets).
  Trilayered restrict(std::vector<vertex> v1, std::vector<vertex> v2, std::vector<vertex> v3) const {
    return make(host_, std::move(v1), std::move(v2), std::move(v3));
  }

  const Graph& host() const { return *host_; }
  std::shared_ptr<const Graph> host_ptr() const { return host_; }
  const std::vector<vertex>& layer(int l) const { return layers_.at(std::size_t(l - 1)); }  // 1-based
  const std::vector<vertex>& v1() const { return layers_[0]; }
  const std::vector<vertex>& v2() const { return layers_[1]; }
  const std::vector<vertex>& v3() const { return layers_[2]; }
  int layer_of(vertex v) const { return v < layer_of_.size() ? layer_of_[v] + 1 : 0; }  // 0 = outside

  std::vector<vertex> vertices() const {
    std::vector<vertex> all;
    for (const auto& l : layers_) all.insert(all.end(), l.begin(), l.end());
    return sorted_unique(std::move(all));
  }
  std::size_t order() const { return layers_[0].size() + layers_[1].size() + layers_[2].size(); }

  // Neighbours of v inside layer l (1-based).
  std::size_t degree_into(vertex v, int l) const {
    std::size_t c = 0;
    for (vertex w : host_->neighbors(v))
      if (layer_of_[w] == l - 1) ++c;
    return c;
  }
  std::size_t e12() const { return edges_between(*host_, v1(), v2()); }
  std::size_t e23() const { return edges_between(*host_, v2(), v3()); }

 private:
  std::shared_ptr<const Graph> host_ = std::make_shared<const Graph>();
  std::array<std::vector<vertex>, 3> layers_;
  std::vector<signed char> layer_of_;
};

// Layer file: three lines of whitespace-separated vertex ids (a line may be empty).
inline std::array<std::vector<vertex>, 3> load_layers(std::string_view text) {
  std::array<std::vector<vertex>, 3> out;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size() && line_no < 4) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (line_no >= 3) {
      if (line.find_first_not_of(" \t\r") != std::string_view::npos) throw parse_error(line_no + 1, "more than three layer lines");
      ++line_no;
      continue;
    }
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) {
      vertex v = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || p != tok.data() + tok.size()) throw parse_error(line_no + 1, "bad vertex id '" + tok + "'");
      out[line_no].push_back(v);
    }
    ++line_no;
  }
  if (line_no < 3) throw parse_error(line_no, "expected three layer lines");
  return out;
}

inline std::string serialize_layers(const Trilayered& t) {
  std::ostringstream out;
  for (int l = 1; l <= 3; ++l) {
    const auto& vs = t.layer(l);
    for (std::size_t i = 0; i < vs.size(); ++i) out << (i ? " " : "") << vs[i];
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Minimum degree [A:B,C:D]: V1 -> V2 at least A, V2 -> V1 at least B,
// V2 -> V3 at least C, V3 -> V2 at least D.

struct DegreeSpec {
  rational A, B, C, D;
};

inline nlohmann::json to_json(const DegreeSpec& s) {
  return {{"A", to_string(s.A)}, {"B", to_string(s.B)}, {"C", to_string(s.C)}, {"D", to_string(s.D)}};
}

struct SpecViolation {
  int layer = 0;  // 1..3
  char bound = 'A';
  vertex v = 0;
  std::size_t count = 0;
};

struct SpecVerdict {
  std::optional<SpecViolation> violation;
  bool ok() const { return !violation; }
  explicit operator bool() const { return ok(); }
};

inline SpecVerdict check_degree_spec(const Trilayered& t, const DegreeSpec& s) {
  auto check = [&](int layer, int into, char bound, const rational& need) -> std::optional<SpecViolation> {
    for (vertex v : t.layer(layer)) {
      std::size_t c = t.degree_into(v, into);
      if (rational(c) < need) return SpecViolation{layer, bound, v, c};
    }
    return std::nullopt;
  };
  for (auto r : {check(1, 2, 'A', s.A), check(2, 1, 'B', s.B), check(2, 3, 'C', s.C), check(3, 2, 'D', s.D)})
    if (r) return {r};
  return {};
}

// lhs >= base^expo for base > 0 and rational expo. Exact when the exponent's
// denominator is small, otherwise compared in logarithms.
inline bool pow_ge(const rational& lhs, const rational& base, const rational& expo) {
  if (base <= 0) throw precondition_error("pow_ge needs a positive base");
  if (lhs <= 0) return false;
  auto ipow = [](rational b, bigint e) {
    bool inv = e < 0;
    if (inv) e = -e;
    rational r = 1;
    while (e > 0) {
      if ((e & 1) != 0) r *= b;
      b *= b;
      e >>= 1;
    }
    return inv ? rational(1) / r : r;
  };
  const bigint p = boost::multiprecision::numerator(expo), q = boost::multiprecision::denominator(expo);
  if (q <= 64 && abs(p) <= 4096) return ipow(lhs, q) >= ipow(base, p);
  return std::log(to_ld(lhs)) >= to_ld(expo) * std::log(to_ld(base));
}

// The output/input bounds tying A, B, D together:
//   B >= 5,   (B - 4) D >= bd_floor,   A >= 2k (Delta D)^(D - 1).
// bd_floor is 2k for the pruning output and 2k - 2 for the well-placed search.
inline std::vector<std::string> abd_failures(const DegreeSpec& s, unsigned k, std::uint64_t delta, unsigned bd_floor) {
  std::vector<std::string> bad;
  if (s.B < 5) bad.push_back("B >= 5");
  if ((s.B - 4) * s.D < bd_floor) bad.push_back("(B-4)D >= " + std::to_string(bd_floor));
  if (s.D <= 0 || !pow_ge(s.A / (2 * k), rational(delta) * s.D, s.D - 1)) bad.push_back("A >= 2k(Delta D)^(D-1)");
  return bad;
}

// ---------------------------------------------------------------------------
// Locating a Θ-graph inside G[X, Y] when the surrounding argument guarantees
// one exists.

struct ThetaFound {
  ThetaGraph theta;
  std::string route;     // "average-degree", "core" or "exhaustive"
  bool flagged = false;  // the argument's own route did not apply
};

inline std::optional<ThetaFound> try_locate_theta(const Graph& host, std::span<const vertex> x,
                                                  const std::vector<std::vector<vertex>>& ys, unsigned k) {
  const unsigned k3 = std::max(k, 3u);
  auto lift = [](const Subgraph& s, const ThetaGraph& t) {
    ThetaGraph out{s.lift(t.cycle), {s.parent_of(t.chord.first), s.parent_of(t.chord.second)}};
    if (out.chord.first > out.chord.second) std::swap(out.chord.first, out.chord.second);
    return out;
  };
  for (const auto& y : ys) {
    if (y.empty()) continue;
    Subgraph h = crossing_subgraph(host, x, y);
    if (h.graph.size() >= std::size_t(k3) * h.graph.order())
      return ThetaFound{lift(h, find_theta_avg_degree(h.graph, k3)), "average-degree", false};
  }
  const auto& widest = ys.back();
  Subgraph h = crossing_subgraph(host, x, widest);
  Subgraph core = min_degree_core(h.graph, k3);
  if (core.graph.order() > 0) {
    ThetaGraph local = find_theta_min_degree(core.graph, k3);
    ThetaGraph mid{core.lift(local.cycle), {core.parent_of(local.chord.first), core.parent_of(local.chord.second)}};
    return ThetaFound{lift(h, mid), "core", true};
  }
  if (h.graph.order() <= exhaustive_theta_max_n)
    if (auto t = find_theta_exhaustive(h.graph, k)) return ThetaFound{lift(h, *t), "exhaustive", true};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Single pruning step.

struct PruneContext {
  unsigned k = 2;
  std::uint64_t d = 1;
};

struct SubgraphFound {
  Trilayered sub;
};

struct Shrunken {
  std::vector<vertex> v2;  // R \ S
};

using PruneOutcome = std::variant<ThetaFound, SubgraphFound, Shrunken>;

inline const char* outcome_name(const PruneOutcome& o) {
  return std::holds_alternative<ThetaFound>(o) ? "theta" : std::holds_alternative<SubgraphFound>(o) ? "subgraph" : "shrunken";
}

inline rational e12_rational(const Trilayered& t) { return rational(t.e12()); }

// The hypotheses of a pruning step, as failure messages.
inline std::vector<std::string> prune_hypothesis_failures(const Trilayered& t, const DegreeSpec& s, const rational& a,
                                                          const PruneContext& c) {
  std::vector<std::string> bad;
  if (a <= 0 || a > 1) bad.push_back("a in (0,1]");
  if (s.A <= 0 || s.B <= 0 || s.C <= 0 || s.D <= 0) bad.push_back("A, B, C, D positive");
  const rational floor = rational(c.d) + 4 * c.k * c.k + s.C;
  for (vertex v : t.v2())
    if (const std::size_t deg = t.degree_into(v, 1) + t.degree_into(v, 3); rational(deg) < floor) {
      bad.push_back("vertex " + std::to_string(v) + " in V2 has degree " + std::to_string(deg) + " < d + 4k^2 + C");
      break;
    }
  if (a * e12_rational(t) < (s.A + c.k + 1) * t.v1().size() + s.B * t.v2().size())
    bad.push_back("a e(V1,V2) >= (A+k+1)|V1| + B|V2|");
  return bad;
}

// Deletes degree-violating vertices (smallest id first, then in the order they
// become violators) until none is left or the survivors meet s.
inline PruneOutcome prune_to_min_degree(const Trilayered& t, const DegreeSpec& s, const rational& a,
                                        const PruneContext& c) {
  if (auto bad = prune_hypothesis_failures(t, s, a, c); !bad.empty())
    throw precondition_error("pruning hypotheses fail: " + bad.front(), bad);

  const Graph& g = t.host();
  const std::size_t n = g.order();
  std::vector<std::size_t> to1(n, 0), to2(n, 0), to3(n, 0);
  std::vector<char> alive(n, 0);
  for (vertex v : t.vertices()) alive[v] = 1;
  for (vertex v : t.vertices()) {
    to1[v] = t.degree_into(v, 1);
    to2[v] = t.degree_into(v, 2);
    to3[v] = t.degree_into(v, 3);
  }
  auto violates = [&](vertex v) {
    switch (t.layer_of(v)) {
      case 1: return rational(to2[v]) < s.A;
      case 2: return rational(to1[v]) < s.B || rational(to3[v]) < s.C;
      case 3: return rational(to2[v]) < s.D;
    }
    return false;
  };
  std::deque<vertex> queue;
  std::vector<char> queued(n, 0);
  for (vertex v : t.vertices())
    if (violates(v)) {
      queue.push_back(v);
      queued[v] = 1;
    }
  std::vector<vertex> removed_for_c;  // V2 vertices removed for lack of C neighbours in V3
  while (!queue.empty()) {
    vertex v = queue.front();
    queue.pop_front();
    const int l = t.layer_of(v);
    if (l == 2 && !(rational(to1[v]) < s.B)) removed_for_c.push_back(v);
    alive[v] = 0;
    for (vertex w : g.neighbors(v)) {
      if (!alive[w]) continue;
      if (l == 1) --to1[w];
      if (l == 2) --to2[w];
      if (l == 3) --to3[w];
      if (!queued[w] && violates(w)) {
        queue.push_back(w);
        queued[w] = 1;
      }
    }
  }
  std::array<std::vector<vertex>, 3> left;
  for (int l = 1; l <= 3; ++l)
    for (vertex v : t.layer(l))
      if (alive[v]) left[std::size_t(l - 1)].push_back(v);
  if (!left[0].empty() || !left[1].empty() || !left[2].empty()) {
    Trilayered sub = t.restrict(left[0], left[1], left[2]);
    if (!check_degree_spec(sub, s) || left[0].empty() || left[1].empty() || left[2].empty())
      throw internal_contradiction("pruning survivors do not meet the degree spec", serialize_layers(sub));
    return SubgraphFound{std::move(sub)};
  }

  // Everything was deleted.
  std::vector<vertex> heavy;  // S: V2 vertices with >= 4k^2 neighbours in V1
  for (vertex v : t.v2())
    if (t.degree_into(v, 1) >= 4 * std::size_t(c.k) * c.k) heavy.push_back(v);
  std::vector<vertex> shrunk;
  std::sort(removed_for_c.begin(), removed_for_c.end());
  std::set_difference(removed_for_c.begin(), removed_for_c.end(), heavy.begin(), heavy.end(), std::back_inserter(shrunk));
  const rational e_all = e12_rational(t);
  if (rational(edges_between(g, t.v1(), shrunk)) >= (1 - a) * e_all) {
    if (rational(shrunk.size()) * c.d > s.D * t.v3().size())
      throw internal_contradiction("shrunken middle layer exceeds D|V3|/d",
                                   "|R\\S|=" + std::to_string(shrunk.size()) + " D=" + to_string(s.D) +
                                       " |V3|=" + std::to_string(t.v3().size()) + " d=" + std::to_string(c.d));
    return Shrunken{std::move(shrunk)};
  }
  if (auto found = try_locate_theta(g, t.v1(), {heavy, t.v2()}, c.k)) return *found;
  throw internal_contradiction("pruning forced a theta graph in G[V1,V2] but none was located",
                               serialize(g) + "--\n" + serialize_layers(t));
}

enum class PruneDefect { none, bad_theta, theta_outside, empty_layer, not_subset, spec_violated, too_large, too_light };

// Checks a pruning outcome against the alternative it claims.
inline Verdict<PruneDefect> verify_prune_outcome(const Trilayered& t, const DegreeSpec& s, const rational& a,
                                                 const PruneContext& c, const PruneOutcome& o) {
  using V = Verdict<PruneDefect>;
  if (auto* th = std::get_if<ThetaFound>(&o)) {
    if (auto v = verify_theta(t.host(), th->theta, c.k); !v) return V::fail(PruneDefect::bad_theta, v.detail);
    for (vertex v : th->theta.cycle)
      if (t.layer_of(v) != 1 && t.layer_of(v) != 2)
        return V::fail(PruneDefect::theta_outside, "theta leaves G[V1,V2]");
    return V::pass();
  }
  if (auto* sg = std::get_if<SubgraphFound>(&o)) {
    for (int l = 1; l <= 3; ++l) {
      const auto& sub = sg->sub.layer(l);
      if (sub.empty()) return V::fail(PruneDefect::empty_layer, "empty layer in subgraph");
      if (!std::includes(t.layer(l).begin(), t.layer(l).end(), sub.begin(), sub.end()))
        return V::fail(PruneDefect::not_subset, "subgraph layer is not a subset");
    }
    if (auto sv = check_degree_spec(sg->sub, s); !sv)
      return V::fail(PruneDefect::spec_violated, std::string("degree spec violated at bound ") + sv.violation->bound);
    return V::pass();
  }
  const auto& sh = std::get<Shrunken>(o);
  if (!std::includes(t.v2().begin(), t.v2().end(), sh.v2.begin(), sh.v2.end()))
    return V::fail(PruneDefect::not_subset, "shrunken set is not inside V2");
  if (rational(sh.v2.size()) * c.d > s.D * t.v3().size()) return V::fail(PruneDefect::too_large, "|V2~| > D|V3|/d");
  if (rational(edges_between(t.host(), t.v1(), sh.v2)) < (1 - a) * e12_rational(t))
    return V::fail(PruneDefect::too_light, "e(V1,V2~) < (1-a)e(V1,V2)");
  return V::pass();
}

// ---------------------------------------------------------------------------
// Iterated pruning.

struct PruneParams {
  unsigned k = 2;
  std::uint64_t d = 1;
  std::uint64_t delta = 8;
  unsigned t = 1;
};

// F = d e(V1,V2) / (8k|V3|).
inline rational density_F(const Trilayered& t, unsigned k, std::uint64_t d) {
  if (t.v3().empty()) throw precondition_error("V3 is empty");
  return rational(d) * e12_rational(t) / (8 * k * t.v3().size());
}

struct DensityCheck {
  std::string id;  // "(a)".."(e)"
  long double lhs = 0, rhs = 0;
  bool holds = false;
};

// The five density hypotheses (a)-(e).
inline std::vector<DensityCheck> density_conditions(const Trilayered& t, const PruneParams& p) {
  const rational F = density_F(t, p.k, p.d), e = e12_rational(t);
  const std::size_t n1 = t.v1().size(), n2 = t.v2().size();
  const bigint tt = p.t + 1;
  bigint cpow = 1;
  for (unsigned i = 0; i + 1 < 2 * p.k; ++i) cpow *= bigint(2) * p.delta * p.k;
  std::vector<DensityCheck> out;
  out.push_back({"(a)", to_ld(F), 2.0L, F >= 2});
  const rational rb = 2 * p.k * F * n1;
  out.push_back({"(b)", to_ld(e), to_ld(rb), e >= rb});
  const rational rc = rational(bigint(8) * p.k * tt * tt * cpow * n1);
  out.push_back({"(c)", to_ld(e), to_ld(rc), e >= rc});
  const long double rd =
      8.0L * std::pow(std::exp(1.0L) * p.t / to_ld(F), (long double)p.t) * p.k * (long double)n2;
  out.push_back({"(d)", to_ld(e), rd, to_ld(e) >= rd});
  const rational re = rational(20 * tt * tt * n2);
  out.push_back({"(e)", to_ld(e), to_ld(re), e >= re});
  return out;
}

inline std::vector<std::string> density_failures(const Trilayered& t, const PruneParams& p) {
  std::vector<std::string> bad;
  for (const auto& c : density_conditions(t, p))
    if (!c.holds) bad.push_back(c.id);
  return bad;
}

struct PruneStep {
  std::size_t i = 0;
  rational a, A, B, D;
  std::size_t e12 = 0, v2_size = 0;
  rational d_i;  // e(V1,V2^(i)) / |V2^(i)|
  std::string outcome;
};

struct SubgraphWithSpec {
  Trilayered sub;
  DegreeSpec spec;
};

struct IterateResult {
  std::variant<ThetaFound, SubgraphWithSpec> outcome;
  std::vector<PruneStep> steps;
};

inline IterateResult iterate_prune(const Trilayered& t, const PruneParams& p, const rational& C) {
  if (p.k < 2 || p.d < 1 || p.delta < 1) throw precondition_error("need k >= 2, d >= 1, delta >= 1");
  if (p.t < 1) throw precondition_error("iterated pruning needs t >= 1");
  if (t.v1().empty() || t.v2().empty()) throw precondition_error("V1 and V2 must be nonempty");
  const rational floor = rational(p.d) + 4 * p.k * p.k + C;
  for (vertex v : t.v2())
    if (rational(t.degree_into(v, 1) + t.degree_into(v, 3)) < floor)
      throw precondition_error("vertex " + std::to_string(v) + " in V2 is below d + 4k^2 + C", {"V2 degree"});
  if (auto bad = density_failures(t, p); !bad.empty()) {
    std::string msg = "density hypotheses fail:";
    for (const auto& b : bad) msg += " " + b;
    throw precondition_error(msg, bad);
  }
  const PruneContext ctx{p.k, p.d};
  const rational e0 = e12_rational(t);
  IterateResult res;
  std::vector<vertex> v2 = t.v2();
  for (unsigned i = 0; i < p.t; ++i) {
    Trilayered cur = t.restrict(t.v1(), v2, t.v3());
    PruneStep st;
    st.i = i;
    st.a = rational(1, p.t - i + 1);
    st.e12 = cur.e12();
    st.v2_size = v2.size();
    st.d_i = rational(st.e12, v2.size());
    st.A = st.a * st.e12 / (2 * t.v1().size()) - p.k - 1;
    st.B = st.a * st.d_i / 4 + 5;
    st.D = std::min(rational(2 * p.k), rational(8 * p.k) / (st.a * st.d_i));
    const DegreeSpec spec{st.A, st.B, C, st.D};
    if (auto bad = prune_hypothesis_failures(cur, spec, st.a, ctx); !bad.empty())
      throw internal_contradiction("step " + std::to_string(i) + " pruning hypothesis fails: " + bad.front(),
                                   "A=" + to_string(st.A) + " B=" + to_string(st.B) + " D=" + to_string(st.D));
    PruneOutcome o = prune_to_min_degree(cur, spec, st.a, ctx);
    st.outcome = outcome_name(o);
    res.steps.push_back(st);
    if (auto* th = std::get_if<ThetaFound>(&o)) {
      res.outcome = *th;
      return res;
    }
    if (auto* sg = std::get_if<SubgraphFound>(&o)) {
      if (auto bad = abd_failures(spec, p.k, p.delta, 2 * p.k); !bad.empty())
        throw internal_contradiction("pruned spec misses " + bad.front(), to_json(spec).dump());
      res.outcome = SubgraphWithSpec{sg->sub, spec};
      return res;
    }
    std::vector<vertex> next = std::get<Shrunken>(o).v2;
    const rational e_next(edges_between(t.host(), t.v1(), next));
    if (e_next < (1 - st.a) * st.e12 || e_next * (p.t + 1) < e0 || next.empty())
      throw internal_contradiction("edge mass fell below e(V1,V2)/(t+1) at step " + std::to_string(i),
                                   "e=" + to_string(e_next) + " e0=" + to_string(e0));
    v2 = std::move(next);
  }
  // Final set: either small or dense towards V1; both force a Θ in G[V1,V2^(t)].
  const std::size_t et = edges_between(t.host(), t.v1(), v2);
  PruneStep last;
  last.i = p.t;
  last.e12 = et;
  last.v2_size = v2.size();
  last.d_i = rational(et, v2.size());
  last.outcome = "final";
  res.steps.push_back(last);
  if (v2.size() < t.v1().size() || last.d_i >= 4 * p.k) {
    if (auto found = try_locate_theta(t.host(), t.v1(), {v2}, p.k)) {
      res.outcome = *found;
      return res;
    }
    throw internal_contradiction("final middle layer forces a theta graph but none was located", serialize_layers(t));
  }
  throw internal_contradiction("final density d_t < 4k contradicts hypothesis (d)", "d_t=" + to_string(last.d_i));
}

}  // namespace evencycle
