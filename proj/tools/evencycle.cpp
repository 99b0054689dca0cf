// evencycle: command-line front end for the exploration, Θ search, cycle
// pipeline, brute-force oracles and generators.
//
// Exit codes: 0 found/ok, 1 audit failure under --strict, 2 usage or input
// error, 3 no cycle/Θ found, 4 budget exceeded, 5 internal contradiction.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <evencycle/oracle.hpp>
#include <evencycle/pipeline.hpp>

using namespace evencycle;

namespace {

enum Exit { ok = 0, audit_failed = 1, usage = 2, none_found = 3, over_budget = 4, contradiction = 5 };

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw precondition_error("cannot open graph file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_graph(buf.str());
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw precondition_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// "-" means stdout.
void write_json(const std::string& path, const nlohmann::json& j) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw precondition_error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw precondition_error("cannot write '" + path + "'");
  out << text;
}

std::string join(const std::vector<vertex>& vs) {
  std::string s;
  for (vertex v : vs) s += (s.empty() ? "" : " ") + std::to_string(v);
  return s;
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : sep) + x;
  return s;
}

void check_k(unsigned k) {
  if (k < 2) throw precondition_error("--k must be at least 2");
}

// ---------------------------------------------------------------------------

struct ExploreArgs {
  std::string file, json;
  vertex root = 0;
  unsigned k = 2;
  std::uint64_t d = 1, delta = 0;
  std::size_t depth = 0;
  bool strict = false;
};

int cmd_explore(const ExploreArgs& a) {
  check_k(a.k);
  const Graph g = read_graph_file(a.file);
  if (a.root >= g.order()) throw precondition_error("--root " + std::to_string(a.root) + " is not a vertex");
  const ExplorationParams p{a.k, a.d, a.delta ? a.delta : std::uint64_t(a.k) * a.k * a.k};
  p.validate();
  const Exploration e = explore(g, a.root, p, a.depth ? a.depth : a.k);
  const GrowthAudit growth = audit_growth(g, e, p);
  const MinDegreeAudit md = audit_min_degree(g, e, g.min_degree());

  std::printf("n=%zu m=%zu root=%u k=%u d=%llu cap=%llu\n", g.order(), g.size(), a.root, a.k,
              (unsigned long long)a.d, (unsigned long long)p.cap());
  std::printf("%5s %7s %10s %8s %7s\n", "level", "tag", "candidates", "big", "size");
  for (const auto& lv : e.levels)
    std::printf("%5zu %7s %10zu %8zu %7zu\n", lv.index, to_string(lv.tag), lv.candidates.size(), lv.big_set.size(),
                lv.chosen.size());
  std::printf("frontier %zu\n", e.frontier.size());
  std::printf("growth: %zu of %zu inequalities hold\n", growth.rows.size() - growth.failures(), growth.rows.size());
  for (const auto& r : growth.rows)
    if (!r.holds) std::printf("  fails %s at i=%zu: %.6g vs %.6g\n", wire_id(r.check), r.i, r.lhs, r.rhs);
  std::printf("min-degree (delta=%zu): %zu checked, %zu below delta\n", md.min_degree, md.checked, md.violations.size());
  for (const auto& u : md.unmet) std::printf("  hypothesis unmet: %s\n", u.c_str());

  nlohmann::json j = to_json(growth);
  j["min_degree_audit"] = to_json(md);
  write_json(a.json, j);
  const bool failed = growth.failures() > 0 || !md.violations.empty() || !md.unmet.empty();
  return a.strict && failed ? audit_failed : ok;
}

struct FindArgs {
  std::string file, json;
  unsigned k = 2;
  std::uint64_t d = 1;
  std::size_t roots = 16, oracle_max_n = 64;
};

int cmd_find_cycle(const FindArgs& a) {
  check_k(a.k);
  const Graph g = read_graph_file(a.file);
  PipelineOptions opt;
  opt.max_roots = a.roots;
  opt.oracle_max_n = a.oracle_max_n;
  const PipelineResult r = find_even_cycle(g, a.k, a.d, opt);
  write_json(a.json, to_json(r));
  if (r.cycle) {
    if (!verify_cycle(g, *r.cycle, 2 * a.k))
      throw internal_contradiction("reported cycle fails verification", to_json(r).dump());
    std::printf("cycle: %s\nroute: %s\n", join(r.cycle->vertices).c_str(), r.route.c_str());
    return ok;
  }
  std::printf("none: %s\n", join(r.notes, "; ").c_str());
  return none_found;
}

struct ThetaArgs {
  std::string file, json, method = "auto";
  unsigned k = 2;
};

int cmd_theta(const ThetaArgs& a) {
  check_k(a.k);
  const Graph g = read_graph_file(a.file);
  std::optional<ThetaGraph> t;
  std::string used = a.method;
  if (a.method == "auto") {
    if (g.order() <= exhaustive_theta_max_n) {
      t = find_theta_exhaustive(g, a.k);
      used = "exhaustive";
    } else if (is_bipartite(g) && g.min_degree() >= a.k) {
      t = find_theta_min_degree(g, a.k);
      used = "min-degree";
    } else {
      t = find_theta_avg_degree(g, a.k);
      used = "avg-degree";
    }
  } else if (a.method == "exhaustive") {
    t = find_theta_exhaustive(g, a.k);
  } else if (a.method == "min-degree") {
    t = find_theta_min_degree(g, a.k);
  } else {
    t = find_theta_avg_degree(g, a.k);
  }
  if (!t) {
    std::printf("none: no theta graph with a cycle of length >= %u\n", 2 * a.k);
    write_json(a.json, nullptr);
    return none_found;
  }
  if (!verify_theta(g, *t, a.k)) throw internal_contradiction("theta certificate fails verification", to_json(*t).dump());
  std::printf("theta (%s): cycle %s chord %u-%u\n", used.c_str(), join(t->cycle).c_str(), t->chord.first, t->chord.second);
  write_json(a.json, to_json(*t));
  return ok;
}

struct WellPlacedArgs {
  std::string file, layers, json;
  unsigned k = 2;
};

int cmd_well_placed(const WellPlacedArgs& a) {
  check_k(a.k);
  const Graph g = read_graph_file(a.file);
  auto ls = load_layers(read_text(a.layers));
  const Trilayered t = Trilayered::make(g, ls[0], ls[1], ls[2]);
  auto c = find_well_placed_exhaustive(t, a.k);
  if (!c) {
    std::printf("none: no well-placed theta graph\n");
    write_json(a.json, nullptr);
    return none_found;
  }
  std::printf("well-placed theta: cycle %s chord %u-%u\n", join(c->theta.cycle).c_str(), c->theta.chord.first,
              c->theta.chord.second);
  for (auto [y, w] : c->witnesses) std::printf("  witness %u -> %u\n", y, w);
  write_json(a.json, to_json(*c));
  return ok;
}

struct ExArgs {
  std::size_t n = 0;
  unsigned k = 2, threads = 1;
  std::uint64_t budget = ExOptions{}.node_budget;
  std::string json;
};

int cmd_ex(const ExArgs& a) {
  check_k(a.k);
  ExOptions opt;
  opt.threads = std::max(1u, a.threads);
  opt.node_budget = a.budget;
  const ExResult r = ex_brute(a.n, a.k, opt);
  std::printf("%zu\n", r.max_edges);
  write_json(a.json, {{"n", r.n}, {"k", r.k}, {"ex", r.max_edges}, {"witness", serialize(r.witness)}});
  return ok;
}

struct GenArgs {
  std::string family, out;
  unsigned q = 2;
  std::size_t n = 0, n1 = 0, n2 = 0, delta = 1;
  double p = 0.5;
  std::uint64_t seed = 0;
};

int cmd_gen(const GenArgs& a) {
  Graph g;
  if (a.family == "polarity") g = gen_polarity_graph(a.q);
  else if (a.family == "bipartite") g = gen_random_bipartite(a.n1, a.n2, a.p, a.seed);
  else if (a.family == "min-degree-bipartite") g = gen_min_degree_bipartite(a.n1, a.n2, a.delta, a.seed);
  else if (a.family == "complete") g = complete_graph(a.n);
  else if (a.family == "complete-bipartite") g = complete_bipartite(a.n1, a.n2);
  else if (a.family == "cycle") g = cycle_graph(a.n);
  else if (a.family == "path") g = path_graph(a.n);
  else if (a.family == "tree") g = random_tree(a.n, a.seed);
  else if (a.family == "random") g = random_graph(a.n, a.p, a.seed);
  else g = petersen_graph();
  write_text(a.out, serialize(g));
  return ok;
}

struct BoundArgs {
  std::uint64_t n = 0;
  unsigned k = 2;
  std::string json;
};

int cmd_bound(const BoundArgs& a) {
  check_k(a.k);
  const double b = bound(a.n, a.k);
  std::printf("%.1f\n", b);
  write_json(a.json, {{"n", a.n}, {"k", a.k}, {"bound", b}, {"d_threshold", degree_threshold(a.n, a.k)}});
  return ok;
}

struct AuditArgs {
  std::string file, json;
  unsigned k = 2;
  std::size_t oracle_max_n = 64;
  bool strict = false;
};

int cmd_audit(const AuditArgs& a) {
  check_k(a.k);
  const Graph g = read_graph_file(a.file);
  const BoundAudit r = audit_bound(g, a.k, a.oracle_max_n);
  std::printf("n=%zu edges=%zu bound=%.1f\n", r.n, r.edges, r.bound_value);
  if (!r.cycle_free) std::printf("C%u-free: unknown (over the brute-force cap)\n", 2 * a.k);
  else if (!*r.cycle_free) std::printf("C%u-free: no, cycle %s\n", 2 * a.k, join(r.cycle->vertices).c_str());
  else std::printf("C%u-free: yes, within bound: %s\n", 2 * a.k, *r.within_bound() ? "yes" : "NO");
  write_json(a.json, to_json(r));
  const auto w = r.within_bound();
  return a.strict && w && !*w ? audit_failed : ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Even-cycle exploration, certificates and brute-force oracles"};
  app.require_subcommand(1);

  ExploreArgs ea;
  auto* explore_cmd = app.add_subcommand("explore", "capped BFS levels with growth and min-degree audits");
  explore_cmd->add_option("graph", ea.file, "graph file")->required();
  explore_cmd->add_option("--root", ea.root, "start vertex")->required();
  explore_cmd->add_option("--k", ea.k, "half the cycle length")->required();
  explore_cmd->add_option("--d", ea.d, "density parameter")->required();
  explore_cmd->add_option("--depth", ea.depth, "number of levels (default k)");
  explore_cmd->add_option("--delta", ea.delta, "degree-cap multiplier (default k^3)");
  explore_cmd->add_option("--json", ea.json, "write the audit JSON here ('-' for stdout)");
  explore_cmd->add_flag("--strict", ea.strict, "exit 1 if any audit fails or a hypothesis is unmet");

  FindArgs fa;
  auto* find_cmd = app.add_subcommand("find-cycle", "search for a 2k-cycle and print a verified certificate");
  find_cmd->add_option("graph", fa.file, "graph file")->required();
  find_cmd->add_option("--k", fa.k, "half the cycle length")->required();
  find_cmd->add_option("--d", fa.d, "density parameter");
  find_cmd->add_option("--roots", fa.roots, "exploration roots to try");
  find_cmd->add_option("--oracle-max-n", fa.oracle_max_n, "largest graph handed to the brute-force fallback");
  find_cmd->add_option("--json", fa.json, "write the pipeline report here ('-' for stdout)");

  ThetaArgs ta;
  auto* theta_cmd = app.add_subcommand("theta", "find a theta graph (cycle of length >= 2k with a chord)");
  theta_cmd->add_option("graph", ta.file, "graph file")->required();
  theta_cmd->add_option("--k", ta.k, "cycle length is at least 2k")->required();
  theta_cmd->add_option("--method", ta.method, "auto, exhaustive, min-degree or avg-degree")
      ->check(CLI::IsMember({"auto", "exhaustive", "min-degree", "avg-degree"}));
  theta_cmd->add_option("--json", ta.json, "write the certificate here ('-' for stdout)");

  WellPlacedArgs wa;
  auto* wp_cmd = app.add_subcommand("well-placed", "exhaustive well-placed theta search in a trilayered graph");
  wp_cmd->add_option("graph", wa.file, "host graph file")->required();
  wp_cmd->add_option("layers", wa.layers, "layer file (three lines of vertex ids)")->required();
  wp_cmd->add_option("--k", wa.k, "cycle length is at least 2k")->required();
  wp_cmd->add_option("--json", wa.json, "write the certificate here ('-' for stdout)");

  ExArgs xa;
  auto* ex_cmd = app.add_subcommand("ex", "exact ex(n, C_2k) by exhaustive search");
  ex_cmd->add_option("--n", xa.n, "vertex count")->required();
  ex_cmd->add_option("--k", xa.k, "half the cycle length")->required();
  ex_cmd->add_option("--threads", xa.threads, "worker threads");
  ex_cmd->add_option("--budget", xa.budget, "search node budget");
  ex_cmd->add_option("--json", xa.json, "write the result here ('-' for stdout)");

  GenArgs ga;
  auto* gen_cmd = app.add_subcommand("gen", "write a generated graph file");
  gen_cmd->add_option("family", ga.family, "graph family")
      ->required()
      ->check(CLI::IsMember({"polarity", "bipartite", "min-degree-bipartite", "complete", "complete-bipartite", "cycle",
                             "path", "tree", "random", "petersen"}));
  gen_cmd->add_option("--q", ga.q, "prime order of the projective plane (polarity)");
  gen_cmd->add_option("--n", ga.n, "vertex count");
  gen_cmd->add_option("--n1", ga.n1, "left side size");
  gen_cmd->add_option("--n2", ga.n2, "right side size");
  gen_cmd->add_option("--delta", ga.delta, "minimum degree (min-degree-bipartite)");
  gen_cmd->add_option("--p", ga.p, "edge probability")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--seed", ga.seed, "random seed");
  gen_cmd->add_option("--out", ga.out, "output file (default stdout)");

  BoundArgs ba;
  auto* bound_cmd = app.add_subcommand("bound", "evaluate the edge bound for C_2k-free graphs");
  bound_cmd->add_option("--n", ba.n, "vertex count")->required();
  bound_cmd->add_option("--k", ba.k, "half the cycle length")->required();
  bound_cmd->add_option("--json", ba.json, "write the result here ('-' for stdout)");

  AuditArgs aa;
  auto* audit_cmd = app.add_subcommand("audit", "check a graph against the edge bound");
  audit_cmd->add_option("graph", aa.file, "graph file")->required();
  audit_cmd->add_option("--k", aa.k, "half the cycle length")->required();
  audit_cmd->add_option("--oracle-max-n", aa.oracle_max_n, "largest graph checked by brute force");
  audit_cmd->add_option("--json", aa.json, "write the audit here ('-' for stdout)");
  audit_cmd->add_flag("--strict", aa.strict, "exit 1 if a C_2k-free graph exceeds the bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    if (*explore_cmd) return cmd_explore(ea);
    if (*find_cmd) return cmd_find_cycle(fa);
    if (*theta_cmd) return cmd_theta(ta);
    if (*wp_cmd) return cmd_well_placed(wa);
    if (*ex_cmd) return cmd_ex(xa);
    if (*gen_cmd) return cmd_gen(ga);
    if (*bound_cmd) return cmd_bound(ba);
    if (*audit_cmd) return cmd_audit(aa);
  } catch (const parse_error& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return usage;
  } catch (const precondition_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return usage;
  } catch (const budget_exceeded& e) {
    std::fprintf(stderr, "budget exceeded: %s\n", e.what());
    return over_budget;
  } catch (const internal_contradiction& e) {
    std::fprintf(stderr, "internal contradiction: %s\nstate: %s\n", e.what(), e.state().c_str());
    return contradiction;
  }
  return usage;
}
