#include <gtest/gtest.h>

#include <evencycle/graph.hpp>
#include <evencycle/oracle.hpp>
#include <evencycle/random.hpp>

#include "support.hpp"

using namespace evencycle;

namespace {

Graph edges(std::size_t n, std::vector<edge> es) { return Graph::from_edges(n, es); }

}  // namespace

TEST(LoadGraph, Triangle) {
  Graph g = load_graph("3 3\n0 1\n1 2\n0 2");
  EXPECT_EQ(g.order(), 3u);
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g, complete_graph(3));
}

TEST(LoadGraph, FourCycle) { EXPECT_EQ(load_graph("4 4\n0 1\n1 2\n2 3\n3 0\n"), cycle_graph(4)); }

TEST(LoadGraph, Errors) {
  auto line_of = [](const char* text) {
    try {
      load_graph(text);
    } catch (const parse_error& e) {
      return e.line();
    }
    return std::size_t(-1);
  };
  EXPECT_EQ(line_of("2 1\n0 0"), 2u);         // self-loop
  EXPECT_EQ(line_of("3 2\n0 1\n1 0"), 3u);    // duplicate
  EXPECT_EQ(line_of("3 1\n0 3"), 2u);         // id >= n
  EXPECT_EQ(line_of("3 1\n0 x"), 2u);         // malformed
  EXPECT_EQ(line_of("3 1\n0 1 2"), 2u);       // trailing token
  EXPECT_NE(line_of("3 2\n0 1"), std::size_t(-1));  // too few edges
  EXPECT_NE(line_of("3 1\n0 1\n1 2"), std::size_t(-1));
  EXPECT_NE(line_of(""), std::size_t(-1));
}

TEST(LoadGraph, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Graph g = random_graph(3 + seed % 17, 0.3, seed);
    EXPECT_EQ(load_graph(serialize(g)), g);
  }
  EXPECT_EQ(serialize(load_graph("3 2\n2 1\n0 2\n")), "3 2\n0 2\n1 2\n");
}

TEST(Graph, Invariants) {
  Graph g = petersen_graph();
  std::size_t sum = 0;
  for (vertex v = 0; v < g.order(); ++v) {
    sum += g.degree(v);
    for (vertex w : g.neighbors(v)) EXPECT_TRUE(g.has_edge(w, v));
    EXPECT_FALSE(g.has_edge(v, v));
  }
  EXPECT_EQ(sum, 2 * g.size());
  EXPECT_THROW(edges(3, {{0, 1}, {1, 0}}), precondition_error);
  EXPECT_THROW(edges(3, {{1, 1}}), precondition_error);
}

TEST(BipartiteHalf, Triangle) {
  auto h = bipartite_half(complete_graph(3));
  EXPECT_EQ(h.subgraph.size(), 2u);
}

TEST(BipartiteHalf, KeepsBipartite) {
  for (Graph g : {complete_bipartite(3, 4), cycle_graph(8), petersen_graph()}) {
    auto h = bipartite_half(g);
    if (is_bipartite(g)) {
      EXPECT_EQ(h.subgraph.size(), g.size());
    }
    EXPECT_TRUE(is_bipartite(h.subgraph));
  }
}

TEST(BipartiteHalf, K4MatchesBruteForceMaxCut) {
  const Graph k4 = complete_graph(4);
  EXPECT_EQ(testsupport::brute_max_cut(k4), 4u);
  EXPECT_EQ(bipartite_half(k4).subgraph.size(), 4u);
}

TEST(BipartiteHalf, HalfTheEdgesAndLocallyOptimal) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Graph g = random_graph(2 + seed % 25, 0.1 + 0.05 * double(seed % 15), seed);
    auto h = bipartite_half(g);
    EXPECT_GE(2 * h.subgraph.size(), g.size());
    std::vector<int> side(g.order(), 0);
    for (vertex v : h.parts.right) side[v] = 1;
    EXPECT_EQ(h.parts.left.size() + h.parts.right.size(), g.order());
    for (auto [u, v] : h.subgraph.edges()) EXPECT_NE(side[u], side[v]);
    for (auto [u, v] : g.edges()) {
      if (side[u] != side[v]) {
        EXPECT_TRUE(h.subgraph.has_edge(u, v));
      }
    }
    for (vertex v = 0; v < g.order(); ++v) {
      std::size_t same = 0;
      for (vertex w : g.neighbors(v)) same += side[w] == side[v];
      EXPECT_LE(2 * same, g.degree(v)) << "moving " << v << " would improve the cut";
    }
  }
  EXPECT_THROW(bipartite_half(Graph{}), precondition_error);
}

TEST(MinDegreeCore, Examples) {
  EXPECT_EQ(min_degree_core(path_graph(3), 2).graph.order(), 0u);
  auto k4 = min_degree_core(complete_graph(4), 3);
  EXPECT_EQ(k4.graph, complete_graph(4));
  std::vector<edge> es = cycle_graph(6).edges();
  es.emplace_back(0, 6);
  auto c6 = min_degree_core(Graph::from_edges(7, es), 2);
  EXPECT_EQ(c6.graph, cycle_graph(6));
  EXPECT_EQ(c6.to_parent, (std::vector<vertex>{0, 1, 2, 3, 4, 5}));
  EXPECT_THROW(min_degree_core(k4.graph, 0), precondition_error);
}

TEST(MinDegreeCore, IdempotentOrderIndependentAndMaximal) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Graph g = random_graph(5 + seed % 20, 0.25, seed);
    for (std::size_t delta : {1u, 2u, 3u}) {
      auto core = min_degree_core(g, delta);
      if (core.graph.order()) {
        EXPECT_GE(core.graph.min_degree(), delta);
      }
      EXPECT_EQ(min_degree_core(core.graph, delta).graph, core.graph);
      // random peeling order reaches the same set
      SeededRng rng(seed * 7 + delta);
      std::vector<char> alive(g.order(), 1);
      for (bool changed = true; changed;) {
        changed = false;
        auto order = rng.sample(g.order(), g.order());
        for (auto v : order) {
          if (!alive[v]) continue;
          std::size_t d = 0;
          for (vertex w : g.neighbors(vertex(v))) d += alive[w];
          if (d < delta) alive[v] = 0, changed = true;
        }
      }
      std::vector<vertex> keep;
      for (vertex v = 0; v < g.order(); ++v)
        if (alive[v]) keep.push_back(v);
      EXPECT_EQ(keep, core.to_parent);
      if (g.order() && g.average_degree() >= 2.0 * double(delta)) {
        EXPECT_GT(core.graph.order(), 0u);
      }
    }
  }
}

TEST(Degeneracy, Known) {
  EXPECT_EQ(degeneracy(complete_graph(5)), 4u);
  EXPECT_EQ(degeneracy(petersen_graph()), 3u);
  EXPECT_EQ(degeneracy(random_tree(12, 3)), 1u);
}

TEST(VerifyCycle, Examples) {
  const Graph c4 = cycle_graph(4);
  EXPECT_TRUE(verify_cycle(c4, {{0, 1, 2, 3}}, 4));
  auto bad = verify_cycle(c4, {{0, 1, 3, 2}}, 4);
  EXPECT_EQ(bad.defect, CycleDefect::missing_edge);
  EXPECT_NE(bad.detail.find("(1,3)"), std::string::npos);
  EXPECT_EQ(verify_cycle(cycle_graph(6), {{0, 1, 2, 3, 4, 5}}, 4).defect, CycleDefect::length_mismatch);
  EXPECT_EQ(verify_cycle(c4, {{0, 1, 0, 1}}, 4).defect, CycleDefect::repeated_vertex);
  EXPECT_EQ(verify_cycle(c4, {{0, 1, 9, 3}}, 4).defect, CycleDefect::vertex_out_of_range);
  EXPECT_EQ(verify_cycle(c4, {{0, 1}}, 2).defect, CycleDefect::too_short);
}

TEST(Subgraphs, CrossingAndInduced) {
  const Graph g = complete_graph(5);
  std::vector<vertex> x{0, 1}, y{3, 4};
  auto s = crossing_subgraph(g, x, y);
  EXPECT_EQ(s.graph.order(), 4u);
  EXPECT_EQ(s.graph.size(), 4u);
  EXPECT_TRUE(is_bipartite(s.graph));
  EXPECT_EQ(edges_between(g, x, y), 4u);
  std::vector<vertex> overlap{1, 2};
  EXPECT_THROW(crossing_subgraph(g, x, overlap), precondition_error);
  auto ind = induced_subgraph(g, std::vector<vertex>{4, 2});
  EXPECT_EQ(ind.to_parent, (std::vector<vertex>{2, 4}));
  EXPECT_EQ(ind.graph.size(), 1u);
}
