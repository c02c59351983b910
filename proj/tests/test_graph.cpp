#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "ordpot/graph.hpp"

using namespace ordpot;

namespace {

std::vector<WeightedEdge> random_digraph(int num_vertices, double edge_prob,
                                         std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> weight(-3, 3);
  std::vector<WeightedEdge> edges;
  for (int v = 0; v < num_vertices; ++v) {
    for (int w = 0; w < num_vertices; ++w) {
      if (v != w && coin(rng) < edge_prob) {
        edges.push_back({v, w, static_cast<double>(weight(rng))});
      }
    }
  }
  return edges;
}

std::vector<double> propagate(const Condensation& condensation, TieBreak tie_break) {
  return propagate_potential(condensation, topological_order(condensation, tie_break));
}

}  // namespace

TEST_CASE("chain fixture propagates to (0, 1, 3, 8, 9)") {
  const Condensation condensation = condense(5, fixtures::chain_graph());
  CHECK(condensation.num_components() == 5);  // acyclic, all singletons
  const std::vector<double> phi = propagate(condensation, TieBreak::lowest_id_first);
  CHECK(phi == std::vector<double>{0, 1, 3, 8, 9});
}

TEST_CASE("SCC labels match the mutual-reachability oracle") {
  // two cycles joined by a bridge plus an isolated vertex
  const std::vector<WeightedEdge> known = {
      {0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {2, 3, 1}, {3, 4, 1}, {4, 3, 1},
  };
  const SccPartition parts = strongly_connected_components(6, known);
  CHECK(parts.component_of == oracles::scc_by_reachability(6, known));
  CHECK(parts.components[parts.component_of[0]] == std::vector<int>{0, 1, 2});
  CHECK(parts.components[parts.component_of[3]] == std::vector<int>{3, 4});
  CHECK(parts.components[parts.component_of[5]] == std::vector<int>{5});

  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const auto edges = random_digraph(n, 0.3, rng);
    const SccPartition scc = strongly_connected_components(n, edges);
    CHECK(scc.component_of == oracles::scc_by_reachability(n, edges));
    // components are sorted and consistent with component_of
    for (std::size_t c = 0; c < scc.components.size(); ++c) {
      for (int v : scc.components[c]) {
        CHECK(scc.component_of[v] == static_cast<int>(c));
      }
    }
  }
}

TEST_CASE("condensation keeps the max weight over parallel cross edges") {
  // one 2-cycle {0,1} with internal weights, two edges into vertex 2
  const std::vector<WeightedEdge> edges = {
      {0, 1, 2}, {1, 0, 5}, {0, 2, 1}, {1, 2, 4}, {2, 3, -2},
  };
  const Condensation c = condense(4, edges);
  REQUIRE(c.num_components() == 3);
  const int big = c.component_of[0];
  CHECK(c.component_of[1] == big);
  CHECK(c.internal_max_weight[big] == 5);
  REQUIRE(c.dag_edges.size() == 2);
  CHECK(c.dag_edges[0].tail == big);
  CHECK(c.dag_edges[0].head == c.component_of[2]);
  CHECK(c.dag_edges[0].weight == 4);  // max(1, 4)
  CHECK(c.dag_edges[1].weight == -2);

  // self-loops count as internal weight, not dag edges
  const Condensation loops = condense(2, {{0, 0, 7}, {0, 1, 1}});
  CHECK(loops.internal_max_weight[loops.component_of[0]] == 7);
  CHECK(loops.dag_edges.size() == 1);
}

TEST_CASE("condensation DAG is acyclic and topological order respects edges") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 8);
    const auto edges = random_digraph(n, 0.35, rng);
    const Condensation c = condense(n, edges);
    for (TieBreak tb : {TieBreak::lowest_id_first, TieBreak::highest_id_first}) {
      const std::vector<int> order = topological_order(c, tb);
      REQUIRE(static_cast<int>(order.size()) == c.num_components());
      std::vector<int> position(order.size());
      for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
      for (const auto& e : c.dag_edges) {
        CHECK(position[e.tail] < position[e.head]);
      }
    }
  }
}

TEST_CASE("topological_order rejects a cyclic edge set") {
  Condensation bogus;
  bogus.component_of = {0, 1};
  bogus.components = {{0}, {1}};
  bogus.dag_edges = {{0, 1, 1}, {1, 0, 1}};
  bogus.internal_max_weight = {0, 0};
  CHECK_THROWS_AS(topological_order(bogus), std::logic_error);
}

TEST_CASE("propagation matches relaxation oracle and ignores the tie-break") {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> weight(-4, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 9);
    std::vector<WeightedEdge> dag;
    for (int v = 0; v < n; ++v) {
      for (int w = v + 1; w < n; ++w) {
        if (coin(rng) < 0.4) dag.push_back({v, w, static_cast<double>(weight(rng))});
      }
    }
    const Condensation c = condense(n, dag);
    const std::vector<double> low = propagate(c, TieBreak::lowest_id_first);
    const std::vector<double> high = propagate(c, TieBreak::highest_id_first);
    CHECK(low == high);
    CHECK(low == oracles::potential_by_relaxation(c));
  }
}

TEST_CASE("propagation takes a true max, without clamping at zero") {
  // both predecessors of vertex 2 reach it only through negative edges
  const std::vector<WeightedEdge> edges = {{0, 2, -5}, {1, 2, -7}};
  const Condensation c = condense(3, edges);
  const std::vector<double> phi = propagate(c, TieBreak::lowest_id_first);
  CHECK(phi[c.component_of[0]] == 0);
  CHECK(phi[c.component_of[1]] == 0);
  CHECK(phi[c.component_of[2]] == -5);
}

TEST_CASE("cyclic graphs collapse before propagation") {
  // strict improvement cycle plus an exit edge
  const std::vector<WeightedEdge> edges = {
      {0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {2, 3, 2},
  };
  const Condensation c = condense(4, edges);
  REQUIRE(c.num_components() == 2);
  const std::vector<double> phi = propagate(c, TieBreak::lowest_id_first);
  CHECK(phi[c.component_of[0]] == 0);
  CHECK(phi[c.component_of[3]] == 2);
}
