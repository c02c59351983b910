#pragma once

#include <string>
#include <vector>

#include "ordpot/game.hpp"
#include "ordpot/graph.hpp"

namespace ordpot {

struct DeviationEdge {
  int tail = 0;      // flat profile index of the deviating player's origin
  int head = 0;      // flat profile index after the deviation
  double weight = 0.0;  // deviator's utility gain
  int deviator = 0;  // the single player whose action differs
};

/// Weighted directed graph on joint action profiles. Every edge is a
/// unilateral single-player deviation, weighted by that player's utility
/// gain. Edges are stored grouped by tail vertex in a canonical order
/// (profile index, then deviator, then alternative action).
struct DeviationGraph {
  int num_vertices = 0;
  std::vector<DeviationEdge> edges;

  std::vector<WeightedEdge> as_weighted() const;
};

/// Full deviation graph: both directions of every deviation pair, with
/// antisymmetric weights w(a,a') = u_i(a') - u_i(a).
DeviationGraph build_deviation_graph(const Game& game);

/// Same vertices, edges restricted to weight >= 0.
DeviationGraph nonnegative_subgraph(const DeviationGraph& graph);

SccPartition strongly_connected_components(const DeviationGraph& graph);
Condensation condense(const DeviationGraph& graph);

/// A game admits an ordinal potential iff all edges inside the strongly
/// connected components of its nonnegative deviation graph have zero
/// weight, i.e. every component's internal max weight vanishes in the
/// condensation.
bool admits_ordinal_potential(const Game& game);

/// Profiles where no player has a strictly improving unilateral deviation.
std::vector<Profile> pure_nash(const Game& game);
/// Profiles where every unilateral deviation is strictly worse.
std::vector<Profile> strict_nash(const Game& game);

std::vector<int> pure_nash_indices(const Game& game);
std::vector<int> strict_nash_indices(const Game& game);

/// Actions of `player` that some single alternative beats strictly against
/// every opponent profile (pure-strategy strict dominance).
std::vector<int> strictly_dominated_actions(const Game& game, int player);

/// Graphviz DOT rendering for debugging; vertex labels are profile tuples,
/// edge labels are weights.
std::string to_dot(const DeviationGraph& graph, const std::vector<int>& action_counts);

}  // namespace ordpot
