#include "ordpot/deviation.hpp"

#include <sstream>

namespace ordpot {

namespace {

// Stride of player i's action in the flat profile index.
std::vector<int> index_strides(const std::vector<int>& action_counts) {
  const int n = static_cast<int>(action_counts.size());
  std::vector<int> strides(n, 1);
  for (int i = n - 2; i >= 0; --i) {
    strides[i] = strides[i + 1] * action_counts[i + 1];
  }
  return strides;
}

}  // namespace

std::vector<WeightedEdge> DeviationGraph::as_weighted() const {
  std::vector<WeightedEdge> out;
  out.reserve(edges.size());
  for (const auto& e : edges) {
    out.push_back({e.tail, e.head, e.weight});
  }
  return out;
}

DeviationGraph build_deviation_graph(const Game& game) {
  const int total = game.num_profiles();
  const int n = game.num_players;
  const std::vector<int> strides = index_strides(game.action_counts);

  DeviationGraph graph;
  graph.num_vertices = total;
  std::int64_t deviations = 0;
  for (int i = 0; i < n; ++i) deviations += game.action_counts[i] - 1;
  graph.edges.reserve(static_cast<std::size_t>(total) * deviations);

  std::vector<int> actions(n, 0);
  for (int a = 0; a < total; ++a) {
    for (int i = 0; i < n; ++i) {
      const int base = a - actions[i] * strides[i];
      const double u_here = game.utilities[i][a];
      for (int alt = 0; alt < game.action_counts[i]; ++alt) {
        if (alt == actions[i]) continue;
        const int b = base + alt * strides[i];
        graph.edges.push_back({a, b, game.utilities[i][b] - u_here, i});
      }
    }
    // odometer increment, least significant player last
    for (int i = n - 1; i >= 0; --i) {
      if (++actions[i] < game.action_counts[i]) break;
      actions[i] = 0;
    }
  }
  return graph;
}

DeviationGraph nonnegative_subgraph(const DeviationGraph& graph) {
  DeviationGraph out;
  out.num_vertices = graph.num_vertices;
  for (const auto& e : graph.edges) {
    if (e.weight >= 0.0) out.edges.push_back(e);
  }
  return out;
}

SccPartition strongly_connected_components(const DeviationGraph& graph) {
  return strongly_connected_components(graph.num_vertices, graph.as_weighted());
}

Condensation condense(const DeviationGraph& graph) {
  return condense(graph.num_vertices, graph.as_weighted());
}

bool admits_ordinal_potential(const Game& game) {
  const Condensation cond =
      condense(nonnegative_subgraph(build_deviation_graph(game)));
  for (double w : cond.internal_max_weight) {
    if (w > 0.0) return false;
  }
  return true;
}

namespace {

// strict=false: no deviation strictly improves; strict=true: every
// deviation strictly loses.
std::vector<int> equilibrium_indices(const Game& game, bool strict) {
  const int total = game.num_profiles();
  const int n = game.num_players;
  const std::vector<int> strides = index_strides(game.action_counts);

  std::vector<int> result;
  std::vector<int> actions(n, 0);
  for (int a = 0; a < total; ++a) {
    bool is_equilibrium = true;
    for (int i = 0; i < n && is_equilibrium; ++i) {
      const int base = a - actions[i] * strides[i];
      const double u_here = game.utilities[i][a];
      for (int alt = 0; alt < game.action_counts[i]; ++alt) {
        if (alt == actions[i]) continue;
        const double u_alt = game.utilities[i][base + alt * strides[i]];
        if (strict ? u_alt >= u_here : u_alt > u_here) {
          is_equilibrium = false;
          break;
        }
      }
    }
    if (is_equilibrium) result.push_back(a);
    for (int i = n - 1; i >= 0; --i) {
      if (++actions[i] < game.action_counts[i]) break;
      actions[i] = 0;
    }
  }
  return result;
}

std::vector<Profile> decode_all(const std::vector<int>& indices,
                                const std::vector<int>& action_counts) {
  std::vector<Profile> profiles;
  profiles.reserve(indices.size());
  for (int a : indices) profiles.push_back(profile_from_index(a, action_counts));
  return profiles;
}

}  // namespace

std::vector<int> pure_nash_indices(const Game& game) {
  return equilibrium_indices(game, false);
}

std::vector<int> strict_nash_indices(const Game& game) {
  return equilibrium_indices(game, true);
}

std::vector<Profile> pure_nash(const Game& game) {
  return decode_all(pure_nash_indices(game), game.action_counts);
}

std::vector<Profile> strict_nash(const Game& game) {
  return decode_all(strict_nash_indices(game), game.action_counts);
}

std::vector<int> strictly_dominated_actions(const Game& game, int player) {
  if (player < 0 || player >= game.num_players) {
    throw std::invalid_argument("player id out of range");
  }
  const int total = game.num_profiles();
  const std::vector<int> strides = index_strides(game.action_counts);
  const int count = game.action_counts[player];
  const int stride = strides[player];

  std::vector<int> dominated;
  for (int act = 0; act < count; ++act) {
    bool found_dominator = false;
    for (int alt = 0; alt < count && !found_dominator; ++alt) {
      if (alt == act) continue;
      bool dominates = true;
      // walk the profiles where `player` plays `act`
      for (int a = 0; a < total; ++a) {
        const int own = (a / stride) % count;
        if (own != act) continue;
        const int b = a + (alt - act) * stride;
        if (game.utilities[player][b] <= game.utilities[player][a]) {
          dominates = false;
          break;
        }
      }
      found_dominator = dominates;
    }
    if (found_dominator) dominated.push_back(act);
  }
  return dominated;
}

std::string to_dot(const DeviationGraph& graph, const std::vector<int>& action_counts) {
  std::ostringstream out;
  out << "digraph deviation {\n";
  for (int v = 0; v < graph.num_vertices; ++v) {
    const Profile p = profile_from_index(v, action_counts);
    out << "  v" << v << " [label=\"(";
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i > 0) out << ",";
      out << p[i];
    }
    out << ")\"];\n";
  }
  for (const auto& e : graph.edges) {
    out << "  v" << e.tail << " -> v" << e.head << " [label=\"" << e.weight
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace ordpot
