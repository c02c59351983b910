#include "ordpot/potential.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_set>

namespace ordpot {

namespace {

std::string profile_string(int index, const std::vector<int>& action_counts) {
  const Profile p = profile_from_index(index, action_counts);
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out << ",";
    out << p[i];
  }
  out << ")";
  return out.str();
}

}  // namespace

PotentialAnalysis analyze_potential(const Game& game, TieBreak tie_break) {
  PotentialAnalysis analysis;
  analysis.gamma0 = nonnegative_subgraph(build_deviation_graph(game));
  analysis.condensation = condense(analysis.gamma0);
  const std::vector<int> order = topological_order(analysis.condensation, tie_break);
  analysis.phi.component_values = propagate_potential(analysis.condensation, order);
  analysis.phi.values.resize(analysis.gamma0.num_vertices);
  for (int v = 0; v < analysis.gamma0.num_vertices; ++v) {
    analysis.phi.values[v] =
        analysis.phi.component_values[analysis.condensation.component_of[v]];
  }
  return analysis;
}

PotentialFunction compute_potential(const Game& game, TieBreak tie_break) {
  return analyze_potential(game, tie_break).phi;
}

Game potentialized_game(const Game& game) {
  const PotentialFunction phi = compute_potential(game);
  Game out;
  out.num_players = game.num_players;
  out.action_counts = game.action_counts;
  out.utilities.assign(game.num_players, phi.values);
  return out;
}

VerificationReport verify_potential(const Game& game, const PotentialFunction& phi) {
  VerificationReport report;
  const int total = game.num_profiles();

  const DeviationGraph gamma = build_deviation_graph(game);
  const DeviationGraph gamma0 = nonnegative_subgraph(gamma);
  const Condensation cond = condense(gamma0);

  if (static_cast<int>(phi.values.size()) != total ||
      static_cast<int>(phi.component_values.size()) != cond.num_components()) {
    report.scc_constancy = {false, "potential has wrong shape for this game"};
    return report;
  }

  // 1. constancy on strongly connected components
  for (int v = 0; v < total; ++v) {
    const double expected = phi.component_values[cond.component_of[v]];
    if (phi.values[v] != expected) {
      std::ostringstream w;
      w << "profile " << profile_string(v, game.action_counts) << " has value "
        << phi.values[v] << ", component " << cond.component_of[v] << " has "
        << expected;
      report.scc_constancy = {false, w.str()};
      break;
    }
  }

  // 2. slack across components: the potential difference along every edge of
  // the nonnegative graph that crosses components must cover the edge weight.
  // Edges inside a component are deliberately out of scope here; positive
  // internal weights are what check 4 surfaces.
  for (const auto& e : gamma0.edges) {
    if (cond.component_of[e.tail] == cond.component_of[e.head]) continue;
    if (phi.values[e.head] - phi.values[e.tail] < e.weight) {
      std::ostringstream w;
      w << "edge " << profile_string(e.tail, game.action_counts) << " -> "
        << profile_string(e.head, game.action_counts) << " weight " << e.weight
        << " but potential difference "
        << phi.values[e.head] - phi.values[e.tail];
      report.edge_slack = {false, w.str()};
      break;
    }
  }

  // 3. Bellman minimality: sources are exactly 0, every other component's
  // value is exactly attained by some incoming condensation edge.
  {
    std::vector<std::vector<std::pair<int, double>>> incoming(cond.num_components());
    for (const auto& e : cond.dag_edges) {
      incoming[e.head].emplace_back(e.tail, e.weight);
    }
    for (int c = 0; c < cond.num_components(); ++c) {
      if (incoming[c].empty()) {
        if (phi.component_values[c] != 0.0) {
          std::ostringstream w;
          w << "source component " << c << " has value "
            << phi.component_values[c] << ", expected 0";
          report.bellman_minimality = {false, w.str()};
          break;
        }
        continue;
      }
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& [tail, weight] : incoming[c]) {
        best = std::max(best, phi.component_values[tail] + weight);
      }
      if (phi.component_values[c] != best) {
        std::ostringstream w;
        w << "component " << c << " has value " << phi.component_values[c]
          << ", tightest incoming edge gives " << best;
        report.bellman_minimality = {false, w.str()};
        break;
      }
    }
  }

  // 4. ordinal potential condition for the original game: strict utility
  // gains and strict potential gains must coincide on every deviation pair.
  for (const auto& e : gamma.edges) {
    const bool utility_up = e.weight > 0.0;
    const bool phi_up = phi.values[e.head] - phi.values[e.tail] > 0.0;
    if (utility_up != phi_up) {
      std::ostringstream w;
      w << "deviation " << profile_string(e.tail, game.action_counts) << " -> "
        << profile_string(e.head, game.action_counts) << " by player "
        << e.deviator << ": utility gain " << e.weight
        << ", potential difference "
        << phi.values[e.head] - phi.values[e.tail];
      report.ordinal_sign = {false, w.str()};
      break;
    }
  }

  return report;
}

PropositionReport check_proposition(const Game& game) {
  PropositionReport report;
  const PotentialAnalysis analysis = analyze_potential(game);
  const std::vector<int>& component_of = analysis.condensation.component_of;

  Game pot;
  pot.num_players = game.num_players;
  pot.action_counts = game.action_counts;
  pot.utilities.assign(game.num_players, analysis.phi.values);

  const std::vector<int> strict = strict_nash_indices(game);
  const std::vector<int> pot_nash = pure_nash_indices(pot);
  const std::unordered_set<int> pot_nash_set(pot_nash.begin(), pot_nash.end());

  for (int a : strict) {
    if (!pot_nash_set.count(a)) {
      report.strict_nash_preserved = {
          false, "strict equilibrium " + profile_string(a, game.action_counts) +
                     " lost after potentialization"};
      break;
    }
  }

  const int n = game.num_players;
  const int total = game.num_profiles();
  std::vector<int> stride(n, 1);
  for (int i = n - 2; i >= 0; --i) {
    stride[i] = stride[i + 1] * game.action_counts[i + 1];
  }

  // dominating[i][x] = actions that strictly dominate x for player i.
  std::vector<std::vector<std::vector<int>>> dominating(n);
  for (int i = 0; i < n; ++i) {
    const int count = game.action_counts[i];
    dominating[i].resize(count);
    for (int x = 0; x < count; ++x) {
      for (int y = 0; y < count; ++y) {
        if (y == x) continue;
        bool dominates = true;
        for (int a = 0; a < total && dominates; ++a) {
          if ((a / stride[i]) % count != x) continue;
          dominates = game.utilities[i][a + (y - x) * stride[i]] >
                      game.utilities[i][a];
        }
        if (dominates) dominating[i][x].push_back(y);
      }
    }
  }

  // An equilibrium of the potentialized game can reuse a strictly dominated
  // action only when every domination edge out of it stays inside one
  // strongly connected component of the nonnegative deviation graph. The
  // positive-gain edge then lies on a weak improvement cycle, the potential
  // is tied across it, and the deviation stops being profitable. Any
  // cross-component domination edge at an equilibrium is impossible: the
  // propagated potential strictly increases along it.
  int tied_reuses = 0;
  for (int a : pot_nash) {
    const Profile p = profile_from_index(a, game.action_counts);
    for (int i = 0; i < n && report.no_dominated_equilibria.passed; ++i) {
      if (dominating[i][p[i]].empty()) continue;
      for (int y : dominating[i][p[i]]) {
        const int b = a + (y - p[i]) * stride[i];
        if (component_of[a] != component_of[b]) {
          std::ostringstream w;
          w << "equilibrium " << profile_string(a, game.action_counts)
            << " of the potentialized game uses action " << p[i]
            << " of player " << i
            << ", strictly dominated in the original game, and the domination "
               "edge to "
            << profile_string(b, game.action_counts) << " crosses components";
          report.no_dominated_equilibria = {false, w.str()};
          break;
        }
      }
      ++tied_reuses;
    }
    if (!report.no_dominated_equilibria.passed) break;
  }
  if (report.no_dominated_equilibria.passed && tied_reuses > 0) {
    std::ostringstream w;
    w << tied_reuses
      << " equilibrium/action pairs reuse a dominated action across a "
         "potential tie inside a weak improvement cycle";
    report.no_dominated_equilibria.witness = w.str();
  }

  return report;
}

}  // namespace ordpot
