// Small hand-checked games used across the test binaries.
#pragma once

#include <vector>

#include "ordpot/game.hpp"
#include "ordpot/graph.hpp"

namespace fixtures {

// Five-vertex chain a..e with the two shortcut edges; the reference
// potential is (0, 1, 3, 8, 9).
inline std::vector<ordpot::WeightedEdge> chain_graph() {
  return {
      {0, 1, 1.0}, {0, 2, 3.0}, {1, 2, 2.0},
      {1, 3, 4.0}, {2, 3, 5.0}, {3, 4, 1.0},
  };
}

// 3x3 coordination game with Pareto-ordered pure equilibria
// (0,0) > (1,1) > (2,2); row utilities first.
inline ordpot::Game coordination_game() {
  return ordpot::make_game(2, {3, 3},
                           {{3, 2, 1, 0, 2, 1, 0, 0, 1},
                            {3, 0, 0, 2, 2, 0, 1, 1, 1}});
}

inline std::vector<double> coordination_potential() {
  return {3, 0, 0, 0, 0, 0, 0, 0, 0};
}

// 3x3 game of Voorneveld and Nolde (1997); its deviation graph has a weak
// improvement cycle, so no ordinal potential exists.
inline ordpot::Game voorneveld_nolde_game() {
  return ordpot::make_game(2, {3, 3},
                           {{0, 1, 0, 1, 0, 0, 0, 0, 1},
                            {1, 2, 0, 1, 0, 0, 0, 0, 1}});
}

inline std::vector<double> voorneveld_nolde_potential() {
  return {0, 2, 0, 1, 0, 0, 0, 0, 1};
}

// [[h,0],[0,1]] vs [[0,1],[1,0]] for h > 1: the nonnegative deviation graph
// is one strictly improving 4-cycle, so the potential collapses to zero.
inline ordpot::Game h_family_game(double h) {
  return ordpot::make_game(2, {2, 2}, {{h, 0, 0, 1}, {0, 1, 1, 0}});
}

inline ordpot::Game constant_game(const std::vector<int>& shape, double value) {
  const int total = ordpot::num_profiles(shape);
  const int n = static_cast<int>(shape.size());
  std::vector<std::vector<double>> utilities(n, std::vector<double>(total, value));
  return ordpot::make_game(n, shape, std::move(utilities));
}

inline ordpot::Game matching_pennies() {
  return ordpot::make_game(2, {2, 2}, {{1, -1, -1, 1}, {-1, 1, 1, -1}});
}

// Standard prisoner's dilemma; action 1 (defect) strictly dominates
// action 0 for both players.
inline ordpot::Game prisoners_dilemma() {
  return ordpot::make_game(2, {2, 2}, {{3, 0, 5, 1}, {3, 5, 0, 1}});
}

}  // namespace fixtures
