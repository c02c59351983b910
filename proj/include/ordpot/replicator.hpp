#pragma once

#include <cstdint>
#include <vector>

#include "ordpot/game.hpp"

namespace ordpot {

/// One probability vector per player; vector i lives on the simplex over
/// player i's actions. The joint stochastic action is the product measure.
struct Policy {
  std::vector<std::vector<double>> per_player;
};

Policy uniform_policy(const std::vector<int>& action_counts);

/// Each player's vector drawn uniformly from its simplex (normalized
/// exponential variates). Deterministic per seed (mt19937_64).
Policy random_policy(const std::vector<int>& action_counts, std::uint64_t seed);

/// Throws std::invalid_argument unless every vector matches its action
/// count, has entries in [0,1], and sums to 1 within 1e-9.
void validate_policy(const Policy& policy, const std::vector<int>& action_counts);

struct SimulationConfig {
  double step_size = 1e-2;
  double beta_threshold = 1e-9;
  int patience_steps = 1000;
  int max_steps = 100000;
  int policy_stride = 10;  // record every k-th policy; 0 disables recording
};

struct SimulationTrace {
  std::vector<Policy> policies;  // thinned by policy_stride, starts at t=0
  std::vector<double> beta_series;  // per step, first entry is beta(1)
  std::vector<double> rho_series;   // per step, measured in the reward game
  bool converged = false;
  int steps_run = 0;
  Policy final_policy;
};

/// Right-hand side of the replicator ODE:
/// dpi_ik = pi_ik * (E[u_i | action k] - E[u_i]), expectations taken under
/// the opponents' joint policy and the full joint policy respectively.
/// Every player's tangent vector sums to zero.
std::vector<std::vector<double>> replicator_field(const Game& game, const Policy& policy);

/// One classical fourth-order Runge-Kutta step followed by simplex repair
/// (clamp negative entries to zero, renormalize each player's vector).
/// Throws std::runtime_error if a player's vector no longer has positive
/// mass before renormalization.
Policy rk4_step(const Game& game, const Policy& policy, double step_size);

/// Integrates the replicator dynamics of `game`, recording per-step policy
/// variability beta(t) = max_i ||pi_i(t) - pi_i(t-1)||_2 and the players'
/// average expected reward rho(t) measured with `reward_game`'s utilities.
/// Convergence is declared at the first step preceded by a full
/// patience-window of sub-threshold betas; otherwise the run stops at
/// max_steps.
SimulationTrace simulate(const Game& game, const Game& reward_game,
                         const Policy& start, const SimulationConfig& config);

/// Average expected reward (1/n) sum_i E[u_i] under the joint policy.
double average_expected_reward(const Game& reward_game, const Policy& policy);

}  // namespace ordpot
