#include "ordpot/replicator.hpp"

#include <cassert>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace ordpot {

namespace {

struct Layout {
  int n = 0;
  int total = 0;
  std::vector<int> counts;
  std::vector<int> offsets;  // player i's block is [offsets[i], offsets[i+1])

  int size() const { return offsets.back(); }
};

Layout make_layout(const std::vector<int>& action_counts) {
  Layout layout;
  layout.n = static_cast<int>(action_counts.size());
  layout.total = num_profiles(action_counts);
  layout.counts = action_counts;
  layout.offsets.assign(layout.n + 1, 0);
  for (int i = 0; i < layout.n; ++i) {
    layout.offsets[i + 1] = layout.offsets[i] + action_counts[i];
  }
  return layout;
}

struct Workspace {
  Layout layout;
  std::vector<const double*> utilities;  // per player, borrowed from the game
  std::vector<double> action_value;      // per (player, action)
  std::vector<double> total_value;       // per player
  std::vector<double> prefix, suffix;
  std::vector<int> actions;
  std::vector<double> k1, k2, k3, k4, stage;

  explicit Workspace(const Game& game)
      : layout(make_layout(game.action_counts)),
        action_value(layout.size()),
        total_value(layout.n),
        prefix(layout.n + 1),
        suffix(layout.n + 1),
        actions(layout.n),
        k1(layout.size()),
        k2(layout.size()),
        k3(layout.size()),
        k4(layout.size()),
        stage(layout.size()) {
    utilities.reserve(layout.n);
    for (const auto& tensor : game.utilities) utilities.push_back(tensor.data());
  }
};

// dpi_ik = pi_ik * (sum_{a_-i} u_i(k, a_-i) pi_-i(a_-i) - sum_a u_i(a) pi(a)).
// Both expectations are evaluated exactly by a single pass over all
// profiles, with prefix/suffix products giving each player's leave-one-out
// probability.
void eval_field(Workspace& ws, const double* state, double* out) {
  const Layout& layout = ws.layout;
  std::fill(ws.action_value.begin(), ws.action_value.end(), 0.0);
  std::fill(ws.total_value.begin(), ws.total_value.end(), 0.0);
  std::fill(ws.actions.begin(), ws.actions.end(), 0);

  ws.prefix[0] = 1.0;
  ws.suffix[layout.n] = 1.0;
  for (int a = 0; a < layout.total; ++a) {
    for (int i = 0; i < layout.n; ++i) {
      ws.prefix[i + 1] = ws.prefix[i] * state[layout.offsets[i] + ws.actions[i]];
    }
    for (int i = layout.n - 1; i >= 0; --i) {
      ws.suffix[i] = ws.suffix[i + 1] * state[layout.offsets[i] + ws.actions[i]];
    }
    const double joint = ws.prefix[layout.n];
    for (int i = 0; i < layout.n; ++i) {
      const double u = ws.utilities[i][a];
      ws.action_value[layout.offsets[i] + ws.actions[i]] +=
          u * ws.prefix[i] * ws.suffix[i + 1];
      ws.total_value[i] += u * joint;
    }
    for (int i = layout.n - 1; i >= 0; --i) {
      if (++ws.actions[i] < layout.counts[i]) break;
      ws.actions[i] = 0;
    }
  }

  for (int i = 0; i < layout.n; ++i) {
    for (int k = layout.offsets[i]; k < layout.offsets[i + 1]; ++k) {
      out[k] = state[k] * (ws.action_value[k] - ws.total_value[i]);
    }
  }
}

double eval_average_reward(Workspace& ws, const double* state) {
  const Layout& layout = ws.layout;
  std::fill(ws.actions.begin(), ws.actions.end(), 0);
  double sum = 0.0;
  for (int a = 0; a < layout.total; ++a) {
    double joint = 1.0;
    for (int i = 0; i < layout.n; ++i) {
      joint *= state[layout.offsets[i] + ws.actions[i]];
    }
    double u_sum = 0.0;
    for (int i = 0; i < layout.n; ++i) u_sum += ws.utilities[i][a];
    sum += joint * u_sum;
    for (int i = layout.n - 1; i >= 0; --i) {
      if (++ws.actions[i] < layout.counts[i]) break;
      ws.actions[i] = 0;
    }
  }
  return sum / layout.n;
}

// Clamp negatives to zero and renormalize each player's vector. `step` is
// only used for error context (-1 when unknown).
void repair_simplex(const Layout& layout, double* state, int step, bool check_drift) {
  for (int i = 0; i < layout.n; ++i) {
    double raw_sum = 0.0;
    for (int k = layout.offsets[i]; k < layout.offsets[i + 1]; ++k) {
      raw_sum += state[k];
    }
    if (check_drift) {
      assert(std::abs(raw_sum - 1.0) < 1e-6 && "per-step simplex drift too large");
    }
    double sum = 0.0;
    for (int k = layout.offsets[i]; k < layout.offsets[i + 1]; ++k) {
      if (state[k] < 0.0) state[k] = 0.0;
      sum += state[k];
    }
    if (!(sum > 0.0) || !std::isfinite(sum)) {
      std::string where = step >= 0 ? " at step " + std::to_string(step) : "";
      throw std::runtime_error("simplex repair failed for player " +
                               std::to_string(i) + where +
                               ": vector has no positive mass");
    }
    for (int k = layout.offsets[i]; k < layout.offsets[i + 1]; ++k) {
      state[k] /= sum;
    }
  }
}

void rk4_advance(Workspace& ws, std::vector<double>& state, double h, int step,
                 bool check_drift) {
  const int size = ws.layout.size();
  eval_field(ws, state.data(), ws.k1.data());
  for (int k = 0; k < size; ++k) ws.stage[k] = state[k] + 0.5 * h * ws.k1[k];
  eval_field(ws, ws.stage.data(), ws.k2.data());
  for (int k = 0; k < size; ++k) ws.stage[k] = state[k] + 0.5 * h * ws.k2[k];
  eval_field(ws, ws.stage.data(), ws.k3.data());
  for (int k = 0; k < size; ++k) ws.stage[k] = state[k] + h * ws.k3[k];
  eval_field(ws, ws.stage.data(), ws.k4.data());
  for (int k = 0; k < size; ++k) {
    state[k] += h / 6.0 * (ws.k1[k] + 2.0 * (ws.k2[k] + ws.k3[k]) + ws.k4[k]);
  }
  repair_simplex(ws.layout, state.data(), step, check_drift);
}

std::vector<double> flatten(const Policy& policy, const Layout& layout) {
  std::vector<double> state;
  state.reserve(layout.size());
  for (const auto& v : policy.per_player) {
    state.insert(state.end(), v.begin(), v.end());
  }
  return state;
}

Policy unflatten(const std::vector<double>& state, const Layout& layout) {
  Policy policy;
  policy.per_player.resize(layout.n);
  for (int i = 0; i < layout.n; ++i) {
    policy.per_player[i].assign(state.begin() + layout.offsets[i],
                                state.begin() + layout.offsets[i + 1]);
  }
  return policy;
}

void validate_config(const SimulationConfig& config) {
  if (!(config.step_size > 0.0)) {
    throw std::invalid_argument("step_size must be positive");
  }
  if (!(config.beta_threshold > 0.0)) {
    throw std::invalid_argument("beta_threshold must be positive");
  }
  if (config.patience_steps < 1) {
    throw std::invalid_argument("patience_steps must be positive");
  }
  if (config.max_steps < 1) {
    throw std::invalid_argument("max_steps must be positive");
  }
  if (config.policy_stride < 0) {
    throw std::invalid_argument("policy_stride must be nonnegative");
  }
}

}  // namespace

Policy uniform_policy(const std::vector<int>& action_counts) {
  Policy policy;
  policy.per_player.reserve(action_counts.size());
  for (int count : action_counts) {
    if (count < 1) throw std::invalid_argument("action count must be >= 1");
    policy.per_player.emplace_back(count, 1.0 / count);
  }
  return policy;
}

Policy random_policy(const std::vector<int>& action_counts, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> exponential(1.0);
  Policy policy;
  policy.per_player.reserve(action_counts.size());
  for (int count : action_counts) {
    if (count < 1) throw std::invalid_argument("action count must be >= 1");
    std::vector<double> v(count);
    double sum = 0.0;
    for (double& x : v) {
      do {
        x = exponential(rng);
      } while (!(x > 0.0));
      sum += x;
    }
    for (double& x : v) x /= sum;
    policy.per_player.push_back(std::move(v));
  }
  return policy;
}

void validate_policy(const Policy& policy, const std::vector<int>& action_counts) {
  if (policy.per_player.size() != action_counts.size()) {
    throw std::invalid_argument("policy has " +
                                std::to_string(policy.per_player.size()) +
                                " vectors, expected " +
                                std::to_string(action_counts.size()));
  }
  for (std::size_t i = 0; i < action_counts.size(); ++i) {
    const auto& v = policy.per_player[i];
    if (static_cast<int>(v.size()) != action_counts[i]) {
      throw std::invalid_argument("policy vector for player " + std::to_string(i) +
                                  " has wrong length");
    }
    double sum = 0.0;
    for (double x : v) {
      if (!(x >= 0.0) || !(x <= 1.0)) {
        throw std::invalid_argument("policy entry out of [0,1] for player " +
                                    std::to_string(i));
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("policy vector for player " + std::to_string(i) +
                                  " sums to " + std::to_string(sum));
    }
  }
}

std::vector<std::vector<double>> replicator_field(const Game& game, const Policy& policy) {
  validate_policy(policy, game.action_counts);
  Workspace ws(game);
  const std::vector<double> state = flatten(policy, ws.layout);
  std::vector<double> out(ws.layout.size());
  eval_field(ws, state.data(), out.data());
  return unflatten(out, ws.layout).per_player;
}

Policy rk4_step(const Game& game, const Policy& policy, double step_size) {
  if (!(step_size > 0.0)) {
    throw std::invalid_argument("step_size must be positive");
  }
  validate_policy(policy, game.action_counts);
  Workspace ws(game);
  std::vector<double> state = flatten(policy, ws.layout);
  rk4_advance(ws, state, step_size, -1, /*check_drift=*/false);
  return unflatten(state, ws.layout);
}

double average_expected_reward(const Game& reward_game, const Policy& policy) {
  validate_policy(policy, reward_game.action_counts);
  Workspace ws(reward_game);
  const std::vector<double> state = flatten(policy, ws.layout);
  return eval_average_reward(ws, state.data());
}

SimulationTrace simulate(const Game& game, const Game& reward_game,
                         const Policy& start, const SimulationConfig& config) {
  validate_config(config);
  if (!game.same_shape(reward_game)) {
    throw std::invalid_argument("game and reward game have different shapes");
  }
  validate_policy(start, game.action_counts);

  Workspace ws(game);
  Workspace reward_ws(reward_game);
  std::vector<double> state = flatten(start, ws.layout);
  std::vector<double> prev = state;

  SimulationTrace trace;
  if (config.policy_stride > 0) {
    trace.policies.push_back(unflatten(state, ws.layout));
  }

  int streak = 0;
  int t = 0;
  while (t < config.max_steps) {
    ++t;
    rk4_advance(ws, state, config.step_size, t, /*check_drift=*/true);

    double beta = 0.0;
    for (int i = 0; i < ws.layout.n; ++i) {
      double sq = 0.0;
      for (int k = ws.layout.offsets[i]; k < ws.layout.offsets[i + 1]; ++k) {
        const double d = state[k] - prev[k];
        sq += d * d;
      }
      beta = std::max(beta, std::sqrt(sq));
    }
    trace.beta_series.push_back(beta);
    trace.rho_series.push_back(eval_average_reward(reward_ws, state.data()));
    if (config.policy_stride > 0 && t % config.policy_stride == 0) {
      trace.policies.push_back(unflatten(state, ws.layout));
    }
    prev = state;

    streak = beta <= config.beta_threshold ? streak + 1 : 0;
    if (streak > config.patience_steps) {
      trace.converged = true;
      break;
    }
  }
  trace.steps_run = t;
  trace.final_policy = unflatten(state, ws.layout);
  trace.beta_series.shrink_to_fit();  // traces outlive the run by a lot
  trace.rho_series.shrink_to_fit();
  return trace;
}

}  // namespace ordpot
