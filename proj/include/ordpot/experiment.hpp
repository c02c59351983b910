#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ordpot/game.hpp"
#include "ordpot/replicator.hpp"

namespace ordpot {

struct ExperimentSpec {
  std::vector<int> shape;
  int num_games = 100;
  std::uint64_t master_seed = 0;
  SimulationConfig sim_config;     // max_steps defaults to 1e5
  bool independent_starts = false;  // draw a separate start for the original arm
  int threads = 1;                  // 0 picks hardware concurrency
};

/// One arm of a paired run. Curves are per-step (first entry is step 1).
struct ArmResult {
  bool converged = false;
  int steps = 0;
  double final_rho = 0.0;
  std::vector<double> beta;
  std::vector<double> rho;
};

struct PairedResult {
  int index = 0;
  std::uint64_t game_seed = 0;
  std::uint64_t start_seed = 0;           // start of the potentialized arm
  std::uint64_t original_start_seed = 0;  // == start_seed unless independent starts
  ArmResult potentialized;
  ArmResult original;  // matched horizon: original.steps <= potentialized.steps
};

/// Per-step mean and empirical (population) standard deviation across
/// instances; after an instance's run ends its beta is padded with 0 and its
/// rho with its final value, so every instance contributes at every step.
struct CurveStats {
  std::vector<double> beta_mean, beta_std, rho_mean, rho_std;
};

struct ExperimentSummary {
  std::vector<int> shape;
  int num_games = 0;
  double potentialized_rate = 0.0;
  double original_rate = 0.0;
  double mean_final_rho_potentialized = 0.0;
  double mean_final_rho_original = 0.0;
  double final_rho_ratio = 0.0;  // potentialized / original
  CurveStats potentialized_curve;
  CurveStats original_curve;
};

struct ExclusionRecord {
  int index = 0;
  std::uint64_t game_seed = 0;
  std::string error;
};

struct ExperimentOutput {
  ExperimentSummary summary;
  std::vector<PairedResult> results;
  std::vector<ExclusionRecord> excluded;
};

/// Paired protocol on an explicit game: potentialize, normalize both games,
/// simulate the potentialized game to convergence, then give the original
/// game exactly the step budget the potentialized run used. rho for both
/// arms is measured in the normalized original game. Both arms share the
/// start policy drawn from start_seed unless independent_starts, in which
/// case the original arm draws its own from original_start_seed.
PairedResult run_paired(const Game& game, std::uint64_t start_seed,
                        std::uint64_t original_start_seed, bool independent_starts,
                        const SimulationConfig& config);

/// Same protocol on a game generated from (shape, game_seed).
PairedResult run_paired(const std::vector<int>& shape, std::uint64_t game_seed,
                        std::uint64_t start_seed, std::uint64_t original_start_seed,
                        bool independent_starts, const SimulationConfig& config);

/// Fold a nonempty batch of paired results into rates, mean final rho per
/// arm (with ratio), and padded mean/std curves. Throws std::invalid_argument
/// on an empty batch.
ExperimentSummary aggregate(const std::vector<PairedResult>& results);

/// Runs num_games paired comparisons with per-game seeds derived from
/// master_seed by a counter scheme (game, start, original-start). Pairs may
/// run on a worker pool; output is identical for any thread count. Per-game
/// failures are recorded as exclusions rather than aborting the batch.
ExperimentOutput run_experiment(const ExperimentSpec& spec);

/// Writes summary.json, curves.csv, and results.jsonl into dir (created if
/// missing).
void write_experiment_files(const ExperimentOutput& output, const ExperimentSpec& spec,
                            const std::string& dir);

}  // namespace ordpot
