#include "ordpot/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ordpot/potential.hpp"
#include "ordpot/rng.hpp"

namespace ordpot {

namespace {

ArmResult arm_from_trace(SimulationTrace&& trace) {
  ArmResult arm;
  arm.converged = trace.converged;
  arm.steps = trace.steps_run;
  arm.final_rho = trace.rho_series.back();
  arm.beta = std::move(trace.beta_series);
  arm.rho = std::move(trace.rho_series);
  return arm;
}

// Mean/std fold for one arm; series shorter than max_len are padded with
// beta = 0 and rho = the instance's final value.
CurveStats fold_arm(const std::vector<const ArmResult*>& arms, int max_len) {
  CurveStats stats;
  stats.beta_mean.resize(max_len);
  stats.beta_std.resize(max_len);
  stats.rho_mean.resize(max_len);
  stats.rho_std.resize(max_len);
  const double n = static_cast<double>(arms.size());
  for (int t = 0; t < max_len; ++t) {
    double beta_sum = 0.0, beta_sq = 0.0, rho_sum = 0.0, rho_sq = 0.0;
    for (const ArmResult* arm : arms) {
      const double b =
          t < static_cast<int>(arm->beta.size()) ? arm->beta[t] : 0.0;
      const double r =
          t < static_cast<int>(arm->rho.size()) ? arm->rho[t] : arm->final_rho;
      beta_sum += b;
      beta_sq += b * b;
      rho_sum += r;
      rho_sq += r * r;
    }
    const double beta_mean = beta_sum / n;
    const double rho_mean = rho_sum / n;
    stats.beta_mean[t] = beta_mean;
    stats.beta_std[t] = std::sqrt(std::max(beta_sq / n - beta_mean * beta_mean, 0.0));
    stats.rho_mean[t] = rho_mean;
    stats.rho_std[t] = std::sqrt(std::max(rho_sq / n - rho_mean * rho_mean, 0.0));
  }
  return stats;
}

void append_float(std::string& line, double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  line += buf;
}

}  // namespace

PairedResult run_paired(const Game& game, std::uint64_t start_seed,
                        std::uint64_t original_start_seed, bool independent_starts,
                        const SimulationConfig& config) {
  PairedResult out;
  out.start_seed = start_seed;
  out.original_start_seed = independent_starts ? original_start_seed : start_seed;

  const Game normalized_original = normalize_rewards(game);
  const Game normalized_potentialized = normalize_rewards(potentialized_game(game));

  SimulationConfig run_config = config;
  run_config.policy_stride = 0;  // scalar curves only

  const Policy start = random_policy(game.action_counts, start_seed);
  SimulationTrace pot_trace =
      simulate(normalized_potentialized, normalized_original, start, run_config);

  SimulationConfig original_config = run_config;
  original_config.max_steps = pot_trace.steps_run;  // matched horizon
  const Policy original_start =
      independent_starts ? random_policy(game.action_counts, original_start_seed)
                         : start;
  SimulationTrace orig_trace =
      simulate(normalized_original, normalized_original, original_start, original_config);

  out.potentialized = arm_from_trace(std::move(pot_trace));
  out.original = arm_from_trace(std::move(orig_trace));
  return out;
}

PairedResult run_paired(const std::vector<int>& shape, std::uint64_t game_seed,
                        std::uint64_t start_seed, std::uint64_t original_start_seed,
                        bool independent_starts, const SimulationConfig& config) {
  try {
    const Game game = random_game(shape, game_seed);
    PairedResult out =
        run_paired(game, start_seed, original_start_seed, independent_starts, config);
    out.game_seed = game_seed;
    return out;
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string(e.what()) + " [game_seed=" +
                             std::to_string(game_seed) + " start_seed=" +
                             std::to_string(start_seed) + " original_start_seed=" +
                             std::to_string(original_start_seed) + "]");
  }
}

ExperimentSummary aggregate(const std::vector<PairedResult>& results) {
  if (results.empty()) {
    throw std::invalid_argument("aggregate needs at least one result");
  }
  ExperimentSummary summary;
  summary.num_games = static_cast<int>(results.size());

  int pot_converged = 0, orig_converged = 0;
  double pot_rho = 0.0, orig_rho = 0.0;
  int max_len = 0;
  std::vector<const ArmResult*> pot_arms, orig_arms;
  pot_arms.reserve(results.size());
  orig_arms.reserve(results.size());
  for (const PairedResult& r : results) {
    pot_converged += r.potentialized.converged ? 1 : 0;
    orig_converged += r.original.converged ? 1 : 0;
    pot_rho += r.potentialized.final_rho;
    orig_rho += r.original.final_rho;
    max_len = std::max(max_len, static_cast<int>(r.potentialized.beta.size()));
    max_len = std::max(max_len, static_cast<int>(r.original.beta.size()));
    pot_arms.push_back(&r.potentialized);
    orig_arms.push_back(&r.original);
  }
  const double n = static_cast<double>(results.size());
  summary.potentialized_rate = pot_converged / n;
  summary.original_rate = orig_converged / n;
  summary.mean_final_rho_potentialized = pot_rho / n;
  summary.mean_final_rho_original = orig_rho / n;
  summary.final_rho_ratio =
      summary.mean_final_rho_potentialized / summary.mean_final_rho_original;
  summary.potentialized_curve = fold_arm(pot_arms, max_len);
  summary.original_curve = fold_arm(orig_arms, max_len);
  return summary;
}

ExperimentOutput run_experiment(const ExperimentSpec& spec) {
  if (spec.num_games < 1) {
    throw std::invalid_argument("num_games must be positive");
  }
  if (spec.shape.empty()) {
    throw std::invalid_argument("shape must be nonempty");
  }
  num_profiles(spec.shape);  // validates the shape up front

  int threads = spec.threads;
  if (threads == 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
  }
  threads = std::min(threads, spec.num_games);

  std::vector<std::optional<PairedResult>> slots(spec.num_games);
  std::vector<std::optional<ExclusionRecord>> failures(spec.num_games);
  std::atomic<int> next{0};
  auto worker = [&]() {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= spec.num_games) break;
      const std::uint64_t game_seed = splitmix64_at(spec.master_seed, 3ull * i);
      const std::uint64_t start_seed = splitmix64_at(spec.master_seed, 3ull * i + 1);
      const std::uint64_t original_start_seed =
          splitmix64_at(spec.master_seed, 3ull * i + 2);
      try {
        PairedResult r = run_paired(spec.shape, game_seed, start_seed,
                                    original_start_seed, spec.independent_starts,
                                    spec.sim_config);
        r.index = i;
        slots[i] = std::move(r);
      } catch (const std::exception& e) {
        failures[i] = ExclusionRecord{i, game_seed, e.what()};
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  ExperimentOutput output;
  output.results.reserve(spec.num_games);
  for (int i = 0; i < spec.num_games; ++i) {
    if (slots[i]) {
      output.results.push_back(std::move(*slots[i]));
    } else if (failures[i]) {
      output.excluded.push_back(std::move(*failures[i]));
    }
  }
  if (output.results.empty()) {
    throw std::runtime_error("every game failed; first error: " +
                             output.excluded.front().error);
  }
  output.summary = aggregate(output.results);
  output.summary.shape = spec.shape;
  return output;
}

void write_experiment_files(const ExperimentOutput& output, const ExperimentSpec& spec,
                            const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const ExperimentSummary& s = output.summary;

  nlohmann::json j;
  j["shape"] = spec.shape;
  j["num_games"] = spec.num_games;
  j["games_aggregated"] = output.results.size();
  j["master_seed"] = spec.master_seed;
  j["rng"] = "mt19937_64";
  j["seed_derivation"] = "splitmix64(master_seed, 3*i + {0: game, 1: start, 2: original_start})";
  j["independent_starts"] = spec.independent_starts;
  j["step_size"] = spec.sim_config.step_size;
  j["beta_threshold"] = spec.sim_config.beta_threshold;
  j["patience_steps"] = spec.sim_config.patience_steps;
  j["max_steps"] = spec.sim_config.max_steps;
  j["potentialized"] = {{"convergence_rate", s.potentialized_rate},
                        {"mean_final_rho", s.mean_final_rho_potentialized}};
  j["original"] = {{"convergence_rate", s.original_rate},
                   {"mean_final_rho", s.mean_final_rho_original}};
  j["final_rho_ratio"] = s.final_rho_ratio;
  j["excluded"] = nlohmann::json::array();
  for (const ExclusionRecord& e : output.excluded) {
    j["excluded"].push_back({{"index", e.index},
                             {"game_seed", e.game_seed},
                             {"error", e.error}});
  }
  {
    std::ofstream file(fs::path(dir) / "summary.json");
    if (!file) throw std::runtime_error("cannot write summary.json in " + dir);
    file << j.dump(2) << '\n';
  }

  {
    std::ofstream file(fs::path(dir) / "curves.csv");
    if (!file) throw std::runtime_error("cannot write curves.csv in " + dir);
    file << "step,pot_beta_mean,pot_beta_std,pot_rho_mean,pot_rho_std,"
            "orig_beta_mean,orig_beta_std,orig_rho_mean,orig_rho_std\n";
    const int len = static_cast<int>(s.potentialized_curve.beta_mean.size());
    std::string line;
    for (int t = 0; t < len; ++t) {
      line.clear();
      line += std::to_string(t + 1);
      for (const CurveStats* c : {&s.potentialized_curve, &s.original_curve}) {
        for (const std::vector<double>* v :
             {&c->beta_mean, &c->beta_std, &c->rho_mean, &c->rho_std}) {
          line += ',';
          append_float(line, (*v)[t]);
        }
      }
      line += '\n';
      file << line;
    }
  }

  {
    std::ofstream file(fs::path(dir) / "results.jsonl");
    if (!file) throw std::runtime_error("cannot write results.jsonl in " + dir);
    for (const PairedResult& r : output.results) {
      nlohmann::json row;
      row["index"] = r.index;
      row["game_seed"] = r.game_seed;
      row["start_seed"] = r.start_seed;
      row["original_start_seed"] = r.original_start_seed;
      row["potentialized"] = {{"converged", r.potentialized.converged},
                              {"steps", r.potentialized.steps},
                              {"final_rho", r.potentialized.final_rho}};
      row["original"] = {{"converged", r.original.converged},
                         {"steps", r.original.steps},
                         {"final_rho", r.original.final_rho}};
      file << row.dump() << '\n';
    }
  }
}

}  // namespace ordpot
