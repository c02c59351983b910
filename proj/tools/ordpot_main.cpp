#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ordpot/deviation.hpp"
#include "ordpot/experiment.hpp"
#include "ordpot/game.hpp"
#include "ordpot/potential.hpp"
#include "ordpot/replicator.hpp"

namespace {

std::string strip_json_suffix(const std::string& path) {
  const std::string suffix = ".json";
  if (path.size() > suffix.size() &&
      path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return path.substr(0, path.size() - suffix.size());
  }
  return path;
}

std::vector<int> parse_shape(const std::string& text) {
  std::vector<int> shape;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = text.find('x', pos);
    const std::string part =
        text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    try {
      std::size_t used = 0;
      const int value = std::stoi(part, &used);
      if (used != part.size() || value < 1) throw std::invalid_argument(part);
      shape.push_back(value);
    } catch (const std::exception&) {
      throw CLI::ValidationError("shape", "expected counts like 10x10, got '" + text + "'");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (shape.empty()) throw CLI::ValidationError("shape", "shape is empty");
  return shape;
}

nlohmann::json check_to_json(const ordpot::CheckResult& check) {
  nlohmann::json j;
  j["passed"] = check.passed;
  if (!check.passed) j["witness"] = check.witness;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << text;
}

void cmd_potentialize(const std::string& game_path, std::string out_path,
                      std::string report_path) {
  const ordpot::Game game = ordpot::load_game(game_path);
  const std::string stem = strip_json_suffix(game_path);
  if (out_path.empty()) out_path = stem + ".potentialized.json";
  if (report_path.empty()) report_path = stem + ".report.json";

  const ordpot::PotentialAnalysis analysis = ordpot::analyze_potential(game);
  const ordpot::Game potentialized = ordpot::potentialized_game(game);
  const ordpot::VerificationReport verification =
      ordpot::verify_potential(game, analysis.phi);

  ordpot::save_game(potentialized, out_path);

  nlohmann::json report;
  report["phi"] = analysis.phi.values;
  report["component_of"] = analysis.condensation.component_of;
  report["component_values"] = analysis.phi.component_values;
  report["num_components"] = analysis.condensation.components.size();
  report["admits_ordinal_potential"] = ordpot::admits_ordinal_potential(game);
  report["verification"] = {
      {"scc_constancy", check_to_json(verification.scc_constancy)},
      {"edge_slack", check_to_json(verification.edge_slack)},
      {"bellman_minimality", check_to_json(verification.bellman_minimality)},
      {"ordinal_sign", check_to_json(verification.ordinal_sign)},
      {"all_ok", verification.all_ok()},
  };
  write_text(report_path, report.dump(2) + "\n");

  std::cout << "wrote " << out_path << " and " << report_path << "\n";
}

void cmd_simulate(const std::string& game_path, const std::string& reward_path,
                  std::uint64_t seed, int steps, std::string trace_path,
                  std::string policy_path) {
  const ordpot::Game game = ordpot::load_game(game_path);
  const ordpot::Game reward =
      reward_path.empty() ? game : ordpot::load_game(reward_path);
  const std::string stem = strip_json_suffix(game_path);
  if (trace_path.empty()) trace_path = stem + ".trace.csv";
  if (policy_path.empty()) policy_path = stem + ".final_policy.json";

  ordpot::SimulationConfig config;
  config.max_steps = steps;
  config.policy_stride = 0;
  const ordpot::Policy start = ordpot::random_policy(game.action_counts, seed);
  const ordpot::SimulationTrace trace = ordpot::simulate(game, reward, start, config);

  std::string csv = "step,beta,rho\n";
  char buf[96];
  for (int t = 0; t < trace.steps_run; ++t) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", t + 1,
                  trace.beta_series[t], trace.rho_series[t]);
    csv += buf;
  }
  write_text(trace_path, csv);

  nlohmann::json policy_json = trace.final_policy.per_player;
  write_text(policy_path, policy_json.dump(2) + "\n");

  std::cout << (trace.converged ? "converged" : "stopped") << " after "
            << trace.steps_run << " steps; final rho "
            << trace.rho_series.back() << "\n"
            << "wrote " << trace_path << " and " << policy_path << "\n";
}

void cmd_experiment(const std::string& shape_text, int games, std::uint64_t seed,
                    const std::string& out_dir, bool independent_starts,
                    int max_steps, int threads) {
  ordpot::ExperimentSpec spec;
  spec.shape = parse_shape(shape_text);
  spec.num_games = games;
  spec.master_seed = seed;
  spec.sim_config.max_steps = max_steps;
  spec.independent_starts = independent_starts;
  spec.threads = threads;

  const ordpot::ExperimentOutput output = ordpot::run_experiment(spec);
  ordpot::write_experiment_files(output, spec, out_dir);

  const ordpot::ExperimentSummary& s = output.summary;
  std::printf("potentialized: %.1f%% converged, mean final rho %.4f\n",
              100.0 * s.potentialized_rate, s.mean_final_rho_potentialized);
  std::printf("original:      %.1f%% converged, mean final rho %.4f\n",
              100.0 * s.original_rate, s.mean_final_rho_original);
  std::printf("final rho ratio (pot/orig): %.4f\n", s.final_rho_ratio);
  if (!output.excluded.empty()) {
    std::printf("excluded %zu game(s); see summary.json\n", output.excluded.size());
  }
  std::printf("wrote %s/{summary.json,curves.csv,results.jsonl}\n", out_dir.c_str());
}

void cmd_dot(const std::string& game_path, bool gamma0, const std::string& out_path) {
  const ordpot::Game game = ordpot::load_game(game_path);
  ordpot::DeviationGraph graph = ordpot::build_deviation_graph(game);
  if (gamma0) graph = ordpot::nonnegative_subgraph(graph);
  const std::string dot = ordpot::to_dot(graph, game.action_counts);
  if (out_path.empty()) {
    std::cout << dot;
  } else {
    write_text(out_path, dot);
    std::cout << "wrote " << out_path << "\n";
  }
}

void cmd_gen(const std::string& shape_text, std::uint64_t seed,
             const std::string& out_path) {
  const ordpot::Game game = ordpot::random_game(parse_shape(shape_text), seed);
  ordpot::save_game(game, out_path);
  std::cout << "wrote " << out_path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ordinal-potential approximation and replicator-dynamics toolkit"};
  app.require_subcommand(1);

  // potentialize
  std::string pot_game, pot_out, pot_report;
  CLI::App* potentialize =
      app.add_subcommand("potentialize", "potentialize a game and verify the result");
  potentialize->add_option("game", pot_game, "game JSON file")->required();
  potentialize->add_option("--out", pot_out, "output game path (default <game>.potentialized.json)");
  potentialize->add_option("--report", pot_report, "report path (default <game>.report.json)");

  // simulate
  std::string sim_game, sim_reward, sim_trace, sim_policy;
  std::uint64_t sim_seed = 0;
  int sim_steps = 100000;
  CLI::App* simulate =
      app.add_subcommand("simulate", "run replicator dynamics from a random start");
  simulate->add_option("game", sim_game, "game JSON file")->required();
  simulate->add_option("--reward-game", sim_reward, "game whose utilities define rho (default: the simulated game)");
  simulate->add_option("--seed", sim_seed, "start-policy seed (default 0)");
  simulate->add_option("--steps", sim_steps, "step budget (default 100000)")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--trace", sim_trace, "trace CSV path (default <game>.trace.csv)");
  simulate->add_option("--final-policy", sim_policy, "final policy path (default <game>.final_policy.json)");

  // experiment
  std::string exp_shape, exp_out;
  int exp_games = 100, exp_max_steps = 100000, exp_threads = 1;
  std::uint64_t exp_seed = 0;
  bool exp_independent = false;
  CLI::App* experiment =
      app.add_subcommand("experiment", "paired original-vs-potentialized convergence study");
  experiment->add_option("--shape", exp_shape, "action counts, e.g. 10x10 or 4x4x4")->required();
  experiment->add_option("--games", exp_games, "number of games (default 100)")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--seed", exp_seed, "master seed (default 0)");
  experiment->add_option("--out", exp_out, "output directory")->required();
  experiment->add_flag("--independent-starts", exp_independent,
                       "draw separate start policies for the two arms");
  experiment->add_option("--max-steps", exp_max_steps, "per-run step cap (default 100000)")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--threads", exp_threads, "worker threads (default 1, 0 = auto)")
      ->check(CLI::NonNegativeNumber);

  // dot
  std::string dot_game, dot_out;
  bool dot_gamma0 = false;
  CLI::App* dot = app.add_subcommand("dot", "export the deviation graph in DOT format");
  dot->add_option("game", dot_game, "game JSON file")->required();
  dot->add_flag("--gamma0", dot_gamma0, "restrict to the nonnegative subgraph");
  dot->add_option("--out", dot_out, "output path (default stdout)");

  // gen
  std::string gen_shape, gen_out;
  std::uint64_t gen_seed = 0;
  CLI::App* gen = app.add_subcommand("gen", "generate a random game");
  gen->add_option("--shape", gen_shape, "action counts, e.g. 3x3")->required();
  gen->add_option("--seed", gen_seed, "seed (default 0)");
  gen->add_option("--out", gen_out, "output game path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (potentialize->parsed()) {
      cmd_potentialize(pot_game, pot_out, pot_report);
    } else if (simulate->parsed()) {
      cmd_simulate(sim_game, sim_reward, sim_seed, sim_steps, sim_trace, sim_policy);
    } else if (experiment->parsed()) {
      cmd_experiment(exp_shape, exp_games, exp_seed, exp_out, exp_independent,
                     exp_max_steps, exp_threads);
    } else if (dot->parsed()) {
      cmd_dot(dot_game, dot_gamma0, dot_out);
    } else if (gen->parsed()) {
      cmd_gen(gen_shape, gen_seed, gen_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
