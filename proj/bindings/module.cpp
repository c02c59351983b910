#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ordpot/deviation.hpp"
#include "ordpot/experiment.hpp"
#include "ordpot/game.hpp"
#include "ordpot/potential.hpp"
#include "ordpot/replicator.hpp"

namespace py = pybind11;
using namespace ordpot;

namespace {

py::dict check_to_dict(const CheckResult& check) {
  py::dict d;
  d["passed"] = check.passed;
  d["witness"] = check.witness;
  return d;
}

py::dict verification_to_dict(const VerificationReport& report) {
  py::dict d;
  d["scc_constancy"] = check_to_dict(report.scc_constancy);
  d["edge_slack"] = check_to_dict(report.edge_slack);
  d["bellman_minimality"] = check_to_dict(report.bellman_minimality);
  d["ordinal_sign"] = check_to_dict(report.ordinal_sign);
  d["structural_ok"] = report.structural_ok();
  d["all_ok"] = report.all_ok();
  return d;
}

py::dict arm_to_dict(const ArmResult& arm) {
  py::dict d;
  d["converged"] = arm.converged;
  d["steps"] = arm.steps;
  d["final_rho"] = arm.final_rho;
  d["beta"] = arm.beta;
  d["rho"] = arm.rho;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "ordinal-potential approximation and replicator dynamics";

  py::class_<Game>(m, "Game")
      .def(py::init([](int num_players, std::vector<int> action_counts,
                       std::vector<std::vector<double>> utilities) {
             return make_game(num_players, std::move(action_counts),
                              std::move(utilities));
           }),
           py::arg("num_players"), py::arg("action_counts"), py::arg("utilities"))
      .def_readonly("num_players", &Game::num_players)
      .def_readonly("action_counts", &Game::action_counts)
      .def_readonly("utilities", &Game::utilities)
      .def("num_profiles", &Game::num_profiles)
      .def("to_json", [](const Game& g) { return game_to_json(g); })
      .def_static("from_json", [](const std::string& text) { return game_from_json(text); })
      .def("__repr__", [](const Game& g) {
        std::string s = "Game(shape=[";
        for (std::size_t i = 0; i < g.action_counts.size(); ++i) {
          if (i) s += ", ";
          s += std::to_string(g.action_counts[i]);
        }
        return s + "])";
      });

  m.def("profile_index", &profile_index, py::arg("profile"), py::arg("action_counts"));
  m.def("profile_from_index", &profile_from_index, py::arg("index"), py::arg("action_counts"));
  m.def("num_profiles", py::overload_cast<const std::vector<int>&>(&num_profiles),
        py::arg("action_counts"));
  m.def("random_game", &random_game, py::arg("action_counts"), py::arg("seed"));
  m.def("normalize_rewards", &normalize_rewards, py::arg("game"));
  m.def("load_game", &load_game, py::arg("path"));
  m.def("save_game", &save_game, py::arg("game"), py::arg("path"));

  m.def("compute_potential",
        [](const Game& game) { return compute_potential(game).values; },
        py::arg("game"), "Potential value per flat profile index.");
  m.def("potentialized_game", &potentialized_game, py::arg("game"));
  m.def("admits_ordinal_potential", &admits_ordinal_potential, py::arg("game"));
  m.def("verify_potential",
        [](const Game& game) {
          return verification_to_dict(verify_potential(game, compute_potential(game)));
        },
        py::arg("game"),
        "Recompute the potential and report the verification checks as a dict.");
  m.def("check_proposition",
        [](const Game& game) {
          const PropositionReport report = check_proposition(game);
          py::dict d;
          d["strict_nash_preserved"] = check_to_dict(report.strict_nash_preserved);
          d["no_dominated_equilibria"] = check_to_dict(report.no_dominated_equilibria);
          d["all_ok"] = report.all_ok();
          return d;
        },
        py::arg("game"));

  m.def("pure_nash", &pure_nash, py::arg("game"));
  m.def("strict_nash", &strict_nash, py::arg("game"));
  m.def("strictly_dominated_actions", &strictly_dominated_actions,
        py::arg("game"), py::arg("player"));
  m.def("deviation_graph_dot",
        [](const Game& game, bool gamma0) {
          DeviationGraph graph = build_deviation_graph(game);
          if (gamma0) graph = nonnegative_subgraph(graph);
          return to_dot(graph, game.action_counts);
        },
        py::arg("game"), py::arg("gamma0") = false);

  py::class_<SimulationConfig>(m, "SimulationConfig")
      .def(py::init<>())
      .def_readwrite("step_size", &SimulationConfig::step_size)
      .def_readwrite("beta_threshold", &SimulationConfig::beta_threshold)
      .def_readwrite("patience_steps", &SimulationConfig::patience_steps)
      .def_readwrite("max_steps", &SimulationConfig::max_steps)
      .def_readwrite("policy_stride", &SimulationConfig::policy_stride);

  m.def("uniform_policy",
        [](const std::vector<int>& counts) { return uniform_policy(counts).per_player; },
        py::arg("action_counts"));
  m.def("random_policy",
        [](const std::vector<int>& counts, std::uint64_t seed) {
          return random_policy(counts, seed).per_player;
        },
        py::arg("action_counts"), py::arg("seed"));
  m.def("replicator_field",
        [](const Game& game, const std::vector<std::vector<double>>& policy) {
          return replicator_field(game, Policy{policy});
        },
        py::arg("game"), py::arg("policy"));
  m.def("simulate",
        [](const Game& game, const Game& reward_game,
           const std::vector<std::vector<double>>& start, const SimulationConfig& config) {
          const SimulationTrace trace = simulate(game, reward_game, Policy{start}, config);
          py::dict d;
          d["beta"] = trace.beta_series;
          d["rho"] = trace.rho_series;
          d["converged"] = trace.converged;
          d["steps_run"] = trace.steps_run;
          d["final_policy"] = trace.final_policy.per_player;
          return d;
        },
        py::arg("game"), py::arg("reward_game"), py::arg("start"),
        py::arg("config") = SimulationConfig{});
  m.def("average_expected_reward",
        [](const Game& reward_game, const std::vector<std::vector<double>>& policy) {
          return average_expected_reward(reward_game, Policy{policy});
        },
        py::arg("reward_game"), py::arg("policy"));

  m.def("run_paired",
        [](const Game& game, std::uint64_t start_seed, bool independent_starts,
           std::uint64_t original_start_seed, const SimulationConfig& config) {
          const PairedResult r = run_paired(game, start_seed, original_start_seed,
                                            independent_starts, config);
          py::dict d;
          d["potentialized"] = arm_to_dict(r.potentialized);
          d["original"] = arm_to_dict(r.original);
          return d;
        },
        py::arg("game"), py::arg("start_seed"), py::arg("independent_starts") = false,
        py::arg("original_start_seed") = 0, py::arg("config") = SimulationConfig{});
  m.def("run_experiment",
        [](const std::vector<int>& shape, int num_games, std::uint64_t master_seed,
           int max_steps, bool independent_starts, int threads,
           const std::string& out_dir) {
          ExperimentSpec spec;
          spec.shape = shape;
          spec.num_games = num_games;
          spec.master_seed = master_seed;
          spec.sim_config.max_steps = max_steps;
          spec.independent_starts = independent_starts;
          spec.threads = threads;
          ExperimentOutput output;
          {
            py::gil_scoped_release release;
            output = run_experiment(spec);
            if (!out_dir.empty()) write_experiment_files(output, spec, out_dir);
          }
          const ExperimentSummary& s = output.summary;
          py::dict d;
          d["num_games"] = s.num_games;
          d["potentialized_rate"] = s.potentialized_rate;
          d["original_rate"] = s.original_rate;
          d["mean_final_rho_potentialized"] = s.mean_final_rho_potentialized;
          d["mean_final_rho_original"] = s.mean_final_rho_original;
          d["final_rho_ratio"] = s.final_rho_ratio;
          d["num_excluded"] = output.excluded.size();
          return d;
        },
        py::arg("shape"), py::arg("num_games"), py::arg("master_seed"),
        py::arg("max_steps") = 100000, py::arg("independent_starts") = false,
        py::arg("threads") = 1, py::arg("out_dir") = std::string());
}
