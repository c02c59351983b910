#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "ordpot/deviation.hpp"
#include "ordpot/potential.hpp"

using namespace ordpot;

namespace {

const std::vector<std::vector<int>> kMixedShapes = {{2, 2}, {3, 3}, {4, 4, 4}};

Game random_mixed(int trial, std::uint64_t seed) {
  return random_game(kMixedShapes[trial % kMixedShapes.size()], seed);
}

}  // namespace

TEST_CASE("coordination game potential concentrates on the secure profile") {
  const PotentialFunction phi = compute_potential(fixtures::coordination_game());
  CHECK(phi.values == fixtures::coordination_potential());

  const Game pot = potentialized_game(fixtures::coordination_game());
  for (const auto& tensor : pot.utilities) {
    CHECK(tensor == fixtures::coordination_potential());
  }
}

TEST_CASE("Voorneveld-Nolde game potential") {
  const PotentialFunction phi = compute_potential(fixtures::voorneveld_nolde_game());
  CHECK(phi.values == fixtures::voorneveld_nolde_potential());

  const Game pot = potentialized_game(fixtures::voorneveld_nolde_game());
  for (const auto& tensor : pot.utilities) {
    CHECK(tensor == fixtures::voorneveld_nolde_potential());
  }
}

TEST_CASE("h-family collapses to the zero game for any h > 1") {
  for (double h : {2.0, 2.5, 10.0, 100.0}) {
    const Game pot = potentialized_game(fixtures::h_family_game(h));
    for (const auto& tensor : pot.utilities) {
      for (double u : tensor) CHECK(u == 0.0);
    }
  }
}

TEST_CASE("potentialized game is common interest with the original shape") {
  const Game g = random_game({2, 3, 2}, 17);
  const Game pot = potentialized_game(g);
  CHECK(pot.same_shape(g));
  for (int i = 1; i < pot.num_players; ++i) {
    CHECK(pot.utilities[i] == pot.utilities[0]);
  }
  CHECK(pot.utilities[0] == compute_potential(g).values);
}

TEST_CASE("structural checks pass on random games of mixed shapes") {
  std::mt19937_64 seeds(404);
  for (int trial = 0; trial < 180; ++trial) {
    const Game g = random_mixed(trial, seeds());
    const PotentialFunction phi = compute_potential(g);
    const VerificationReport report = verify_potential(g, phi);
    REQUIRE_MESSAGE(report.scc_constancy.passed, report.scc_constancy.witness);
    REQUIRE_MESSAGE(report.edge_slack.passed, report.edge_slack.witness);
    REQUIRE_MESSAGE(report.bellman_minimality.passed,
                    report.bellman_minimality.witness);
  }
}

TEST_CASE("ordinal sign check is equivalent to potential admissibility") {
  std::mt19937_64 seeds(405);
  for (int trial = 0; trial < 150; ++trial) {
    const Game g = random_mixed(trial, seeds());
    const VerificationReport report = verify_potential(g, compute_potential(g));
    CHECK(report.ordinal_sign.passed == admits_ordinal_potential(g));
  }

  const VerificationReport h_report = verify_potential(
      fixtures::h_family_game(2), compute_potential(fixtures::h_family_game(2)));
  CHECK(h_report.structural_ok());
  CHECK_FALSE(h_report.ordinal_sign.passed);
  CHECK_FALSE(h_report.ordinal_sign.witness.empty());
}

TEST_CASE("potentialized games admit an ordinal potential") {
  std::mt19937_64 seeds(406);
  for (int trial = 0; trial < 120; ++trial) {
    const Game g = random_mixed(trial, seeds());
    const Game pot = potentialized_game(g);
    CHECK(admits_ordinal_potential(pot));
    CHECK(verify_potential(pot, compute_potential(pot)).all_ok());
  }
}

TEST_CASE("potential is identical under the reversed tie-break") {
  std::mt19937_64 seeds(407);
  for (int trial = 0; trial < 150; ++trial) {
    const Game g = random_mixed(trial, seeds());
    const PotentialFunction low = compute_potential(g, TieBreak::lowest_id_first);
    const PotentialFunction high = compute_potential(g, TieBreak::highest_id_first);
    CHECK(low.values == high.values);
  }
}

TEST_CASE("verification flags a corrupted potential with a witness") {
  const Game g = fixtures::coordination_game();
  PotentialFunction phi = compute_potential(g);

  PotentialFunction bumped = phi;
  bumped.values[4] += 1.0;  // breaks constancy on the big component
  const VerificationReport r1 = verify_potential(g, bumped);
  CHECK_FALSE(r1.scc_constancy.passed);
  CHECK_FALSE(r1.scc_constancy.witness.empty());

  PotentialFunction shifted = phi;
  for (double& v : shifted.values) v += 1.0;  // sources are no longer 0
  shifted.component_values.assign(shifted.component_values.size(), 0.0);
  const VerificationReport r2 = verify_potential(g, shifted);
  CHECK_FALSE(r2.bellman_minimality.passed);

  PotentialFunction squashed = phi;
  squashed.values.assign(squashed.values.size(), 0.0);  // ignores the slack edge
  const VerificationReport r3 = verify_potential(g, squashed);
  CHECK_FALSE(r3.edge_slack.passed);
  CHECK_FALSE(r3.edge_slack.witness.empty());
}

TEST_CASE("proposition guarantees hold on fixtures and random games") {
  const PropositionReport coordination =
      check_proposition(fixtures::coordination_game());
  CHECK(coordination.all_ok());

  const PropositionReport pd = check_proposition(fixtures::prisoners_dilemma());
  CHECK(pd.all_ok());

  std::mt19937_64 seeds(408);
  for (int trial = 0; trial < 150; ++trial) {
    const Game g = random_mixed(trial, seeds());
    const PropositionReport report = check_proposition(g);
    REQUIRE_MESSAGE(report.strict_nash_preserved.passed,
                    report.strict_nash_preserved.witness);
    REQUIRE_MESSAGE(report.no_dominated_equilibria.passed,
                    report.no_dominated_equilibria.witness);
  }
}

TEST_CASE("dominated actions return as equilibria only across potential ties") {
  // Player 1's action 1 is strictly dominated by action 0, but the
  // domination edges sit inside the one big strongly connected component of
  // the nonnegative deviation graph (e.g. the weak improvement cycle
  // (0,0)->(1,0)->(1,2)->(2,2)->(2,1)->(0,1)->(0,0)). The potential is tied
  // across the component, so profiles using the dominated action survive as
  // equilibria of the potentialized game. The check must classify this as a
  // tie, not a defect.
  const Game g = make_game(2, {3, 3},
                           {{6, 9, 3, 6, 1, 7, 3, 3, 7},
                            {4, 1, 8, 6, 5, 8, 9, 3, 3}});
  CHECK(strictly_dominated_actions(g, 1) == std::vector<int>{1});
  CHECK_FALSE(admits_ordinal_potential(g));

  const PotentialFunction phi = compute_potential(g);
  const int reused = profile_index({0, 1}, g.action_counts);
  const int dominating = profile_index({0, 0}, g.action_counts);
  CHECK(phi.values[reused] == phi.values[dominating]);

  const std::vector<int> nash = pure_nash_indices(potentialized_game(g));
  CHECK(std::set<int>(nash.begin(), nash.end()).count(reused) == 1);

  const PropositionReport report = check_proposition(g);
  CHECK(report.all_ok());
  CHECK_FALSE(report.no_dominated_equilibria.witness.empty());

  // A game with no weak improvement cycles keeps the unconditional reading:
  // its equilibria never touch a dominated action and nothing is flagged.
  const PropositionReport pd = check_proposition(fixtures::prisoners_dilemma());
  CHECK(pd.all_ok());
  CHECK(pd.no_dominated_equilibria.witness.empty());
}

TEST_CASE("coordination game keeps its equilibria and gains two") {
  const Game original = fixtures::coordination_game();
  const Game pot = potentialized_game(original);

  const std::vector<int> original_nash = pure_nash_indices(original);
  const std::vector<int> pot_nash = pure_nash_indices(pot);
  const std::set<int> pot_set(pot_nash.begin(), pot_nash.end());
  for (int a : original_nash) CHECK(pot_set.count(a) == 1);
  CHECK(pot_nash.size() == original_nash.size() + 2);
}

TEST_CASE("prisoners dilemma potentializes to a defect-only optimum") {
  const Game pot = potentialized_game(fixtures::prisoners_dilemma());
  CHECK(pot.utilities[0] == std::vector<double>{0, 2, 2, 3});
  CHECK(pure_nash_indices(pot) == std::vector<int>{3});
}
