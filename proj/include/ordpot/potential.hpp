#pragma once

#include <string>
#include <vector>

#include "ordpot/deviation.hpp"
#include "ordpot/game.hpp"
#include "ordpot/graph.hpp"

namespace ordpot {

/// Potential function over joint action profiles. The potential is constant
/// on each strongly connected component of the nonnegative deviation graph,
/// values[a] = component_values[component_of(a)].
struct PotentialFunction {
  std::vector<double> values;            // per flat profile index
  std::vector<double> component_values;  // per condensation component
};

/// Full pipeline state for one game: nonnegative deviation graph, its
/// condensation, and the propagated potential.
struct PotentialAnalysis {
  DeviationGraph gamma0;
  Condensation condensation;
  PotentialFunction phi;
};

PotentialAnalysis analyze_potential(const Game& game,
                                    TieBreak tie_break = TieBreak::lowest_id_first);

/// Propagates the potential over the condensation of the nonnegative
/// deviation graph in topological order, then broadcasts component values
/// to profiles. The result does not depend on the tie-break; the parameter
/// exists so tests can establish that.
PotentialFunction compute_potential(const Game& game,
                                    TieBreak tie_break = TieBreak::lowest_id_first);

/// The common-interest game in which every player's utility tensor is the
/// computed potential.
Game potentialized_game(const Game& game);

struct CheckResult {
  bool passed = true;
  std::string witness;  // empty when passed
};

/// Structural and semantic verification of a computed potential:
///   scc_constancy      - phi is constant on each component
///   edge_slack         - phi increases across components by at least the
///                        weight of every crossing nonnegative-graph edge
///   bellman_minimality - every non-source value is exactly attained by an
///                        incoming condensation edge; sources are exactly 0
///   ordinal_sign       - phi is an ordinal potential for the original game
///                        (sign equivalence on all deviation pairs); passes
///                        iff the game admits an ordinal potential
struct VerificationReport {
  CheckResult scc_constancy;
  CheckResult edge_slack;
  CheckResult bellman_minimality;
  CheckResult ordinal_sign;

  bool structural_ok() const {
    return scc_constancy.passed && edge_slack.passed && bellman_minimality.passed;
  }
  bool all_ok() const { return structural_ok() && ordinal_sign.passed; }
};

VerificationReport verify_potential(const Game& game, const PotentialFunction& phi);

/// Checks the two structural guarantees of potentialization on a concrete
/// game: (i) every strict Nash equilibrium of the original game is a pure
/// Nash equilibrium of the potentialized game; (ii) a pure Nash equilibrium
/// of the potentialized game can use an action that is strictly dominated in
/// the original game only when the domination edge lies inside a strongly
/// connected component of the nonnegative deviation graph, where the
/// potential is tied. On games that admit an ordinal potential there are no
/// such components, so (ii) reduces to full dominated-action exclusion.
struct PropositionReport {
  CheckResult strict_nash_preserved;
  CheckResult no_dominated_equilibria;

  bool all_ok() const {
    return strict_nash_preserved.passed && no_dominated_equilibria.passed;
  }
};

PropositionReport check_proposition(const Game& game);

}  // namespace ordpot
