"""Ordinal-potential approximation and replicator dynamics for finite normal-form games."""

from ._core import (
    Game,
    SimulationConfig,
    admits_ordinal_potential,
    average_expected_reward,
    check_proposition,
    compute_potential,
    deviation_graph_dot,
    load_game,
    normalize_rewards,
    num_profiles,
    potentialized_game,
    profile_from_index,
    profile_index,
    pure_nash,
    random_game,
    random_policy,
    replicator_field,
    run_experiment,
    run_paired,
    save_game,
    simulate,
    strict_nash,
    strictly_dominated_actions,
    uniform_policy,
    verify_potential,
)

__all__ = [
    "Game",
    "SimulationConfig",
    "admits_ordinal_potential",
    "average_expected_reward",
    "check_proposition",
    "compute_potential",
    "deviation_graph_dot",
    "load_game",
    "normalize_rewards",
    "num_profiles",
    "potentialized_game",
    "profile_from_index",
    "profile_index",
    "pure_nash",
    "random_game",
    "random_policy",
    "replicator_field",
    "run_experiment",
    "run_paired",
    "save_game",
    "simulate",
    "strict_nash",
    "strictly_dominated_actions",
    "uniform_policy",
    "verify_potential",
]
