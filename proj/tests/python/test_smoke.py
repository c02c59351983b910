import json
import math

import pytest

import ordpot


COORDINATION = ordpot.Game(
    num_players=2,
    action_counts=[3, 3],
    utilities=[
        [3, 2, 1, 0, 2, 1, 0, 0, 1],
        [3, 0, 0, 2, 2, 0, 1, 1, 1],
    ],
)


def test_profile_codec_roundtrip():
    counts = [2, 3, 4]
    assert ordpot.num_profiles(counts) == 24
    for index in range(24):
        profile = ordpot.profile_from_index(index, counts)
        assert ordpot.profile_index(profile, counts) == index


def test_game_json_roundtrip():
    text = COORDINATION.to_json()
    parsed = json.loads(text)
    assert parsed["num_players"] == 2
    assert parsed["action_counts"] == [3, 3]
    back = ordpot.Game.from_json(text)
    assert back.utilities == COORDINATION.utilities


def test_coordination_potentialization():
    pot = ordpot.potentialized_game(COORDINATION)
    expected = [3.0] + [0.0] * 8
    assert pot.utilities == [expected, expected]
    assert not ordpot.admits_ordinal_potential(COORDINATION)
    assert ordpot.admits_ordinal_potential(pot)

    values = ordpot.compute_potential(COORDINATION)
    assert values == expected

    report = ordpot.verify_potential(COORDINATION)
    assert report["structural_ok"]
    assert not report["all_ok"]  # the original has a weak improvement cycle
    assert not report["ordinal_sign"]["passed"]
    assert ordpot.verify_potential(pot)["all_ok"]

    proposition = ordpot.check_proposition(COORDINATION)
    assert proposition["all_ok"]


def test_nash_and_domination():
    nash = {tuple(p) for p in ordpot.pure_nash(COORDINATION)}
    assert nash == {(0, 0), (1, 1), (2, 2)}
    assert [tuple(p) for p in ordpot.strict_nash(COORDINATION)] == [(0, 0)]
    pd = ordpot.Game(
        num_players=2,
        action_counts=[2, 2],
        utilities=[[3, 0, 5, 1], [3, 5, 0, 1]],
    )
    assert ordpot.strictly_dominated_actions(pd, 0) == [0]
    assert ordpot.strictly_dominated_actions(pd, 1) == [0]


def test_dot_export():
    dot = ordpot.deviation_graph_dot(COORDINATION)
    assert dot.startswith("digraph")
    assert '"(0,0)"' in dot
    gamma0 = ordpot.deviation_graph_dot(COORDINATION, gamma0=True)
    assert gamma0.count("->") <= dot.count("->")


def test_simulation_short_run():
    game = ordpot.normalize_rewards(ordpot.random_game([3, 3], seed=7))
    start = ordpot.random_policy([3, 3], seed=8)
    assert all(math.isclose(sum(row), 1.0, abs_tol=1e-9) for row in start)

    field = ordpot.replicator_field(game, start)
    assert all(math.isclose(sum(row), 0.0, abs_tol=1e-12) for row in field)

    config = ordpot.SimulationConfig()
    config.max_steps = 50
    trace = ordpot.simulate(game, game, start, config)
    assert trace["steps_run"] == 50
    assert not trace["converged"]
    assert len(trace["beta"]) == 50
    assert len(trace["rho"]) == 50
    assert all(math.isclose(sum(row), 1.0, abs_tol=1e-9) for row in trace["final_policy"])

    rho = ordpot.average_expected_reward(game, trace["final_policy"])
    assert math.isclose(rho, trace["rho"][-1], rel_tol=1e-12)


def test_run_paired_matched_horizon():
    game = ordpot.random_game([2, 2], seed=11)
    config = ordpot.SimulationConfig()
    config.max_steps = 300
    paired = ordpot.run_paired(game, start_seed=12, config=config)
    pot, orig = paired["potentialized"], paired["original"]
    assert orig["steps"] == pot["steps"]
    assert len(orig["beta"]) == len(pot["beta"])
    for arm in (pot, orig):
        assert isinstance(arm["converged"], bool)
        assert arm["rho"][-1] == pytest.approx(arm["final_rho"])


def test_run_experiment_writes_files(tmp_path):
    summary = ordpot.run_experiment(
        shape=[2, 2],
        num_games=3,
        master_seed=5,
        max_steps=2000,
        out_dir=str(tmp_path),
    )
    assert summary["num_games"] == 3
    assert summary["num_excluded"] == 0
    assert 0.0 <= summary["potentialized_rate"] <= 1.0
    assert 0.0 <= summary["original_rate"] <= 1.0

    on_disk = json.loads((tmp_path / "summary.json").read_text())
    assert on_disk["num_games"] == 3
    assert on_disk["rng"] == "mt19937_64"
    curves = (tmp_path / "curves.csv").read_text().splitlines()
    assert curves[0].startswith("step,pot_beta_mean")
    assert len(curves) > 1
    lines = (tmp_path / "results.jsonl").read_text().splitlines()
    assert len(lines) == 3
    assert {json.loads(line)["index"] for line in lines} == {0, 1, 2}
