"""Test single runs, batches and run parameters."""

import logging

import pytest

from lkbandit.cli.oracle import brute_force_optimum
from lkbandit.config import Config
from lkbandit.errors import UsageError
from lkbandit.solver import Mode, ModeKind, Params, parse_mode, preprocess, run_batch, solve
from lkbandit.tests.conftest import random_instance
from lkbandit.tsplib import tour_length

logging.basicConfig(level=logging.DEBUG)
logger = logging.getLogger(__name__)


def test_parse_mode():
    assert parse_mode("mabb") == Mode(ModeKind.MABB)
    assert parse_mode("LKH") == Mode(ModeKind.LKH)
    assert parse_mode("fixed-w=0.5") == Mode(ModeKind.FIXED_W, 0.5)
    assert parse_mode("fixed-w=1.0").label == "fixed-w=1"
    for bad in ["fixed-w=2", "fixed-w=x", "greedy", ""]:
        with pytest.raises(UsageError):
            parse_mode(bad)


def test_params_defaults():
    params = Params()
    assert (params.bs, params.m, params.s, params.c, params.gamma) == (100, 5, 0.06, 20.0, 0.998)
    assert params.candidate_size == 5
    assert params.k_max == 5
    assert params.trials_for(783) == 783
    assert Params(max_trials=7).trials_for(783) == 7


def test_params_validation():
    for bad in [dict(max_trials=0), dict(m=1), dict(gamma=0.0), dict(k_max=1), dict(s=1.5), dict(bs=-1)]:
        with pytest.raises(UsageError):
            Params(**bad).validate()


def test_params_from_config(tmp_path):
    config = Config(tmp_path / "config.json")
    config.set("bs", 7)
    config.set("mode", "fixed-w=0.25")
    params = Params.from_config(config, seed=9, bs=None)
    assert params.bs == 7
    assert params.seed == 9
    assert params.mode == Mode(ModeKind.FIXED_W, 0.25)


def test_solve_square_reaches_optimum(square):
    result = solve(square.with_optimum(40), Params(seed=3))
    assert result.best_length == 40
    assert result.reached_optimum is True
    assert result.trials_used == 1
    assert result.gap == 0.0
    assert result.lower_bound == pytest.approx(40.0)


def test_solve_result_is_consistent():
    inst = random_instance(31, 40)
    result = solve(inst, Params(max_trials=12, bs=4, seed=2))
    assert result.best_length == tour_length(inst, result.best_tour)
    assert sorted(result.best_tour) == list(range(inst.n))
    assert result.trials_used == 12
    assert result.reached_optimum is None
    assert result.gap is None
    assert result.lower_bound <= result.best_length
    payload = result.to_dict()
    assert payload["best_length"] == result.best_length
    assert sorted(payload["best_tour"]) == list(range(1, inst.n + 1))


def test_bandit_consulted_after_warmup(tmp_path):
    """Test that only trials past the warm-up pull an arm and every trial is recorded."""
    inst = random_instance(32, 30)
    dump = tmp_path / "backbone.txt"
    result = solve(inst, Params(max_trials=9, bs=3, seed=4), backbone_path=dump)
    trace = result.bandit_trace
    assert [record.trial for record in trace] == list(range(4, 10))
    assert all(0 <= record.arm < 5 for record in trace)
    assert all(len(record.values) == 5 for record in trace)
    counts = [int(line.split()[2]) for line in dump.read_text().splitlines()]
    assert sum(counts) == inst.n * result.trials_used


def test_first_trial_after_warmup_uses_first_arm():
    inst = random_instance(33, 25)
    result = solve(inst, Params(max_trials=6, bs=5, seed=1))
    first = result.bandit_trace[0]
    assert first.arm == 0
    assert first.w == 0.0


def test_solve_is_reproducible():
    inst = random_instance(34, 35)
    params = Params(max_trials=10, bs=3, seed=11)
    first = solve(inst, params)
    second = solve(inst, params)
    assert first.best_tour == second.best_tour
    assert first.best_length == second.best_length
    assert first.trials_used == second.trials_used
    assert first.bandit_trace == second.bandit_trace


def test_warmup_matches_plain_mode():
    """Test that the warm-up trials behave exactly like the alpha-only baseline."""
    inst = random_instance(35, 35)
    pre = preprocess(inst, 5)
    mabb = solve(inst, Params(max_trials=6, bs=6, seed=5), pre=pre)
    plain = solve(inst, Params(max_trials=6, bs=6, seed=5, mode=Mode(ModeKind.LKH)), pre=pre)
    assert mabb.best_tour == plain.best_tour
    assert mabb.bandit_trace == []
    assert plain.bandit_trace is None


def test_fixed_weight_mode_runs():
    inst = random_instance(36, 30)
    result = solve(inst, Params(max_trials=8, bs=2, seed=6, mode=parse_mode("fixed-w=0.5")))
    assert result.bandit_trace is None
    assert result.best_length == tour_length(inst, result.best_tour)


def test_zero_warmup():
    inst = random_instance(37, 20)
    result = solve(inst, Params(max_trials=4, bs=0, seed=7))
    assert len(result.bandit_trace) == 4
    assert result.bandit_trace[0].reward == 0.0


def test_best_never_worsens_with_more_trials():
    inst = random_instance(38, 30)
    short = solve(inst, Params(max_trials=3, bs=1, seed=8))
    longer = solve(inst, Params(max_trials=8, bs=1, seed=8))
    assert longer.best_length <= short.best_length


def test_matches_exhaustive_optimum():
    """Test one run per random small instance against exhaustive search."""
    hits = 0
    total = 100
    for seed in range(total):
        inst = random_instance(1000 + seed, 6 + seed % 5)
        optimum, _ = brute_force_optimum(inst)
        result = solve(inst.with_optimum(optimum), Params(seed=seed))
        hits += result.best_length == optimum
    logger.info(f"Reached the exhaustive optimum on {hits}/{total} instances")
    assert hits >= 99


def test_run_batch_single_run_equals_solve():
    inst = random_instance(39, 25)
    params = Params(max_trials=5, bs=2, seed=13)
    summary = run_batch(inst, params, runs=1)
    single = solve(inst, params)
    assert summary.runs == 1
    assert summary.best == single.best_length
    assert summary.average == single.best_length
    assert summary.results[0].best_tour == single.best_tour
    assert summary.mean_trials == single.trials_used
    assert summary.success is None


def test_run_batch_seeds_and_success():
    inst = random_instance(40, 9)
    optimum, _ = brute_force_optimum(inst)
    summary = run_batch(inst.with_optimum(optimum), Params(seed=20), runs=3)
    assert [r.seed for r in summary.results] == [20, 21, 22]
    assert summary.success == sum(r.reached_optimum for r in summary.results)
    assert summary.best == min(r.best_length for r in summary.results)
    assert summary.mean_gap == pytest.approx(sum(r.gap for r in summary.results) / 3)
    assert summary.as_row()["success"] == f"{summary.success}/3"


def test_run_batch_parallel_matches_sequential():
    inst = random_instance(41, 20)
    params = Params(max_trials=4, bs=1, seed=30)
    sequential = run_batch(inst, params, runs=2, jobs=1)
    parallel = run_batch(inst, params, runs=2, jobs=2)
    assert [r.best_tour for r in parallel.results] == [r.best_tour for r in sequential.results]


def test_run_batch_rejects_zero_runs(square):
    with pytest.raises(UsageError):
        run_batch(square, Params(), runs=0)
