"""Test the command-line front end and the exhaustive oracle."""

import importlib
import json

import pandas as pd
import pytest

from lkbandit.cli import ORACLE_MAX_CITIES, brute_force_optimum, main
from lkbandit.config import Config
from lkbandit.errors import UsageError
from lkbandit.tests.conftest import random_instance
from lkbandit.tsplib import Instance, load_instance, read_tour, tour_length


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Run the command line against defaults, not the user config file."""
    monkeypatch.setattr(importlib.import_module("lkbandit.cli.main"), "config", Config(tmp_path / "config.json"))


def test_oracle_three_cities():
    inst = Instance.from_coords("tri", [[0, 0], [3, 0], [0, 4]])
    length, order = brute_force_optimum(inst)
    assert length == 12
    assert order == [0, 1, 2]


def test_oracle_square(square):
    length, order = brute_force_optimum(square)
    assert length == 40
    assert order == [0, 1, 2, 3]


def test_oracle_explicit(data_dir):
    inst = load_instance(data_dir / "five_upper_row.tsp")
    length, order = brute_force_optimum(inst)
    assert length == 19
    assert order == [0, 2, 1, 4, 3]
    assert tour_length(inst, order) == 19


def test_oracle_refuses_large_instances():
    with pytest.raises(UsageError):
        brute_force_optimum(random_instance(1, ORACLE_MAX_CITIES + 1))


def write_random_tsp(path, n, seed=0):
    inst = random_instance(seed, n)
    lines = ["NAME : big", "TYPE : TSP", f"DIMENSION : {n}", "EDGE_WEIGHT_TYPE : EUC_2D", "NODE_COORD_SECTION"]
    lines += [f"{i + 1} {int(x)} {int(y)}" for i, (x, y) in enumerate(inst.coords)]
    lines.append("EOF")
    path.write_text("\n".join(lines) + "\n")
    return path


def test_cmd_oracle(data_dir, capsys):
    assert main(["oracle", "--instance", str(data_dir / "five_upper_row.tsp")]) == 0
    out = capsys.readouterr().out
    assert "optimum 19" in out
    assert "1 3 2 5 4" in out


def test_cmd_oracle_refusal_exit_code(tmp_path):
    path = write_random_tsp(tmp_path / "big.tsp", 13)
    assert main(["oracle", "--instance", str(path)]) == 2


def test_cmd_solve_writes_artifacts(data_dir, tmp_path, capsys):
    json_path = tmp_path / "result.json"
    tour_path = tmp_path / "best.tour"
    code = main([
        "solve", "--instance", str(data_dir / "square.tsp"), "--runs", "1", "--seed", "7",
        "--optimum", "40", "--json", str(json_path), "--output-tour", str(tour_path),
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "square" in out
    assert "1/1" in out

    payload = json.loads(json_path.read_text())
    assert payload["best"] == 40
    assert payload["success"] == 1
    run = payload["results"][0]
    assert run["best_length"] == 40
    assert run["reached_optimum"] is True
    assert sorted(run["best_tour"]) == [1, 2, 3, 4]
    assert sorted(read_tour(tour_path)) == [0, 1, 2, 3]


def test_cmd_solve_trace_and_backbone(tmp_path):
    path = write_random_tsp(tmp_path / "pts.tsp", 20, seed=3)
    trace_path = tmp_path / "trace.csv"
    backbone_path = tmp_path / "backbone.txt"
    code = main([
        "solve", "--instance", str(path), "--max-trials", "6", "--bs", "2", "--arms", "3",
        "--trace", str(trace_path), "--dump-backbone", str(backbone_path),
    ])
    assert code == 0
    trace = pd.read_csv(trace_path)
    assert list(trace.columns) == ["run", "trial", "arm", "w", "reward", "V_1", "V_2", "V_3"]
    assert list(trace["trial"]) == [3, 4, 5, 6]
    assert trace["arm"].between(1, 3).all()
    counts = [int(line.split()[2]) for line in backbone_path.read_text().splitlines()]
    assert sum(counts) == 20 * 6


def test_cmd_solve_fixed_weight_mode(data_dir):
    assert main(["solve", "--instance", str(data_dir / "square.tsp"), "--mode", "fixed-w=1.0"]) == 0


def test_cmd_solve_missing_file(tmp_path, caplog):
    missing = tmp_path / "nowhere.tsp"
    assert main(["solve", "--instance", str(missing)]) == 1
    assert "nowhere.tsp" in caplog.text


def test_cmd_solve_parse_error(data_dir):
    assert main(["solve", "--instance", str(data_dir / "bad_dimension.tsp")]) == 1


def test_cmd_solve_two_city_file_is_data_error(tmp_path):
    path = tmp_path / "pair.tsp"
    path.write_text("NAME : pair\nTYPE : TSP\nDIMENSION : 2\nEDGE_WEIGHT_TYPE : EUC_2D\n"
                    "NODE_COORD_SECTION\n1 0 0\n2 3 4\nEOF\n")
    assert main(["solve", "--instance", str(path)]) == 1


def test_cmd_solve_bad_mode(data_dir):
    assert main(["solve", "--instance", str(data_dir / "square.tsp"), "--mode", "greedy"]) == 2


def test_bad_flag_is_usage_error(data_dir):
    with pytest.raises(SystemExit) as excinfo:
        main(["solve", "--instance", str(data_dir / "square.tsp"), "--no-such-flag"])
    assert excinfo.value.code == 2


def test_cmd_bench(data_dir, tmp_path, capsys):
    json_path = tmp_path / "bench.json"
    code = main([
        "bench", "--registry", str(data_dir / "registry.txt"), "--modes", "mabb,lkh,fixed-w=0,fixed-w=0.5",
        "--runs", "2", "--json", str(json_path),
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "Cumulative gap" in out
    payload = json.loads(json_path.read_text())
    assert len(payload["summaries"]) == 8
    assert {s["mode"] for s in payload["summaries"]} == {"mabb", "lkh", "fixed-w=0", "fixed-w=0.5"}
    assert all(s["success"] == 2 for s in payload["summaries"])
    assert payload["cumulative_gap"] == {"mabb": 0.0, "lkh": 0.0, "fixed-w=0": 0.0, "fixed-w=0.5": 0.0}


def test_cmd_bench_empty_registry(data_dir):
    assert main(["bench", "--registry", str(data_dir / "empty_registry.txt")]) == 2
