"""Tests for the gentri command line."""

from __future__ import annotations

import json

import pytest

from cli import main
from tiling.generators import gen_complete, gen_h_ext
from tiling.hypergraph import dump_three_graph, parse_three_graph

H_EXT = '{"kind": "h_ext", "n": 10}'
K5 = '{"kind": "complete", "n": 5}'


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("SEED", "BUDGET_NODES", "JOBS", "FORMAT", "LOG_LEVEL"):
        monkeypatch.delenv(f"GENTRI_{name}", raising=False)


def _run(capsys, *argv: str) -> tuple[int, dict]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestTile:
    def test_h_ext_infeasible(self, capsys):
        code, report = _run(capsys, "tile", "--perfect", "--spec", H_EXT)
        assert code == 1
        assert report["outcome"] == "infeasible"
        assert report["inputs"]["mode"] == "perfect"

    def test_complete_solved(self, capsys):
        code, report = _run(capsys, "tile", "--spec", '{"kind": "complete", "n": 10}')
        assert code == 0
        assert report["verified"] is True
        assert len(report["payload"]["copies"]) == 2

    def test_budget_exhausted(self, capsys):
        code, report = _run(capsys, "tile", "--spec", '{"kind": "complete", "n": 10}', "--budget-nodes", "0")
        assert code == 2
        assert report["outcome"] == "unknown"

    def test_max_on_h_ext(self, capsys):
        code, report = _run(capsys, "tile", "--max", "--spec", H_EXT)
        assert code == 0
        assert len(report["payload"]["copies"]) == 1

    def test_no_timing_by_default(self, capsys):
        _, report = _run(capsys, "tile", "--spec", K5)
        assert "wall_time" not in report

    def test_timing_flag(self, capsys):
        _, report = _run(capsys, "tile", "--spec", K5, "--timing")
        assert report["wall_time"] >= 0


class TestCopies:
    def test_count_from_spec(self, capsys):
        code, report = _run(capsys, "copies", "--count", "--spec", K5)
        assert code == 0
        assert report["payload"]["count"] == 30

    def test_list_from_file(self, capsys, tmp_path, single_copy):
        path = tmp_path / "t.txt"
        path.write_text(dump_three_graph(single_copy))
        _, report = _run(capsys, "copies", "--list", "--input", str(path))
        assert report["payload"]["copies"] == [[0, 1, 2, 3, 4]]

    def test_missing_file(self, capsys, tmp_path):
        assert main(["copies", "--input", str(tmp_path / "missing.txt")]) == 64
        assert "cannot read" in capsys.readouterr().err

    def test_malformed_graph(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("5\n0 1 9\n")
        assert main(["copies", "--input", str(path)]) == 64
        assert "line 2" in capsys.readouterr().err


class TestFractional:
    def test_h_ext_certificate(self, capsys):
        code, report = _run(capsys, "frac", "--spec", H_EXT)
        assert code == 1
        assert report["verified"] is True
        assert report["payload"]["certificate"]["verified"] is True

    def test_complete_feasible(self, capsys):
        code, report = _run(capsys, "frac", "--spec", '{"kind": "complete", "n": 10}')
        assert code == 0
        assert report["payload"]["total"] == "2"

    def test_avoided_pair(self, capsys):
        code, report = _run(capsys, "frac", "--spec", K5, "--avoid", "0,1")
        assert code == 1
        assert report["inputs"]["avoid"] == [[0, 1]]

    def test_minimax(self, capsys):
        code, report = _run(capsys, "frac", "--spec", '{"kind": "complete", "n": 10}', "--minimax")
        assert code == 0
        assert report["payload"]["W"] == "4/9"

    def test_certify_round_trip(self, capsys, tmp_path):
        _, report = _run(capsys, "frac", "--spec", H_EXT)
        path = tmp_path / "cert.json"
        path.write_text(json.dumps(report["payload"]))
        code, checked = _run(capsys, "certify", "--spec", H_EXT, "--certificate", str(path))
        assert code == 0
        assert checked["outcome"] == "verified"

    def test_certify_rejects(self, capsys, tmp_path):
        path = tmp_path / "cert.json"
        path.write_text(json.dumps({"a": ["-1"] * 5}))
        code, checked = _run(capsys, "certify", "--spec", K5, "--certificate", str(path))
        assert code == 1
        assert checked["outcome"] == "rejected"


class TestGen:
    def test_h_ext_text(self, capsys):
        assert main(["gen", "--spec", H_EXT]) == 0
        out = capsys.readouterr().out
        assert out.startswith("# A=0,1,2")
        assert parse_three_graph(out) == gen_h_ext(10).graph

    def test_flags_build_spec(self, capsys):
        assert main(["gen", "--kind", "complete", "--n", "6"]) == 0
        assert parse_three_graph(capsys.readouterr().out) == gen_complete(6)

    def test_random_needs_seed(self, capsys):
        assert main(["gen", "--kind", "random_codegree", "--n", "8", "--delta-floor", "2"]) == 64
        assert "--seed" in capsys.readouterr().err

    def test_random_seed_from_env(self, capsys, monkeypatch):
        monkeypatch.setenv("GENTRI_SEED", "4")
        assert main(["gen", "--kind", "random_codegree", "--n", "8", "--delta-floor", "2"]) == 0
        assert "seed=4" in capsys.readouterr().out

    def test_output_file(self, tmp_path):
        target = tmp_path / "k5.txt"
        assert main(["gen", "--spec", K5, "--output", str(target)]) == 0
        assert parse_three_graph(target.read_text()) == gen_complete(5)


class TestUsage:
    def test_bad_json(self, capsys):
        assert main(["tile", "--spec", "{nope"]) == 64
        assert "not JSON" in capsys.readouterr().err

    def test_invalid_spec(self, capsys):
        assert main(["tile", "--spec", '{"kind": "h_ext"}']) == 64

    def test_unknown_command(self):
        with pytest.raises(SystemExit) as exc:
            main(["bogus"])
        assert exc.value.code == 64

    def test_bad_rational(self):
        with pytest.raises(SystemExit) as exc:
            main(["pairs", "--spec", K5, "--gamma", "x", "--set", "0,1,2"])
        assert exc.value.code == 64


class TestAnalysis:
    def test_extremal_exact(self, capsys):
        code, report = _run(capsys, "extremal", "--spec", H_EXT, "--gamma", "1/10")
        assert code == 0
        assert report["payload"]["extremal"] is True

    def test_extremal_heuristic_needs_seed(self, capsys):
        assert main(["extremal", "--spec", H_EXT, "--gamma", "0", "--mode", "heuristic"]) == 64

    def test_extremal_construction(self, capsys):
        code, report = _run(
            capsys, "extremal", "--spec", '{"kind": "complete", "n": 10}', "--gamma", "1", "--set", "0,1,2,3,4,5"
        )
        assert code == 0
        assert report["payload"]["pipeline"]["success"] is True

    def test_pairs(self, capsys):
        code, report = _run(capsys, "pairs", "--spec", H_EXT, "--gamma", "0", "--set", "3,4,5,6,7,8")
        assert code == 0
        assert report["payload"]["bad"] == []

    def test_linked_pair(self, capsys):
        code, report = _run(capsys, "linked", "--spec", '{"kind": "complete", "n": 7}', "--eta", "1/7", "--pair", "0,1")
        assert code == 0
        assert report["payload"]["count"] == 5
        assert report["payload"]["linked"] is True

    def test_linked_budget_exhausted(self, capsys):
        argv = ["linked", "--spec", '{"kind": "complete", "n": 12}', "--eta", "0", "--r", "2"]
        code, report = _run(capsys, *argv, "--pair", "0,1", "--budget-nodes", "0")
        assert code == 2
        assert report["outcome"] == "unknown"
        assert report["payload"]["reason"] == "node budget exhausted"

    def test_linked_profile_budget_from_env(self, capsys, monkeypatch):
        monkeypatch.setenv("GENTRI_BUDGET_NODES", "0")
        code, report = _run(capsys, "linked", "--spec", '{"kind": "complete", "n": 11}', "--eta", "0", "--r", "2")
        assert code == 2
        assert report["outcome"] == "unknown"

    def test_lattice(self, capsys):
        code, report = _run(
            capsys,
            "lattice",
            "--spec",
            '{"kind": "complete", "n": 6}',
            "--parts",
            "0,1,2|3,4,5",
            "--mu",
            "1",
            "--query",
            "1,-1",
            "--psi",
            "0",
        )
        assert code == 0
        assert report["payload"]["membership"] == [{"member": True, "vector": [1, -1]}]
        assert report["payload"]["transferral"]["found"] is True

    def test_rainbow_family(self, capsys):
        spec = json.dumps({"kind": "rainbow_family", "n": 5, "colours": [json.loads(K5)] * 3})
        code, report = _run(capsys, "rainbow", "--spec", spec)
        assert code == 0
        assert report["verified"] is True

    def test_colour_covering(self, capsys, tmp_path):
        second = tmp_path / "k5.txt"
        second.write_text(dump_three_graph(gen_complete(5)))
        code, report = _run(capsys, "rainbow", "--spec", K5, "--covering", str(second))
        assert code == 0
        assert report["payload"]["designated"] == [0, 1, 2]


class TestExperiment:
    def test_json(self, capsys):
        code, report = _run(capsys, "experiment", "--scenario", "minimax", "--seed", "0")
        assert code == 0
        assert report["payload"]["summary"] == {"minimax": {"agree": 2, "instances": 2}}

    def test_csv(self, capsys):
        assert main(["experiment", "--scenario", "minimax", "--seed", "0", "--format", "csv"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "scenario,instance,seed,n,outcome,expected,agree,nodes"
        assert len(lines) == 3

    def test_needs_seed(self, capsys):
        assert main(["experiment", "--scenario", "minimax"]) == 64


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ["extremal", "--spec", '{"kind": "random_codegree", "n": 10, "delta_floor": 2, "seed": 3}', "--gamma", "1"],
            ["extremal", "--spec", H_EXT, "--gamma", "0"],
            ["tile", "--spec", '{"kind": "random_codegree", "n": 10, "delta_floor": 6, "seed": 1}'],
            ["frac", "--spec", H_EXT],
            ["experiment", "--scenario", "minimax", "--seed", "0"],
        ],
    )
    def test_same_command_same_bytes(self, capsys, argv):
        first_code = main(argv)
        first = capsys.readouterr().out
        second_code = main(argv)
        second = capsys.readouterr().out
        assert first_code == second_code
        assert first == second
