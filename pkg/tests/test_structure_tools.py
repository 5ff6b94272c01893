"""Tests for structure-analysis and experiment tools (via FastMCP Client)."""

from __future__ import annotations

from fastmcp import Client, FastMCP

from tiling.config import Settings
from tools.experiments import register as register_experiments
from tools.structure import register as register_structure

H_EXT = {"kind": "h_ext", "n": 10}
K10 = {"kind": "complete", "n": 10}


def _make_server(settings: Settings | None = None) -> FastMCP:
    mcp = FastMCP("Test")
    settings = settings or Settings()
    register_structure(mcp, settings)
    register_experiments(mcp, settings)
    return mcp


class TestExtremalityCheck:
    async def test_h_ext(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("extremality_check", {"spec": H_EXT, "gamma": "1/10", "seed": 0})).data
        assert data["extremal"] is True
        assert data["exact"] is True
        assert "_warnings" not in data

    async def test_budget_warning(self):
        async with Client(_make_server(Settings(budget_nodes=0))) as c:
            data = (await c.call_tool("extremality_check", {"spec": H_EXT, "gamma": "0", "seed": 0})).data
        assert data["exact"] is False
        assert data["_warnings"]

    async def test_bad_mode(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("extremality_check", {"spec": H_EXT, "gamma": "0", "mode": "fast"})).data
        assert "Invalid mode" in data["error"]

    async def test_bad_gamma(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("extremality_check", {"spec": H_EXT, "gamma": "one"})).data
        assert data["code"] == "invalid-argument"


class TestExtremalCase:
    async def test_complete_constructs(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("extremal_case", {"spec": K10, "S": [0, 1, 2, 3, 4, 5], "gamma": "1"})).data
        assert data["pipeline"]["success"] is True
        assert data["tiling"]["outcome"] == "solved"
        assert len(data["tiling"]["copies"]) == 2

    async def test_h_ext_matching_stage(self):
        args = {"spec": H_EXT, "S": [3, 4, 5, 6, 7, 8], "gamma": "1/10"}
        async with Client(_make_server()) as c:
            data = (await c.call_tool("extremal_case", args)).data
        assert data["pipeline"]["X"] == [9]
        assert data["tiling"]["outcome"] == "infeasible"
        assert data["tiling"]["reason"].startswith("matching stage")

    async def test_pipeline_only(self):
        args = {"spec": H_EXT, "S": [3, 4, 5, 6, 7, 8], "gamma": "1/10", "construct": False}
        async with Client(_make_server()) as c:
            data = (await c.call_tool("extremal_case", args)).data
        assert "tiling" not in data

    async def test_degenerate_warning(self):
        args = {"spec": {"kind": "complete", "n": 5}, "S": [0, 1, 2], "gamma": "1", "construct": False}
        async with Client(_make_server()) as c:
            data = (await c.call_tool("extremal_case", args)).data
        assert data["pipeline"]["degenerate"] is True
        assert data["_warnings"]

    async def test_wrong_set_size(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("extremal_case", {"spec": H_EXT, "S": [3, 4], "gamma": "0"})).data
        assert data["code"] == "invalid-argument"


class TestLinkedness:
    async def test_pair(self):
        args = {"spec": {"kind": "complete", "n": 7}, "eta": "1/7", "pair": [0, 1]}
        async with Client(_make_server()) as c:
            data = (await c.call_tool("linkedness", args)).data
        assert data["count"] == 5
        assert data["linked"] is True
        assert data["eta"] == "1/7"

    async def test_profile(self):
        args = {"spec": {"kind": "complete", "n": 6}, "eta": "1"}
        async with Client(_make_server()) as c:
            data = (await c.call_tool("linkedness", args)).data
        assert data["unlinked_triples"] == 20
        assert data["every_triple_linked"] is False

    async def test_budget_from_settings(self):
        args = {"spec": {"kind": "complete", "n": 12}, "eta": "0", "pair": [0, 1], "r": 2}
        async with Client(_make_server(Settings(budget_nodes=0))) as c:
            pair = (await c.call_tool("linkedness", args)).data
            profile = (await c.call_tool("linkedness", {**args, "pair": None})).data
        assert pair == {"outcome": "unknown", "reason": "node budget exhausted"}
        assert profile["outcome"] == "unknown"

    async def test_pair_length(self):
        args = {"spec": {"kind": "complete", "n": 6}, "eta": "1", "pair": [0, 1, 2]}
        async with Client(_make_server()) as c:
            data = (await c.call_tool("linkedness", args)).data
        assert "two vertices" in data["error"]


class TestIndexLattice:
    async def test_complete_six(self):
        args = {
            "spec": {"kind": "complete", "n": 6},
            "parts": [[0, 1, 2], [3, 4, 5]],
            "mu": "1",
            "queries": [[1, -1], [1, 0]],
            "psi": "0",
        }
        async with Client(_make_server()) as c:
            data = (await c.call_tool("index_lattice", args)).data
        assert data["buckets"] == [{"vector": [2, 3], "copies": 90}, {"vector": [3, 2], "copies": 90}]
        assert [q["member"] for q in data["membership"]] == [True, False]
        assert data["closure"]["holds"] is True
        assert data["transferral"] == {"found": True, "pair": [[3, 2], [2, 3]]}

    async def test_not_a_partition(self):
        args = {"spec": {"kind": "complete", "n": 6}, "parts": [[0, 1], [2, 3]], "mu": "1"}
        async with Client(_make_server()) as c:
            data = (await c.call_tool("index_lattice", args)).data
        assert data["code"] == "invalid-argument"


class TestRunExperiment:
    async def test_minimax(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("run_experiment", {"scenario": "minimax", "compact": False})).data
        assert data["seed"] == 0
        assert data["summary"] == {"minimax": {"agree": 2, "instances": 2}}
        assert len(data["rows"]) == 2
        assert "_warnings" not in data

    async def test_compact_rows(self):
        async with Client(_make_server(Settings(seed=5))) as c:
            data = (await c.call_tool("run_experiment", {"scenario": "fractional"})).data
        assert data["seed"] == 5
        assert isinstance(data["rows"], str)

    async def test_unknown_scenario(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("run_experiment", {"scenario": "nope"})).data
        assert "Invalid scenario" in data["error"]
