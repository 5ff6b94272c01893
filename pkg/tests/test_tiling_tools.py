"""Tests for exact, fractional and rainbow tiling tools (via FastMCP Client)."""

from __future__ import annotations

from fastmcp import Client, FastMCP

from tiling.config import Settings
from tiling.hypergraph import dump_three_graph
from tools.exact import register as register_exact
from tools.fractional import register as register_fractional
from tools.rainbow import register as register_rainbow

H_EXT = {"kind": "h_ext", "n": 10}
K5 = {"kind": "complete", "n": 5}
K10 = {"kind": "complete", "n": 10}


def _make_server(settings: Settings | None = None) -> FastMCP:
    mcp = FastMCP("Test")
    settings = settings or Settings()
    register_exact(mcp, settings)
    register_fractional(mcp, settings)
    register_rainbow(mcp, settings)
    return mcp


class TestPerfectTiling:
    async def test_solved(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("perfect_t_tiling", {"spec": K10})).data
        assert data["outcome"] == "solved"
        assert data["perfect"] is True
        assert data["size"] == 2

    async def test_h_ext_infeasible(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("perfect_t_tiling", {"spec": H_EXT})).data
        assert data["outcome"] == "infeasible"
        assert data["n"] == 10

    async def test_divisibility(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("perfect_t_tiling", {"spec": {"kind": "complete", "n": 7}})).data
        assert data["reason"] == "divisibility"

    async def test_zero_budget(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("perfect_t_tiling", {"spec": K10, "budget_nodes": 0})).data
        assert data["outcome"] == "unknown"

    async def test_settings_budget(self):
        async with Client(_make_server(Settings(budget_nodes=0))) as c:
            data = (await c.call_tool("perfect_t_tiling", {"spec": K10})).data
        assert data["outcome"] == "unknown"

    async def test_compact(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("perfect_t_tiling", {"spec": K5, "compact": True})).data
        assert isinstance(data["copies"], str)


class TestMaxTiling:
    async def test_h_ext(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("max_t_tiling", {"spec": H_EXT})).data
        assert data["outcome"] == "solved"
        assert data["size"] == 1
        assert data["perfect"] is False


class TestFiveGraphMatching:
    async def test_support_graph(self):
        spec = {"kind": "support_5graph", "source": K10, "A": [0, 1, 2, 3, 4, 5]}
        async with Client(_make_server()) as c:
            data = (await c.call_tool("five_graph_matching", {"spec": spec, "beta": "1/10"})).data
        assert data["outcome"] == "solved"
        assert len(data["matching"]) == 2
        assert "dense_matching_condition" in data
        assert data["degree_condition"]["applicable"] is False

    async def test_shape_mismatch(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("five_graph_matching", {"graph": "5\n"})).data
        assert data["outcome"] == "infeasible"

    async def test_rejects_three_graph_spec(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("five_graph_matching", {"spec": K5})).data
        assert "5-graph" in data["error"]


class TestFractionalTools:
    async def test_certificate_for_h_ext(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("fractional_tiling", {"spec": H_EXT})).data
        assert data["outcome"] == "infeasible"
        assert data["certificate"]["verified"] is True
        assert data["total"].startswith("-")

    async def test_feasible_complete(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("fractional_tiling", {"spec": K10})).data
        assert data["outcome"] == "solved"
        assert data["total"] == "2"
        assert sum(data["multiplicities"].values()) == data["denominator"] * 2

    async def test_audit(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("fractional_tiling", {"spec": H_EXT, "beta": "0"})).data
        assert "audit" in data

    async def test_audit_not_applicable(self):
        # n = 10 with beta = 1/10 leaves a negative family size
        async with Client(_make_server()) as c:
            data = (await c.call_tool("fractional_tiling", {"spec": H_EXT, "beta": "1/10"})).data
        assert "audit" not in data
        assert data["_warnings"]

    async def test_avoid_out_of_range(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("fractional_tiling", {"spec": K5, "avoid_pairs": [[0, 9]]})).data
        assert data["code"] == "invalid-argument"

    async def test_check_handmade_certificate(self):
        a = ["3", "3", "3"] + ["-2"] * 7
        async with Client(_make_server()) as c:
            data = (await c.call_tool("check_certificate", {"spec": H_EXT, "a": a})).data
        assert data == {"outcome": "verified", "verified": True, "total": "-5"}

    async def test_check_rejects(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("check_certificate", {"spec": K5, "a": ["-1"] * 5})).data
        assert data["outcome"] == "rejected"

    async def test_check_wrong_length(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("check_certificate", {"spec": K5, "a": ["-1"] * 4})).data
        assert "error" in data

    async def test_min_pair_weight(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("min_pair_weight", {"spec": K10, "formulation": "pairs"})).data
        assert data["W"] == "4/9"
        assert data["tiling"]["perfect"] is True

    async def test_min_pair_weight_steps(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("min_pair_weight", {"spec": K5, "improvement_steps": 2})).data
        assert data["W"] == "1"
        assert len(data["steps"]) == 1

    async def test_bad_formulation(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("min_pair_weight", {"spec": K5, "formulation": "edges"})).data
        assert "Invalid formulation" in data["error"]

    async def test_min_pair_weight_infeasible(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("min_pair_weight", {"spec": H_EXT})).data
        assert data["outcome"] == "infeasible"


class TestRainbowTools:
    async def test_colour_covering(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("colour_covering", {"first_spec": K5, "second_spec": K5})).data
        assert data["outcome"] == "solved"
        assert data["verified"] is True
        assert data["designated"] == [0, 1, 2]

    async def test_colour_covering_not_found(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("colour_covering", {"first": "5\n", "second_spec": K5})).data
        assert data["outcome"] == "not-found"

    async def test_rainbow_from_spec(self):
        spec = {"kind": "rainbow_family", "n": 5, "colours": [K5, K5, K5]}
        async with Client(_make_server()) as c:
            data = (await c.call_tool("rainbow_tiling", {"spec": spec})).data
        assert data["outcome"] == "solved"
        assert data["verified"] is True
        assert sorted(data["colours"]) == [0, 1, 2]

    async def test_rainbow_from_text(self, single_copy):
        empty = "5\n"
        family = "---\n".join([dump_three_graph(single_copy), empty, empty])
        async with Client(_make_server()) as c:
            data = (await c.call_tool("rainbow_tiling", {"family": family})).data
        assert data["outcome"] == "infeasible"

    async def test_rainbow_wrong_kind(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("rainbow_tiling", {"spec": K5})).data
        assert "colour family" in data["error"]
