"""Exact tiling and 5-graph matching tools."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from pydantic import ValidationError

from tiling.errors import TilingError
from tiling.exact import (
    Tiling,
    auxiliary_matching_check,
    dh_condition_check,
    max_tiling,
    perfect_matching_5graph,
    perfect_tiling,
)
from tools._helpers import _error, _fraction, _load_five_graph, _load_graph, _negative, _rows, _solve

if TYPE_CHECKING:
    from fastmcp import FastMCP

    from tiling.config import Settings


def _tiling_payload(tiling: Tiling, compact: bool) -> dict:
    data = tiling.to_dict()
    data["outcome"] = "solved"
    data["size"] = tiling.size
    if compact:
        data["copies"] = _rows([dict(zip("abcde", c)) for c in tiling.copies], True)
    return data


def register(mcp: FastMCP, settings: Settings) -> None:
    @mcp.tool(
        annotations={
            "title": "Perfect T-Tiling",
            "readOnlyHint": True,
            "destructiveHint": False,
            "idempotentHint": True,
            "openWorldHint": False,
        }
    )
    async def perfect_t_tiling(
        graph: str | None = None,
        spec: dict | None = None,
        budget_nodes: int | None = None,
        compact: bool = False,
    ) -> dict:
        """Find a perfect T-tiling or certify that none exists.

        Outcome is "solved" with the copies, "infeasible" with a reason
        (divisibility, an uncovered vertex, or an exhausted search), or
        "unknown" when the node budget runs out.

        Args:
            graph: 3-graph in the text format
            spec: Generator spec to build the graph from instead of ``graph``
            budget_nodes: Search node limit (default from GENTRI_BUDGET_NODES)
            compact: Encode copies as a TOON table (default False)
        """
        try:
            H = _load_graph(graph, spec)
        except (TilingError, ValidationError) as exc:
            return _error(exc)
        budget = settings.budget_nodes if budget_nodes is None else budget_nodes
        result = await _solve(perfect_tiling, H, budget_nodes=budget)
        if isinstance(result, Tiling):
            return _tiling_payload(result, compact)
        return {"n": H.n, **_negative(result)}

    @mcp.tool(
        annotations={
            "title": "Maximum T-Tiling",
            "readOnlyHint": True,
            "destructiveHint": False,
            "idempotentHint": True,
            "openWorldHint": False,
        }
    )
    async def max_t_tiling(
        graph: str | None = None,
        spec: dict | None = None,
        budget_nodes: int | None = None,
        compact: bool = False,
    ) -> dict:
        """Largest family of vertex-disjoint copies of T.

        Optimal unless the budget runs out, in which case the best tiling
        found so far is returned with outcome "unknown".

        Args:
            graph: 3-graph in the text format
            spec: Generator spec to build the graph from instead of ``graph``
            budget_nodes: Search node limit (default from GENTRI_BUDGET_NODES)
            compact: Encode copies as a TOON table (default False)
        """
        try:
            H = _load_graph(graph, spec)
        except (TilingError, ValidationError) as exc:
            return _error(exc)
        budget = settings.budget_nodes if budget_nodes is None else budget_nodes
        result = await _solve(max_tiling, H, budget_nodes=budget)
        if isinstance(result, Tiling):
            return _tiling_payload(result, compact)
        data = {"n": H.n, **_negative(result)}
        if result.best is not None:
            data["best"] = _tiling_payload(result.best, compact)
            data["_warnings"] = ["budget exhausted; best tiling found is not proven optimal"]
        return data

    @mcp.tool(
        annotations={
            "title": "5-Graph Perfect Matching",
            "readOnlyHint": True,
            "destructiveHint": False,
            "idempotentHint": True,
            "openWorldHint": False,
        }
    )
    async def five_graph_matching(
        graph: str | None = None,
        spec: dict | None = None,
        parts: list[list[int]] | None = None,
        beta: str | None = None,
        budget_nodes: int | None = None,
    ) -> dict:
        """Perfect matching of a 5-graph plus the degree-condition reports.

        Args:
            graph: 5-graph in the text format (optional ``A:`` line for a 3+2 split)
            spec: Generator spec (kind support_5graph) instead of ``graph``
            parts: Optional 5-partition for the equal-parts degree condition
            beta: Optional density slack for the 3+2 split dense-matching check, e.g. "1/10"
            budget_nodes: Search node limit (default from GENTRI_BUDGET_NODES)
        """
        try:
            J = _load_five_graph(graph, spec)
            condition = dh_condition_check(J, parts)
            auxiliary = auxiliary_matching_check(J, _fraction(beta, "beta")) if beta is not None else None
        except (TilingError, ValidationError) as exc:
            return _error(exc)

        budget = settings.budget_nodes if budget_nodes is None else budget_nodes
        result = await _solve(perfect_matching_5graph, J, budget_nodes=budget)
        data: dict[str, Any] = {"n": J.n, "degree_condition": condition.to_dict()}
        if auxiliary is not None:
            data["dense_matching_condition"] = auxiliary.to_dict()
        if isinstance(result, tuple):
            data.update(outcome="solved", matching=[list(e) for e in result])
        else:
            data.update(_negative(result))
        return data
