"""Colour covering and rainbow tiling tools."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from pydantic import ValidationError

from tiling.errors import InvalidArgument, NotFound, TilingError
from tiling.generators import GenSpec, build, parse_family
from tiling.rainbow import RainbowInstance, RainbowTiling, colour_covering_hom, rainbow_perfect_tiling
from tools._helpers import _error, _load_graph, _negative, _solve

if TYPE_CHECKING:
    from fastmcp import FastMCP

    from tiling.config import Settings


def _load_family(family: str | None, spec: dict | None) -> RainbowInstance:
    if (family is None) == (spec is None):
        raise InvalidArgument("pass exactly one of family or spec")
    if family is not None:
        return parse_family(family)
    built = build(GenSpec.model_validate(spec))
    if built.spec.kind != "rainbow_family":
        raise InvalidArgument(f"spec kind {built.spec.kind!r} does not describe a colour family")
    return RainbowInstance.of(built.graphs)  # type: ignore[arg-type]


def register(mcp: FastMCP, settings: Settings) -> None:
    @mcp.tool(
        annotations={
            "title": "Colour Covering",
            "readOnlyHint": True,
            "destructiveHint": False,
            "idempotentHint": True,
            "openWorldHint": False,
        }
    )
    async def colour_covering(
        first: str | None = None,
        second: str | None = None,
        first_spec: dict | None = None,
        second_spec: dict | None = None,
    ) -> dict:
        """Embed T with one edge in the first colour graph and two in the second.

        Args:
            first: First colour 3-graph in the text format
            second: Second colour 3-graph in the text format
            first_spec: Generator spec for the first graph instead of ``first``
            second_spec: Generator spec for the second graph instead of ``second``
        """
        try:
            H1 = _load_graph(first, first_spec)
            H2 = _load_graph(second, second_spec)
            result = await _solve(colour_covering_hom, H1, H2)
        except (TilingError, ValidationError) as exc:
            return _error(exc)
        if isinstance(result, NotFound):
            return _negative(result)
        return {"outcome": "solved", "verified": result.verify(H1, H2), **result.to_dict()}

    @mcp.tool(
        annotations={
            "title": "Rainbow T-Tiling",
            "readOnlyHint": True,
            "destructiveHint": False,
            "idempotentHint": True,
            "openWorldHint": False,
        }
    )
    async def rainbow_tiling(
        family: str | None = None,
        spec: dict | None = None,
        budget_nodes: int | None = None,
    ) -> dict:
        """Perfect T-tiling of the union whose 3n/5 edges use each colour once.

        Args:
            family: Colour graphs in the text format, separated by "---" lines
            spec: A rainbow_family generator spec instead of ``family``
            budget_nodes: Search node limit (default from GENTRI_BUDGET_NODES)
        """
        try:
            inst = _load_family(family, spec)
        except (TilingError, ValidationError) as exc:
            return _error(exc)
        budget = settings.budget_nodes if budget_nodes is None else budget_nodes
        result = await _solve(rainbow_perfect_tiling, inst, budget_nodes=budget)
        if not isinstance(result, RainbowTiling):
            return _negative(result)
        data: dict[str, Any] = {"outcome": "solved", "verified": result.verify(inst), **result.to_dict()}
        return data
