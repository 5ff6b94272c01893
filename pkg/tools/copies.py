"""Copy enumeration tools."""

from __future__ import annotations

from typing import TYPE_CHECKING

from pydantic import ValidationError

from tiling.copies import count_copies, enumerate_copies, supports_T
from tiling.errors import TilingError
from tools._helpers import _error, _load_graph, _rows, _solve

if TYPE_CHECKING:
    from fastmcp import FastMCP

    from tiling.config import Settings

DEFAULT_LIST_LIMIT = 200


def register(mcp: FastMCP, settings: Settings) -> None:
    del settings

    @mcp.tool(
        annotations={
            "title": "T Copies",
            "readOnlyHint": True,
            "destructiveHint": False,
            "idempotentHint": True,
            "openWorldHint": False,
        }
    )
    async def t_copies(
        graph: str | None = None,
        spec: dict | None = None,
        list_copies: bool = False,
        limit: int = DEFAULT_LIST_LIMIT,
        compact: bool = False,
    ) -> dict:
        """Count copies of T (edges abc, abd, cde); optionally list them.

        Each copy is reported once, in canonical role order a < b, c < d.

        Args:
            graph: 3-graph in the text format
            spec: Generator spec to build the graph from instead of ``graph``
            list_copies: Include the copies themselves (default False)
            limit: Maximum number of copies to list (default 200)
            compact: Encode the copy list as a TOON table (default False)
        """
        try:
            H = _load_graph(graph, spec)
        except (TilingError, ValidationError) as exc:
            return _error(exc)

        result: dict = {"n": H.n, "count": await _solve(count_copies, H)}
        if list_copies:
            copies = await _solve(enumerate_copies, H)
            rows = [copy._asdict() for copy in copies[:limit]]
            result["copies"] = _rows(rows, compact)
            if len(copies) > limit:
                result["_warnings"] = [f"listed {limit} of {len(copies)} copies"]
        return result

    @mcp.tool(
        annotations={
            "title": "Supports T",
            "readOnlyHint": True,
            "destructiveHint": False,
            "idempotentHint": True,
            "openWorldHint": False,
        }
    )
    async def supports_t(vertices: list[int], graph: str | None = None, spec: dict | None = None) -> dict:
        """Whether five given vertices span a copy of T.

        Args:
            vertices: Exactly five distinct vertex ids
            graph: 3-graph in the text format
            spec: Generator spec to build the graph from instead of ``graph``
        """
        try:
            H = _load_graph(graph, spec)
            return {"vertices": sorted(vertices), "supports": supports_T(H, vertices)}
        except (TilingError, ValidationError) as exc:
            return _error(exc)
