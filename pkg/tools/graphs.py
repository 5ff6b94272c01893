"""Graph generation and basic statistics tools."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from pydantic import ValidationError

from tiling.errors import TilingError
from tiling.generators import GenSpec, build
from tiling.hypergraph import ThreeGraph, density, max_codegree, min_codegree, vertex_degree
from tiling.rationals import fraction_str
from tools._helpers import _error, _load_graph, _solve

if TYPE_CHECKING:
    from fastmcp import FastMCP

    from tiling.config import Settings


def _stats(H: ThreeGraph) -> dict:
    data: dict[str, Any] = {"n": H.n, "edges": H.edge_count}
    if H.n >= 2:
        data["min_codegree"] = min_codegree(H)
        data["max_codegree"] = max_codegree(H)
    if H.n >= 3:
        data["density"] = fraction_str(density(H))
    degrees = [vertex_degree(H, v) for v in range(H.n)]
    data["min_degree"] = min(degrees, default=0)
    data["max_degree"] = max(degrees, default=0)
    return data


def register(mcp: FastMCP, settings: Settings) -> None:
    @mcp.tool(
        annotations={
            "title": "Generate Graph",
            "readOnlyHint": True,
            "destructiveHint": False,
            "idempotentHint": True,
            "openWorldHint": False,
        }
    )
    async def generate_graph(spec: dict) -> dict:
        """Build a named or seeded 3-graph (or 5-graph, or colour family).

        Returns the graph in the text format (vertex count line, one sorted
        edge per line, ``# key=value`` metadata header) plus basic statistics.

        Args:
            spec: Generator spec, e.g. {"kind": "h_ext", "n": 10},
                {"kind": "random_codegree", "n": 12, "delta_floor": 4, "seed": 7},
                {"kind": "tripartite", "sizes": [3, 3, 3]}. Kinds: h_ext, complete,
                tripartite, random_codegree, support_5graph, rainbow_family.
        """
        if spec.get("kind") == "random_codegree" and spec.get("seed") is None and settings.seed is not None:
            spec = {**spec, "seed": settings.seed}
        try:
            built = await _solve(build, GenSpec.model_validate(spec))
        except (TilingError, ValidationError) as exc:
            return _error(exc)

        result: dict[str, Any] = {"kind": built.spec.kind, "text": built.dump(), "meta": built.meta()}
        if len(built.graphs) == 1 and isinstance(built.graph, ThreeGraph):
            result["stats"] = _stats(built.graph)
        else:
            result["graphs"] = len(built.graphs)
            result["edges"] = [g.edge_count for g in built.graphs]
        return result

    @mcp.tool(
        annotations={
            "title": "Graph Stats",
            "readOnlyHint": True,
            "destructiveHint": False,
            "idempotentHint": True,
            "openWorldHint": False,
        }
    )
    async def graph_stats(graph: str | None = None, spec: dict | None = None) -> dict:
        """Vertex and edge counts, codegree range, degree range and density.

        Args:
            graph: 3-graph in the text format
            spec: Generator spec to build the graph from instead of ``graph``
        """
        try:
            H = _load_graph(graph, spec)
        except (TilingError, ValidationError) as exc:
            return _error(exc)
        return await _solve(_stats, H)
