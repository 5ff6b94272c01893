"""Extremality, extremal-case pipeline, linkedness and index-lattice tools."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from pydantic import ValidationError

from tiling.errors import NotFound, TilingError, Unknown
from tiling.exact import Tiling
from tiling.lattice import IndexLattice, abundant_vectors, closure_hypothesis, index_buckets, transferral_witness
from tiling.rationals import fraction_str
from tiling.structure import (
    EXACT,
    HEURISTIC,
    extremal_case_tiling,
    extremality,
    linkage_profile,
    linked_count,
    pipeline_quantities,
)
from tools._helpers import _error, _fraction, _load_graph, _negative, _solve

if TYPE_CHECKING:
    from fastmcp import FastMCP

    from tiling.config import Settings


def register(mcp: FastMCP, settings: Settings) -> None:
    @mcp.tool(
        annotations={
            "title": "Extremality",
            "readOnlyHint": True,
            "destructiveHint": False,
            "idempotentHint": True,
            "openWorldHint": False,
        }
    )
    async def extremality_check(
        gamma: str,
        graph: str | None = None,
        spec: dict | None = None,
        mode: str = EXACT,
        seed: int | None = None,
    ) -> dict:
        """Look for a floor(3n/5)-set inducing density at most gamma.

        Exact mode proves the minimum by branch and bound (falling back to the
        local-search value if the budget runs out); heuristic mode runs
        seeded local search only.

        Args:
            gamma: Density threshold as "p/q"
            graph: 3-graph in the text format
            spec: Generator spec to build the graph from instead of ``graph``
            mode: "exact" or "heuristic" (default "exact")
            seed: Local-search seed (default from GENTRI_SEED)
        """
        if mode not in (EXACT, HEURISTIC):
            return {"error": f"Invalid mode '{mode}'. Use: {EXACT}, {HEURISTIC}"}
        try:
            H = _load_graph(graph, spec)
            report = await _solve(
                extremality,
                H,
                _fraction(gamma, "gamma"),
                mode,
                seed=settings.seed if seed is None else seed,
                restarts=settings.restarts,
                budget_nodes=settings.budget_nodes,
            )
        except (TilingError, ValidationError) as exc:
            return _error(exc)
        data = report.to_dict()
        if mode == EXACT and not report.exact:
            data["_warnings"] = ["node budget exhausted; minimum density is a local-search upper bound"]
        return data

    @mcp.tool(
        annotations={
            "title": "Extremal Case",
            "readOnlyHint": True,
            "destructiveHint": False,
            "idempotentHint": True,
            "openWorldHint": False,
        }
    )
    async def extremal_case(
        S: list[int],
        gamma: str,
        graph: str | None = None,
        spec: dict | None = None,
        construct: bool = True,
    ) -> dict:
        """Good/bad pairs, the sets X, A, B and the matching M for a sparse set S.

        With construct=True, also run the extremal-case construction (set-aside
        copies, then a perfect matching of the 3+2 support 5-graph) and report
        the tiling or the stage that failed.

        Args:
            S: The floor(3n/5) vertices believed to induce a sparse subgraph
            gamma: Extremality parameter as "p/q"
            graph: 3-graph in the text format
            spec: Generator spec to build the graph from instead of ``graph``
            construct: Also attempt the full construction (default True)
        """
        try:
            H = _load_graph(graph, spec)
            gamma_value = _fraction(gamma, "gamma")
            report = await _solve(pipeline_quantities, H, tuple(S), gamma_value)
        except (TilingError, ValidationError) as exc:
            return _error(exc)
        data: dict[str, Any] = {"pipeline": report.to_dict()}
        warnings = []
        if report.degenerate:
            warnings.append("X threshold below one at this n; X is all of V \\ S")
        if construct:
            result = await _solve(
                extremal_case_tiling, H, tuple(S), gamma_value, budget_nodes=settings.budget_nodes
            )
            if isinstance(result, Tiling):
                data["tiling"] = {"outcome": "solved", **result.to_dict()}
            else:
                data["tiling"] = _negative(result)
        if warnings:
            data["_warnings"] = warnings
        return data

    @mcp.tool(
        annotations={
            "title": "Linkedness",
            "readOnlyHint": True,
            "destructiveHint": False,
            "idempotentHint": True,
            "openWorldHint": False,
        }
    )
    async def linkedness(
        eta: str,
        graph: str | None = None,
        spec: dict | None = None,
        pair: list[int] | None = None,
        r: int = 1,
        seed: int | None = None,
    ) -> dict:
        """(eta, r)-linkedness of one pair, or the linkage profile of every vertex.

        A pair u, v is linked when at least eta C(n, 5r-1) sets S of size
        5r-1 make both S+u and S+v perfectly tileable. Counts are exact for
        r <= 2 and sampled estimates above.

        Args:
            eta: Linkedness threshold as "p/q"
            graph: 3-graph in the text format
            spec: Generator spec to build the graph from instead of ``graph``
            pair: Two vertices to test; omit for the full profile
            r: Tiling size parameter (default 1)
            seed: Sampling seed for r > 2 (default from GENTRI_SEED)
        """
        seed = settings.seed if seed is None else seed
        try:
            H = _load_graph(graph, spec)
            eta_value = _fraction(eta, "eta")
            if pair is not None:
                if len(pair) != 2:
                    return {"error": f"pair needs two vertices, got {len(pair)}"}
                count = await _solve(
                    linked_count,
                    H,
                    pair[0],
                    pair[1],
                    r,
                    samples=settings.samples,
                    seed=seed,
                    budget_nodes=settings.budget_nodes,
                )
                if isinstance(count, Unknown):
                    return _negative(count)
                return {**count.to_dict(), "eta": fraction_str(eta_value), "linked": count.linked(eta_value, H.n)}
            profile = await _solve(
                linkage_profile,
                H,
                eta_value,
                r,
                seed=seed,
                samples=settings.samples,
                budget_nodes=settings.budget_nodes,
            )
        except (TilingError, ValidationError) as exc:
            return _error(exc)
        if isinstance(profile, Unknown):
            return _negative(profile)
        return profile.to_dict()

    @mcp.tool(
        annotations={
            "title": "Index Lattice",
            "readOnlyHint": True,
            "destructiveHint": False,
            "idempotentHint": True,
            "openWorldHint": False,
        }
    )
    async def index_lattice(
        parts: list[list[int]],
        mu: str,
        graph: str | None = None,
        spec: dict | None = None,
        queries: list[list[int]] | None = None,
        psi: str | None = None,
    ) -> dict:
        """Index-vector buckets, abundant vectors and lattice membership.

        Args:
            parts: Ordered partition of the vertices
            mu: Abundance threshold as "p/q" (a vector counts when realised by >= mu C(n,5) copies)
            graph: 3-graph in the text format
            spec: Generator spec to build the graph from instead of ``graph``
            queries: Integer vectors to test for membership in the lattice
            psi: For two parts, also look for a transferral pair at this threshold
        """
        try:
            H = _load_graph(graph, spec)
            mu_value = _fraction(mu, "mu")
            buckets = await _solve(index_buckets, H, tuple(tuple(p) for p in parts))
            generators = abundant_vectors(H, parts, mu_value)
            lattice = IndexLattice.of(generators, dim=len(parts))
            closure = closure_hypothesis(H, parts, mu_value)
            membership = [{"vector": q, "member": lattice.contains(q)} for q in queries or ()]
            witness = transferral_witness(H, parts, _fraction(psi, "psi")) if psi is not None else None
        except (TilingError, ValidationError) as exc:
            return _error(exc)
        data: dict[str, Any] = {
            "buckets": [{"vector": list(v), "copies": c} for v, c in buckets.items()],
            "closure": closure.to_dict(),
            "lattice": lattice.to_dict(),
            "membership": membership,
        }
        if witness is not None:
            data["transferral"] = (
                {"found": False, "reason": witness.reason}
                if isinstance(witness, NotFound)
                else {"found": True, "pair": [list(v) for v in witness]}
            )
        return data
