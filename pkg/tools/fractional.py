"""Fractional tiling, Farkas certificate and pair-weight tools."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from pydantic import ValidationError

from tiling.errors import Infeasible, TilingError
from tiling.fractional import (
    FORMULATIONS,
    FarkasCertificate,
    FractionalTiling,
    certificate_partition_audit,
    frac_min_pair_weight,
    frac_perfect,
    improve_pair_weight,
    to_multigraph,
    verify_certificate,
)
from tiling.hypergraph import AvoidanceGraph
from tiling.rationals import fraction_str
from tools._helpers import _error, _fraction, _load_graph, _safe_call, _solve

if TYPE_CHECKING:
    from fastmcp import FastMCP

    from tiling.config import Settings


def _tiling_payload(w: FractionalTiling) -> dict:
    data = w.to_dict()
    denominator, multiplicities = to_multigraph(w)
    data["outcome"] = "solved"
    data["psi"] = fraction_str(w.psi())
    data["denominator"] = denominator
    data["multiplicities"] = {" ".join(map(str, k)): m for k, m in multiplicities.items()}
    return data


def register(mcp: FastMCP, settings: Settings) -> None:
    del settings

    @mcp.tool(
        annotations={
            "title": "Fractional T-Tiling",
            "readOnlyHint": True,
            "destructiveHint": False,
            "idempotentHint": True,
            "openWorldHint": False,
        }
    )
    async def fractional_tiling(
        graph: str | None = None,
        spec: dict | None = None,
        avoid_pairs: list[list[int]] | None = None,
        beta: str | None = None,
    ) -> dict:
        """Perfect fractional T-tiling, or a verified Farkas certificate.

        A certificate is a vertex vector a with a.1_S >= 0 for every usable
        copy S and a.1 < 0. Rationals are "p/q" strings.

        Args:
            graph: 3-graph in the text format
            spec: Generator spec to build the graph from instead of ``graph``
            avoid_pairs: Forbidden vertex pairs; copies containing one get no weight
            beta: With a certificate, also sort vertices by it and audit the ordered-partition argument at this beta (e.g. "0")
        """
        try:
            H = _load_graph(graph, spec)
            B = AvoidanceGraph.of(avoid_pairs or ())
            B.check_range(H.n)
        except (TilingError, ValidationError) as exc:
            return _error(exc)

        result = await _solve(frac_perfect, H, B)
        if isinstance(result, FractionalTiling):
            return _tiling_payload(result)

        data: dict[str, Any] = {"outcome": "infeasible", "certificate": result.to_dict(True)}
        data["total"] = fraction_str(result.total())
        if beta is not None:
            try:
                beta_value = _fraction(beta, "beta")
            except TilingError as exc:
                return _error(exc)
            audit = await _safe_call(certificate_partition_audit, H, B, result, beta_value)
            if audit is None:
                data["_warnings"] = [f"ordered-partition audit not applicable at n={H.n}, beta={beta}"]
            else:
                data["audit"] = audit.to_dict()
        return data

    @mcp.tool(
        annotations={
            "title": "Check Certificate",
            "readOnlyHint": True,
            "destructiveHint": False,
            "idempotentHint": True,
            "openWorldHint": False,
        }
    )
    async def check_certificate(
        a: list[str],
        graph: str | None = None,
        spec: dict | None = None,
        avoid_pairs: list[list[int]] | None = None,
    ) -> dict:
        """Verify a Farkas certificate independently of the solver.

        Args:
            a: One rational per vertex, e.g. ["3", "3", "3", "-2", ...]
            graph: 3-graph in the text format
            spec: Generator spec to build the graph from instead of ``graph``
            avoid_pairs: Forbidden vertex pairs the certificate was issued for
        """
        try:
            H = _load_graph(graph, spec)
            cert = FarkasCertificate.from_dict({"a": a, "avoiding": avoid_pairs or []})
            ok = verify_certificate(H, cert.avoiding, cert)
        except (TilingError, ValidationError) as exc:
            return _error(exc)
        return {"outcome": "verified" if ok else "rejected", "verified": ok, "total": fraction_str(cert.total())}

    @mcp.tool(
        annotations={
            "title": "Minimum Pair Weight",
            "readOnlyHint": True,
            "destructiveHint": False,
            "idempotentHint": True,
            "openWorldHint": False,
        }
    )
    async def min_pair_weight(
        graph: str | None = None,
        spec: dict | None = None,
        formulation: str = "sets",
        improvement_steps: int = 0,
    ) -> dict:
        """Smallest possible largest pair weight over perfect fractional tilings.

        With improvement_steps > 0, also run that many avoid-and-blend steps
        from the first perfect fractional tiling found, showing how the
        largest pair weight drops.

        Args:
            graph: 3-graph in the text format
            spec: Generator spec to build the graph from instead of ``graph``
            formulation: "sets" (bound each pair directly) or "pairs" (explicit pair variables)
            improvement_steps: Number of improvement steps to trace (default 0)
        """
        if formulation not in FORMULATIONS:
            return {"error": f"Invalid formulation '{formulation}'. Use: {', '.join(FORMULATIONS)}"}
        try:
            H = _load_graph(graph, spec)
        except (TilingError, ValidationError) as exc:
            return _error(exc)

        result = await _solve(frac_min_pair_weight, H, formulation=formulation)
        if isinstance(result, Infeasible):
            return {"outcome": "infeasible", "reason": result.reason}
        value, tiling = result
        data: dict[str, Any] = {"outcome": "solved", "W": fraction_str(value), "tiling": _tiling_payload(tiling)}

        if improvement_steps > 0:
            start = await _solve(frac_perfect, H)
            steps = []
            current = start
            for _ in range(improvement_steps):
                step = await _solve(improve_pair_weight, H, current)
                steps.append(step.to_dict())
                if not step.improved:
                    break
                current = step.result
            data["steps"] = steps
        return data
