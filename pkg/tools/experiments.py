"""Acceptance scenario tool."""

from __future__ import annotations

from typing import TYPE_CHECKING

from tiling.errors import TilingError
from tiling.experiments import ALL, SCENARIOS, run_scenarios, summarize
from tools._helpers import _error, _rows, _solve

if TYPE_CHECKING:
    from fastmcp import FastMCP

    from tiling.config import Settings

DEFAULT_SEED = 0


def register(mcp: FastMCP, settings: Settings) -> None:
    @mcp.tool(
        annotations={
            "title": "Run Experiment",
            "readOnlyHint": True,
            "destructiveHint": False,
            "idempotentHint": True,
            "openWorldHint": False,
        }
    )
    async def run_experiment(scenario: str, seed: int | None = None, compact: bool = True) -> dict:
        """Run a named scenario batch and compare each instance with its expected outcome.

        Scenarios: tightness, fractional, copy-oracle, cover-oracle, minimax,
        lattice-oracle, linked-oracle, colour-covering, implication, or "all".
        Instance seeds are spawned from ``seed``, so reruns give identical rows.

        Args:
            scenario: Scenario name or "all"
            seed: Base seed (default from GENTRI_SEED, else 0)
            compact: Encode the rows as a TOON table (default True)
        """
        if scenario != ALL and scenario not in SCENARIOS:
            return {"error": f"Invalid scenario '{scenario}'. Use: {', '.join([*SCENARIOS, ALL])}"}
        if seed is None:
            seed = DEFAULT_SEED if settings.seed is None else settings.seed
        try:
            rows = await _solve(
                run_scenarios, scenario, seed, jobs=settings.jobs, budget_nodes=settings.budget_nodes
            )
        except TilingError as exc:
            return _error(exc)

        disagreements = [row.instance for row in rows if not row.agree]
        result = {
            "scenario": scenario,
            "seed": seed,
            "summary": summarize(rows),
            "rows": _rows([row.model_dump() for row in rows], compact),
        }
        if disagreements:
            result["_warnings"] = [f"{len(disagreements)} instance(s) disagree: {', '.join(disagreements[:10])}"]
        return result
