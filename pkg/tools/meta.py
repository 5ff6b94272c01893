"""Meta tool describing which toolkit operations each tool exposes."""

from __future__ import annotations

from typing import TYPE_CHECKING

from tools._registry import MODULE_OPERATIONS, MODULE_TOOLS

if TYPE_CHECKING:
    from fastmcp import FastMCP

    from tiling.config import Settings


def _build_toolkit_map(module: str | None) -> dict:
    modules = []
    for name, operations in MODULE_OPERATIONS.items():
        if module is not None and name != module:
            continue
        modules.append(
            {
                "module": name,
                "operations": sorted(operations),
                "tools": sorted(MODULE_TOOLS.get(name, [])),
            }
        )
    return {
        "modules": modules,
        "notes": [
            "Rationals are exchanged as 'p/q' strings.",
            "Every tool taking a 3-graph accepts either its text form (graph) or a generator spec (spec).",
            "Outcomes: solved, verified, infeasible, not-found, unknown (node budget exhausted), rejected.",
        ],
    }


def register(mcp: FastMCP, settings: Settings) -> None:
    @mcp.tool(
        annotations={
            "title": "Toolkit Map",
            "readOnlyHint": True,
            "destructiveHint": False,
            "idempotentHint": True,
            "openWorldHint": False,
        }
    )
    async def toolkit_map(module: str | None = None) -> dict:
        """List toolkit modules, their operations and the tools that expose them.

        Useful for agents deciding which tool answers a tiling question, and
        for reading the active search budget.

        Args:
            module: Restrict to one module (e.g. "exact-tiler")
        """
        if module is not None and module not in MODULE_OPERATIONS:
            return {"error": f"Invalid module '{module}'. Use: {', '.join(MODULE_OPERATIONS)}"}
        result = _build_toolkit_map(module)
        result["settings"] = {
            "budget_nodes": settings.budget_nodes,
            "jobs": settings.jobs,
            "restarts": settings.restarts,
            "samples": settings.samples,
            "seed": settings.seed,
        }
        return result
