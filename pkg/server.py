"""gentri - perfect T-tiling toolkit exposed as an MCP server."""

from __future__ import annotations

import logging

from fastmcp import FastMCP

from tiling.config import Settings
from tools import copies, exact, experiments, fractional, graphs, meta, rainbow, structure

settings = Settings.from_env()
logging.basicConfig(level=settings.log_level, format="%(levelname)s %(name)s: %(message)s")

mcp = FastMCP(
    "gentri",
    instructions=(
        "Toolkit for perfect tilings of 3-graphs by the generalised triangle T "
        "(edges abc, abd, cde). Pass graphs in the text format (vertex count, then one "
        "edge per line) or as a generator spec such as {'kind': 'h_ext', 'n': 10}. "
        "Start with generate_graph and graph_stats, then perfect_t_tiling or "
        "fractional_tiling. A fractional failure comes with a verified certificate. "
        "For near-extremal graphs use extremality_check and extremal_case. "
        "Rationals are 'p/q' strings. toolkit_map lists every tool by module."
    ),
)

graphs.register(mcp, settings)
copies.register(mcp, settings)
exact.register(mcp, settings)
fractional.register(mcp, settings)
structure.register(mcp, settings)
rainbow.register(mcp, settings)
experiments.register(mcp, settings)
meta.register(mcp, settings)


if __name__ == "__main__":
    mcp.run()
