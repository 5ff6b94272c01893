"""Tests for the toolkit map tool."""

from __future__ import annotations

from fastmcp import Client, FastMCP

from tiling.config import Settings
from tools._registry import MODULE_OPERATIONS, MODULE_TOOLS
from tools.meta import register as register_meta


def _make_server() -> FastMCP:
    mcp = FastMCP("Test")
    register_meta(mcp, Settings(budget_nodes=1234))
    return mcp


class TestToolkitMap:
    async def test_all_modules(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("toolkit_map", {})).data

        names = [m["module"] for m in data["modules"]]
        assert names == list(MODULE_OPERATIONS)
        assert data["settings"]["budget_nodes"] == 1234
        assert data["notes"]

    async def test_single_module(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("toolkit_map", {"module": "exact-tiler"})).data

        assert len(data["modules"]) == 1
        module = data["modules"][0]
        assert "perfect_tiling" in module["operations"]
        assert "perfect_t_tiling" in module["tools"]

    async def test_invalid_module(self):
        async with Client(_make_server()) as c:
            data = (await c.call_tool("toolkit_map", {"module": "nope"})).data
        assert "Invalid module" in data["error"]


class TestRegistryMatchesServer:
    async def test_every_listed_tool_is_registered(self):
        from server import mcp

        async with Client(mcp) as c:
            registered = {tool.name for tool in await c.list_tools()}

        listed = {name for names in MODULE_TOOLS.values() for name in names}
        assert listed <= registered
        assert registered - listed == {"toolkit_map"}

    def test_operations_exist(self):
        import tiling.copies
        import tiling.exact
        import tiling.experiments
        import tiling.fractional
        import tiling.generators
        import tiling.hypergraph
        import tiling.lattice
        import tiling.rainbow
        import tiling.reports
        import tiling.structure

        modules = [
            tiling.copies,
            tiling.exact,
            tiling.experiments,
            tiling.fractional,
            tiling.generators,
            tiling.hypergraph,
            tiling.lattice,
            tiling.rainbow,
            tiling.reports,
            tiling.structure,
        ]
        for operations in MODULE_OPERATIONS.values():
            for name in operations:
                assert any(hasattr(m, name) for m in modules), name
