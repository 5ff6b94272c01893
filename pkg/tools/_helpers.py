"""Shared helpers for the tiling tool modules."""

from __future__ import annotations

import asyncio
import logging
from collections.abc import Callable, Mapping
from fractions import Fraction
from typing import Any

import toon
from pydantic import ValidationError

from tiling.errors import Infeasible, InvalidArgument, NotFound, TilingError, Unknown
from tiling.generators import GenSpec, build
from tiling.hypergraph import FiveGraph, ThreeGraph, parse_five_graph, parse_three_graph
from tiling.rationals import fraction_str, parse_fraction
from tiling.reports import INFEASIBLE, NOT_FOUND, SOLVED, UNKNOWN

logger = logging.getLogger(__name__)

CACHE_LIMIT = 256

_CACHE: dict[tuple[Any, ...], Any] = {}


def _freeze(value: Any) -> Any:
    """Convert complex values into hashable cache-key components."""
    if isinstance(value, dict):
        return tuple(sorted((k, _freeze(v)) for k, v in value.items()))
    if isinstance(value, list):
        return tuple(_freeze(v) for v in value)
    if isinstance(value, set | frozenset):
        return tuple(sorted(_freeze(v) for v in value))
    if isinstance(value, tuple):
        return tuple(_freeze(v) for v in value)
    if isinstance(value, Fraction):
        return fraction_str(value)
    try:
        hash(value)
    except TypeError:
        return repr(value)
    return value


def _cache_key(fn: Callable[..., Any], args: tuple[Any, ...], kwargs: dict[str, Any]) -> tuple[Any, ...]:
    return (
        getattr(fn, "__module__", ""),
        getattr(fn, "__qualname__", getattr(fn, "__name__", "unknown")),
        _freeze(args),
        _freeze(kwargs),
    )


async def _solve(fn: Callable[..., Any], *args: Any, cache: bool = True, **kwargs: Any) -> Any:
    """Run a solver off the event loop; results of pure calls are memoised."""
    key: tuple[Any, ...] | None = None
    if cache:
        key = _cache_key(fn, args, kwargs)
        if key in _CACHE:
            return _CACHE[key]

    data = await asyncio.to_thread(fn, *args, **kwargs)

    if key is not None:
        if len(_CACHE) >= CACHE_LIMIT:
            _CACHE.pop(next(iter(_CACHE)))
        _CACHE[key] = data
    return data


async def _safe_call(fn: Callable[..., Any], *args: Any, default: Any = None, **kwargs: Any) -> Any:
    """Like ``_solve`` but a failure yields ``default`` instead of raising."""
    try:
        return await _solve(fn, *args, **kwargs)
    except Exception:
        logger.exception("%s failed", getattr(fn, "__name__", fn))
        return default


def _error(exc: Exception) -> dict:
    if isinstance(exc, TilingError):
        return {"error": str(exc), "code": exc.code}
    if isinstance(exc, ValidationError):
        return {"error": f"invalid spec: {exc.errors()[0]['msg']}", "code": "invalid-argument"}
    return {"error": str(exc), "code": "invalid-argument"}


def _load_graph(graph: str | None, spec: Mapping[str, Any] | None) -> ThreeGraph:
    """A 3-graph from text or from a generator spec (exactly one of them)."""
    if (graph is None) == (spec is None):
        raise InvalidArgument("pass exactly one of graph or spec")
    if graph is not None:
        return parse_three_graph(graph)
    built = build(GenSpec.model_validate(dict(spec or {})))
    if not isinstance(built.graph, ThreeGraph) or len(built.graphs) != 1:
        raise InvalidArgument(f"spec kind {built.spec.kind!r} does not describe a single 3-graph")
    return built.graph


def _load_five_graph(graph: str | None, spec: Mapping[str, Any] | None) -> FiveGraph:
    if (graph is None) == (spec is None):
        raise InvalidArgument("pass exactly one of graph or spec")
    if graph is not None:
        return parse_five_graph(graph)
    built = build(GenSpec.model_validate(dict(spec or {})))
    if not isinstance(built.graph, FiveGraph):
        raise InvalidArgument(f"spec kind {built.spec.kind!r} does not describe a 5-graph")
    return built.graph


def _fraction(value: str | int | None, name: str) -> Fraction:
    if value is None:
        raise InvalidArgument(f"{name} is required")
    return parse_fraction(value)


def _outcome(result: Any) -> str:
    if isinstance(result, Unknown):
        return UNKNOWN
    if isinstance(result, Infeasible):
        return INFEASIBLE
    if isinstance(result, NotFound):
        return NOT_FOUND
    return SOLVED


def _negative(result: Infeasible | Unknown | NotFound) -> dict:
    data: dict[str, Any] = {"outcome": _outcome(result), "reason": result.reason}
    nodes = getattr(result, "nodes", 0)
    if nodes:
        data["nodes"] = nodes
    return data


def _rows(rows: list[dict], compact: bool) -> Any:
    """Rows as a list, or as a TOON table when ``compact``."""
    if compact and rows:
        return toon.encode(rows)
    return rows
