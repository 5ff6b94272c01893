"""Shared test fixtures."""

from __future__ import annotations

import pytest

from tiling.generators import MarkedGraph, gen_complete, gen_h_ext
from tiling.hypergraph import ThreeGraph
from tools._helpers import _CACHE


@pytest.fixture(autouse=True)
def clear_solver_cache():
    _CACHE.clear()
    yield
    _CACHE.clear()


@pytest.fixture
def h_ext10() -> MarkedGraph:
    """|A| = 3, |B| = 7; every edge meets A."""
    return gen_h_ext(10)


@pytest.fixture
def k5() -> ThreeGraph:
    return gen_complete(5)


@pytest.fixture
def k10() -> ThreeGraph:
    return gen_complete(10)


@pytest.fixture
def single_copy() -> ThreeGraph:
    """Exactly the three edges of T on roles (0, 1, 2, 3, 4)."""
    return ThreeGraph(5, [(0, 1, 2), (0, 1, 3), (2, 3, 4)])


def two_copies() -> ThreeGraph:
    """Two disjoint copies of T on {0..4} and {5..9}."""
    edges = [(0, 1, 2), (0, 1, 3), (2, 3, 4), (5, 6, 7), (5, 6, 8), (7, 8, 9)]
    return ThreeGraph(10, edges)
