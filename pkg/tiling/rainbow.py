"""Colour covering homomorphisms and perfect rainbow T-tilings."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import networkx as nx

from tiling.config import DEFAULT_BUDGET_NODES
from tiling.copies import TCopy, copies_in
from tiling.errors import BudgetExhausted, Infeasible, InvalidArgument, NotFound, Unknown
from tiling.exact import PARTS, Tiling, all_perfect_tilings
from tiling.hypergraph import ThreeGraph, Triple, iter_bits, union

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RainbowInstance:
    n: int
    family: tuple[ThreeGraph, ...]

    def __post_init__(self) -> None:
        if self.n % PARTS:
            raise InvalidArgument(f"rainbow instances need 5 | n, got n={self.n}")
        if len(self.family) != 3 * self.n // PARTS:
            raise InvalidArgument(
                f"expected {3 * self.n // PARTS} colour graphs, got {len(self.family)}"
            )
        if any(H.n != self.n for H in self.family):
            raise InvalidArgument("every colour graph must live on the common vertex set")

    @classmethod
    def of(cls, family: Sequence[ThreeGraph]) -> RainbowInstance:
        if not family:
            raise InvalidArgument("empty colour family")
        return cls(family[0].n, tuple(family))


@dataclass(frozen=True)
class ColourCovering:
    """A copy of T with one role edge mapped into H1 and the other two into H2."""

    copy: TCopy
    designated: Triple

    @property
    def roles(self) -> dict[str, int]:
        return dict(zip("abcde", self.copy))

    def verify(self, H1: ThreeGraph, H2: ThreeGraph) -> bool:
        if len(set(self.copy)) != 5:
            return False
        edges = self.copy.edges()
        if self.designated not in edges or self.designated not in H1.edges:
            return False
        rest = list(edges)
        rest.remove(self.designated)
        return all(e in H2.edges for e in rest)

    def to_dict(self) -> dict[str, Any]:
        return {"designated": list(self.designated), "roles": self.roles}


def _sorted_triple(*vs: int) -> Triple:
    return tuple(sorted(vs))  # type: ignore[return-value]


def colour_covering_hom(H1: ThreeGraph, H2: ThreeGraph) -> ColourCovering | NotFound:
    """Embed T with abc in H1 and abd, cde in H2, else with cde in H1.

    The first search follows a fixed order: an edge xyz of H1 as abc, then
    u in N_H2(xy) outside {z} as d, then v in N_H2(uz) outside {x, y} as e.
    """
    if H1.n != H2.n:
        raise InvalidArgument("colour graphs must share the vertex count")
    if H1.n < 5:
        raise InvalidArgument(f"colour covering needs n >= 5, got n={H1.n}")
    for edge in H1.sorted_edges():
        for z in edge:
            x, y = (w for w in edge if w != z)
            for u in iter_bits(H2.neighbor_mask(x, y) & ~(1 << z)):
                for v in iter_bits(H2.neighbor_mask(u, z) & ~((1 << x) | (1 << y))):
                    return ColourCovering(TCopy.canonical(x, y, z, u, v), _sorted_triple(x, y, z))
    everything = (1 << H1.n) - 1
    for edge in H1.sorted_edges():
        for e in edge:
            c, d = (w for w in edge if w != e)
            free = everything & ~((1 << c) | (1 << d) | (1 << e))
            for a in iter_bits(free):
                both = H2.neighbor_mask(a, c) & H2.neighbor_mask(a, d) & free & ~(1 << a)
                for b in iter_bits(both):
                    return ColourCovering(TCopy.canonical(a, b, c, d, e), _sorted_triple(c, d, e))
    return NotFound("no colour covering homomorphism")


@dataclass(frozen=True)
class RainbowTiling:
    tiling: Tiling
    edges: tuple[Triple, ...]
    colours: tuple[int, ...]

    def verify(self, inst: RainbowInstance) -> bool:
        if not self.tiling.perfect or not self.tiling.verify(union(inst.family)):
            return False
        if sorted(self.colours) != list(range(len(inst.family))):
            return False
        expected = [e for copy in self.tiling.copies for e in copy.edges()]
        if list(self.edges) != expected:
            return False
        return all(e in inst.family[i].edges for e, i in zip(self.edges, self.colours))

    def to_dict(self) -> dict[str, Any]:
        data = self.tiling.to_dict()
        data["colours"] = list(self.colours)
        data["edges"] = [list(e) for e in self.edges]
        return data


def _assign_colours(edges: Sequence[Triple], family: Sequence[ThreeGraph]) -> tuple[int, ...] | None:
    graph = nx.Graph()
    left = [("edge", j) for j in range(len(edges))]
    graph.add_nodes_from(left, bipartite=0)
    graph.add_nodes_from((("colour", i) for i in range(len(family))), bipartite=1)
    for j, edge in enumerate(edges):
        for i, H in enumerate(family):
            if edge in H.edges:
                graph.add_edge(("edge", j), ("colour", i))
    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=left)
    if any(node not in matching for node in left):
        return None
    return tuple(matching[node][1] for node in left)


def rainbow_perfect_tiling(
    inst: RainbowInstance, *, budget_nodes: int | None = None
) -> RainbowTiling | Infeasible | Unknown:
    """Search perfect tilings of the union, then colour their edges by matching."""
    budget = DEFAULT_BUDGET_NODES if budget_nodes is None else budget_nodes
    host = union(inst.family)
    tried = 0
    try:
        for cover in all_perfect_tilings(host, budget_nodes=budget):
            options = [copies_in(host, copy.vertex_set) for copy in cover.copies]
            for choice in itertools.product(*options):
                tried += 1
                if tried > budget:
                    raise BudgetExhausted(tried)
                edges = tuple(e for copy in choice for e in copy.edges())
                colours = _assign_colours(edges, inst.family)
                if colours is not None:
                    logger.debug("rainbow tiling found after %d colourings", tried)
                    found = RainbowTiling(Tiling(inst.n, tuple(choice)), edges, colours)
                    if not found.verify(inst):
                        raise AssertionError("rainbow search produced an invalid tiling")
                    return found
    except BudgetExhausted as exc:
        logger.warning("rainbow search gave up after %d nodes", exc.nodes)
        return Unknown("node budget exhausted", nodes=exc.nodes)
    return Infeasible("exhausted search", nodes=tried)
