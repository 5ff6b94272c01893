"""Exact perfect and maximum T-tilings, and perfect matchings in 5-graphs.

Both problems reduce to covering vertices with 5-sets: a T-tiling picks
pairwise disjoint supporting 5-sets and recovers one witness copy per set.
The search branches on the uncovered vertex lying in the fewest usable sets
(ties to the smallest vertex) and counts nodes against a budget.
"""

from __future__ import annotations

import logging
from collections.abc import Hashable, Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any

from tiling.config import AUX_DEGREE_RULE, DEFAULT_BUDGET_NODES
from tiling.copies import FiveSet, TCopy, is_copy_of, supporting_sets
from tiling.errors import BudgetExhausted, Infeasible, InvalidArgument, TilingError, Unknown
from tiling.hypergraph import FiveGraph, ThreeGraph, iter_bits, mask_of
from tiling.rationals import fraction_str

logger = logging.getLogger(__name__)

PARTS = 5
DEGREE_RATIO = Fraction(PARTS - 1, PARTS)


@dataclass(frozen=True)
class Tiling:
    n: int
    copies: tuple[TCopy, ...] = ()

    @property
    def size(self) -> int:
        return len(self.copies)

    @property
    def covered(self) -> frozenset[int]:
        return frozenset(v for copy in self.copies for v in copy)

    @property
    def perfect(self) -> bool:
        return len(self.covered) == self.n

    def verify(self, H: ThreeGraph) -> bool:
        """Copies pairwise disjoint and every role edge present in H."""
        if H.n != self.n:
            return False
        seen: set[int] = set()
        for copy in self.copies:
            if not is_copy_of(H, copy) or seen.intersection(copy):
                return False
            seen.update(copy)
        return True

    def to_dict(self) -> dict[str, Any]:
        return {
            "copies": [list(copy) for copy in self.copies],
            "n": self.n,
            "perfect": self.perfect,
        }


class CoverSearch:
    """Exact cover and maximum packing over a fixed family of vertex bitsets.

    ``classes`` optionally groups vertices into twin classes: permuting the
    vertices inside a class must map the family to itself. Search states are
    then keyed by the number of live vertices per class, so equivalent
    branches are explored once.
    """

    def __init__(
        self,
        n: int,
        sets: Sequence[int],
        budget_nodes: int | None = None,
        classes: Sequence[Sequence[int]] | None = None,
    ):
        self.n = n
        self.sets = list(sets)
        self.budget = DEFAULT_BUDGET_NODES if budget_nodes is None else budget_nodes
        self.nodes = 0
        self.containing: list[list[int]] = [[] for _ in range(n)]
        for index, mask in enumerate(self.sets):
            for v in iter_bits(mask):
                self.containing[v].append(index)
        self.class_masks = [mask_of(c) for c in classes or () if len(c) > 1]

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhausted(self.nodes - 1)

    def key(self, mask: int) -> Hashable:
        if not self.class_masks:
            return mask
        rest = mask
        counts = []
        for cm in self.class_masks:
            counts.append((mask & cm).bit_count())
            rest &= ~cm
        return rest, tuple(counts)

    def uncoverable(self, target: int) -> int | None:
        """Smallest vertex of ``target`` lying in no set inside ``target``."""
        for v in iter_bits(target):
            if not any(self.sets[i] & ~target == 0 for i in self.containing[v]):
                return v
        return None

    def _options(self, uncovered: int) -> list[int]:
        """Usable sets through the most constrained uncovered vertex."""
        options: list[int] | None = None
        for v in iter_bits(uncovered):
            usable = [i for i in self.containing[v] if self.sets[i] & ~uncovered == 0]
            if options is None or len(usable) < len(options):
                options = usable
                if not usable:
                    break
        return options or []

    def exact_covers(self, target: int) -> Iterator[list[int]]:
        """Yield index lists of disjoint sets whose union is ``target``."""
        chosen: list[int] = []

        def search(uncovered: int) -> Iterator[list[int]]:
            if not uncovered:
                yield list(chosen)
                return
            self.tick()
            for index in self._options(uncovered):
                chosen.append(index)
                yield from search(uncovered & ~self.sets[index])
                chosen.pop()

        yield from search(target)

    def first_cover(self, target: int) -> list[int] | None:
        """One exact cover of ``target``, skipping states equivalent to failed ones."""
        chosen: list[int] = []
        dead: set[Hashable] = set()

        def search(uncovered: int) -> bool:
            if not uncovered:
                return True
            self.tick()
            tried: set[Hashable] = set()
            for index in self._options(uncovered):
                rest = uncovered & ~self.sets[index]
                key = self.key(rest)
                if key in tried or key in dead:
                    continue
                tried.add(key)
                chosen.append(index)
                if search(rest):
                    return True
                chosen.pop()
                dead.add(key)
            return False

        return list(chosen) if search(target) else None

    def greedy_packing(self) -> list[int]:
        used = 0
        picked: list[int] = []
        for index, mask in enumerate(self.sets):
            if not mask & used:
                picked.append(index)
                used |= mask
        return picked

    def max_packing(self) -> list[int]:
        """Largest family of pairwise disjoint sets, by branch and bound.

        The bound is the chosen count plus a fifth of the vertices still
        covered by some compatible set, tightened by the best completion
        recorded for equivalent states. The incumbent survives a
        ``BudgetExhausted`` as ``self.incumbent``.
        """
        self.incumbent = self.greedy_packing()
        chosen: list[int] = []
        ceiling: dict[Hashable, int] = {}

        def search(candidates: list[int]) -> None:
            self.tick()
            if len(chosen) > len(self.incumbent):
                self.incumbent = list(chosen)
            if not candidates:
                return
            reach = 0
            for index in candidates:
                reach |= self.sets[index]
            state = self.key(reach)
            limit = min(reach.bit_count() // PARTS, ceiling.get(state, self.n))
            if len(chosen) + limit <= len(self.incumbent):
                return
            v = (reach & -reach).bit_length() - 1
            bit = 1 << v
            tried: set[Hashable] = set()
            for index in candidates:
                mask = self.sets[index]
                if mask & bit:
                    key = self.key(reach & ~mask)
                    if key in tried:
                        continue
                    tried.add(key)
                    chosen.append(index)
                    search([j for j in candidates if not self.sets[j] & mask])
                    chosen.pop()
            search([j for j in candidates if not self.sets[j] & bit])
            # nothing below this state beat the incumbent
            ceiling[state] = len(self.incumbent) - len(chosen)

        search(list(range(len(self.sets))))
        return self.incumbent


def twin_classes(H: ThreeGraph) -> list[list[int]]:
    """Vertices u, v with uwx in H iff vwx in H for all w, x outside {u, v}.

    Swapping twins is an automorphism, so every class can be permuted freely.
    """
    classes: list[list[int]] = []
    for v in range(H.n):
        for group in classes:
            u = group[0]
            outside = ~((1 << u) | (1 << v))
            if all(
                not (H.neighbor_mask(u, w) ^ H.neighbor_mask(v, w)) & outside
                for w in range(H.n)
                if w != u and w != v
            ):
                group.append(v)
                break
        else:
            classes.append([v])
    return classes


def _five_set_search(
    H: ThreeGraph, budget_nodes: int | None, *, symmetric: bool = False
) -> tuple[list[FiveSet], list[TCopy], CoverSearch]:
    witnesses = supporting_sets(H)
    keys = list(witnesses)
    classes = twin_classes(H) if symmetric else None
    search = CoverSearch(H.n, [mask_of(k) for k in keys], budget_nodes, classes)
    return keys, [witnesses[k] for k in keys], search


def _checked(H: ThreeGraph, tiling: Tiling) -> Tiling:
    if not tiling.verify(H):
        raise TilingError("internal error: solver produced an invalid tiling", detail=tiling.to_dict())
    return tiling


def all_perfect_tilings(H: ThreeGraph, *, budget_nodes: int | None = None) -> Iterator[Tiling]:
    """Every perfect tiling up to the choice of witness copy per 5-set.

    Raises ``BudgetExhausted`` when the node limit is reached mid-stream.
    """
    if H.n % PARTS:
        return
    _, witnesses, search = _five_set_search(H, budget_nodes)
    for cover in search.exact_covers((1 << H.n) - 1):
        yield Tiling(H.n, tuple(sorted(witnesses[i] for i in cover)))


def perfect_tiling(H: ThreeGraph, *, budget_nodes: int | None = None) -> Tiling | Infeasible | Unknown:
    if H.n % PARTS:
        return Infeasible("divisibility")
    keys, witnesses, search = _five_set_search(H, budget_nodes, symmetric=True)
    everything = (1 << H.n) - 1
    lonely = search.uncoverable(everything)
    if lonely is not None:
        return Infeasible(f"vertex {lonely} lies in no copy of T")
    try:
        cover = search.first_cover(everything)
    except BudgetExhausted as exc:
        logger.warning("perfect tiling search gave up after %d nodes on %r", exc.nodes, H)
        return Unknown("node budget exhausted", nodes=exc.nodes)
    logger.debug("perfect tiling search used %d nodes over %d supporting sets", search.nodes, len(keys))
    if cover is None:
        return Infeasible("exhausted search", nodes=search.nodes)
    return _checked(H, Tiling(H.n, tuple(sorted(witnesses[i] for i in cover))))


def max_tiling(H: ThreeGraph, *, budget_nodes: int | None = None) -> Tiling | Unknown:
    """Maximum-cardinality tiling; optimal unless the budget runs out."""
    _, witnesses, search = _five_set_search(H, budget_nodes, symmetric=True)
    try:
        best = search.max_packing()
    except BudgetExhausted as exc:
        partial = Tiling(H.n, tuple(sorted(witnesses[i] for i in search.incumbent)))
        logger.warning("maximum tiling search gave up after %d nodes", exc.nodes)
        return Unknown("node budget exhausted", nodes=exc.nodes, best=_checked(H, partial))
    logger.debug("maximum tiling search used %d nodes", search.nodes)
    return _checked(H, Tiling(H.n, tuple(sorted(witnesses[i] for i in best))))


# ---------------------------------------------------------------------------
# 5-graphs
# ---------------------------------------------------------------------------


def perfect_matching_5graph(
    J: FiveGraph, *, budget_nodes: int | None = None
) -> tuple[tuple[int, ...], ...] | Infeasible | Unknown:
    if J.n % PARTS:
        return Infeasible("divisibility")
    parts = J.bipartition
    if parts is not None and (len(parts[0]) * PARTS != 3 * J.n or len(parts[1]) * PARTS != 2 * J.n):
        return Infeasible("shape")
    edges = J.sorted_edges()
    search = CoverSearch(J.n, [mask_of(e) for e in edges], budget_nodes)
    everything = (1 << J.n) - 1
    lonely = search.uncoverable(everything)
    if lonely is not None:
        return Infeasible(f"vertex {lonely} lies in no edge")
    try:
        cover = search.first_cover(everything)
    except BudgetExhausted as exc:
        return Unknown("node budget exhausted", nodes=exc.nodes)
    if cover is None:
        return Infeasible("exhausted search", nodes=search.nodes)
    return tuple(sorted(edges[i] for i in cover))


def _as_partition(n: int, parts: Iterable[Iterable[int]], count: int) -> list[frozenset[int]]:
    blocks = [frozenset(p) for p in parts]
    if len(blocks) != count:
        raise InvalidArgument(f"expected {count} parts, got {len(blocks)}")
    union: set[int] = set()
    for block in blocks:
        if union & block:
            raise InvalidArgument("parts intersect")
        union |= block
    if union != set(range(n)):
        raise InvalidArgument("parts do not cover the vertex set")
    return blocks


def transversal_subgraph(J: FiveGraph, parts: Iterable[Iterable[int]]) -> FiveGraph:
    """Edges of J meeting each of the five parts exactly once."""
    blocks = _as_partition(J.n, parts, PARTS)
    owner = {v: i for i, block in enumerate(blocks) for v in block}
    edges = [e for e in J.edges if len({owner[v] for v in e}) == PARTS]
    return FiveGraph(J.n, edges)


@dataclass(frozen=True)
class DegreeConditionReport:
    applicable: bool
    reason: str = ""
    part_size: int = 0
    threshold: Fraction = Fraction(0)
    degrees: tuple[int, ...] = ()
    deficient: tuple[int, ...] = ()

    @property
    def holds(self) -> bool:
        return self.applicable and not self.deficient

    def to_dict(self) -> dict[str, Any]:
        return {
            "applicable": self.applicable,
            "deficient": list(self.deficient),
            "degrees": list(self.degrees),
            "holds": self.holds,
            "part_size": self.part_size,
            "reason": self.reason,
            "threshold": fraction_str(self.threshold),
        }


def dh_condition_check(J: FiveGraph, parts: Iterable[Iterable[int]] | None = None) -> DegreeConditionReport:
    """Compare every degree of a 5-partite J with 4m^4/5 (parts of size m)."""
    if parts is None:
        return DegreeConditionReport(False, "no 5-partition supplied")
    try:
        blocks = _as_partition(J.n, parts, PARTS)
    except InvalidArgument as exc:
        return DegreeConditionReport(False, str(exc))
    m = len(blocks[0])
    if m == 0 or any(len(b) != m for b in blocks):
        return DegreeConditionReport(False, "parts differ in size")
    owner = {v: i for i, block in enumerate(blocks) for v in block}
    if any(len({owner[v] for v in e}) != PARTS for e in J.edges):
        return DegreeConditionReport(False, "some edge is not transversal to the parts")
    threshold = DEGREE_RATIO * m ** (PARTS - 1)
    degrees = tuple(J.degrees())
    deficient = tuple(v for v, d in enumerate(degrees) if d < threshold)
    return DegreeConditionReport(True, "", m, threshold, degrees, deficient)


@dataclass(frozen=True)
class AuxiliaryMatchingReport:
    applicable: bool
    reason: str = ""
    m: int = 0
    edges: int = 0
    edge_threshold: Fraction = Fraction(0)
    min_degree: int = 0
    degree_threshold: Fraction = Fraction(0)
    degenerate: bool = False
    low_degree: tuple[int, ...] = field(default=())

    @property
    def dense_enough(self) -> bool:
        return self.applicable and self.edges >= self.edge_threshold

    @property
    def holds(self) -> bool:
        return self.dense_enough and not self.low_degree

    def to_dict(self) -> dict[str, Any]:
        return {
            "applicable": self.applicable,
            "degenerate": self.degenerate,
            "degree_threshold": fraction_str(self.degree_threshold),
            "edge_threshold": fraction_str(self.edge_threshold),
            "edges": self.edges,
            "holds": self.holds,
            "low_degree": list(self.low_degree),
            "m": self.m,
            "min_degree": self.min_degree,
            "reason": self.reason,
        }


def auxiliary_matching_check(
    J: FiveGraph, beta: Fraction, *, degree_rule: Fraction = AUX_DEGREE_RULE
) -> AuxiliaryMatchingReport:
    """Density and minimum-degree hypotheses for a 3+2 split 5-graph.

    With |A| = 3m and |B| = 2m, J needs at least (1-beta) C(3m,3) C(2m,2)
    edges and every vertex in at least ``degree_rule * m^4`` edges.
    """
    beta = Fraction(beta)
    if not 0 <= beta <= 1:
        raise InvalidArgument(f"beta must lie in [0, 1], got {beta}")
    parts = J.bipartition
    if parts is None:
        return AuxiliaryMatchingReport(False, "no bipartition")
    if J.n % PARTS or len(parts[0]) * PARTS != 3 * J.n:
        return AuxiliaryMatchingReport(False, "parts are not in ratio 3:2")
    m = J.n // PARTS
    degree_threshold = degree_rule * m**4
    degrees = J.degrees()
    return AuxiliaryMatchingReport(
        applicable=True,
        m=m,
        edges=J.edge_count,
        edge_threshold=(1 - beta) * comb(3 * m, 3) * comb(2 * m, 2),
        min_degree=min(degrees, default=0),
        degree_threshold=degree_threshold,
        degenerate=degree_threshold < 1,
        low_degree=tuple(v for v, d in enumerate(degrees) if d < degree_threshold),
    )
