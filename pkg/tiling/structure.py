"""Extremality, the extremal-case pipeline, and linkedness.

Thresholds carried over from the asymptotic arguments (the n^2/50 rule for X,
sqrt(gamma) n for bad pairs, eta C(n, 5r-1) for linkedness) are arguments with
those values as defaults; reports flag them as degenerate when they fall
below one.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Any

import numpy as np

from tiling.config import DEFAULT_BUDGET_NODES, DEFAULT_RESTARTS, DEFAULT_SAMPLES, X_RULE
from tiling.copies import TCopy, first_copy_in
from tiling.errors import BudgetExhausted, Infeasible, InvalidArgument, Unknown
from tiling.exact import Tiling, perfect_matching_5graph, perfect_tiling
from tiling.generators import gen_support_5graph
from tiling.hypergraph import Pair, ThreeGraph, induced, iter_bits, mask_of, pair
from tiling.rationals import fraction_str

logger = logging.getLogger(__name__)

EXACT = "exact"
HEURISTIC = "heuristic"


def extremal_size(n: int) -> int:
    return (3 * n) // 5


def _edges_within(H: ThreeGraph, mask: int) -> int:
    verts = list(iter_bits(mask))
    total = 0
    for x, y in itertools.combinations(verts, 2):
        total += (H.neighbor_mask(x, y) & mask).bit_count()
    return total // 3


# ---------------------------------------------------------------------------
# Extremality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtremalityReport:
    gamma: Fraction
    size: int
    min_density_found: Fraction
    exact: bool
    witness: tuple[int, ...] | None = None
    nodes: int = 0

    @property
    def extremal(self) -> bool:
        return self.witness is not None

    def to_dict(self) -> dict[str, Any]:
        return {
            "exact": self.exact,
            "extremal": self.extremal,
            "gamma": fraction_str(self.gamma),
            "min_density_found": fraction_str(self.min_density_found),
            "nodes": self.nodes,
            "size": self.size,
            "witness": None if self.witness is None else list(self.witness),
        }


def _local_search(H: ThreeGraph, size: int, rng: np.random.Generator, restarts: int) -> tuple[int, int]:
    """Steepest-descent vertex swaps from random starts; (edges, mask) of the best."""
    n = H.n
    best: tuple[int, int] | None = None
    for _ in range(max(restarts, 1)):
        start = rng.choice(n, size=size, replace=False)
        mask = mask_of(int(v) for v in start)
        edges = _edges_within(H, mask)
        while True:
            move: tuple[int, int] | None = None
            outside = [v for v in range(n) if not mask >> v & 1]
            for u in iter_bits(mask):
                for v in outside:
                    candidate = mask ^ (1 << u) ^ (1 << v)
                    count = _edges_within(H, candidate)
                    if count < edges and (move is None or count < move[0]):
                        move = (count, candidate)
            if move is None:
                break
            edges, mask = move
        if best is None or edges < best[0]:
            best = (edges, mask)
    assert best is not None
    return best


def _exact_search(H: ThreeGraph, size: int, incumbent: tuple[int, int], budget: int) -> tuple[int, int, int]:
    """Branch and bound over size-subsets; bound = edges so far + cheapest gains.

    Sets are visited in lexicographic order, so the reported set is the
    lexicographically first minimiser whatever the incumbent was.
    """
    n = H.n
    best = list(incumbent)
    settled = False
    nodes = 0

    def search(v: int, mask: int, count: int, edges: int, gains: list[int]) -> None:
        nonlocal nodes, settled
        nodes += 1
        if nodes > budget:
            raise BudgetExhausted(nodes - 1)
        need = size - count
        if need == 0:
            if edges < best[0] or (edges == best[0] and not settled):
                best[0], best[1] = edges, mask
                settled = True
            return
        if n - v < need:
            return
        bound = edges + sum(sorted(gains[v:])[:need])
        # ties with an incumbent from local search are still explored
        if bound > best[0] or (bound == best[0] and settled):
            return
        grown = list(gains)
        for w in range(v + 1, n):
            grown[w] += (H.neighbor_mask(v, w) & mask).bit_count()
        search(v + 1, mask | (1 << v), count + 1, edges + gains[v], grown)
        search(v + 1, mask, count, edges, gains)

    search(0, 0, 0, 0, [0] * n)
    return best[0], best[1], nodes


def extremality(
    H: ThreeGraph,
    gamma: Fraction,
    mode: str = EXACT,
    *,
    seed: int | None = None,
    restarts: int = DEFAULT_RESTARTS,
    budget_nodes: int | None = None,
) -> ExtremalityReport:
    """Minimum density of H[S] over |S| = floor(3n/5), exactly or by local search.

    Exact mode seeds its local-search incumbent with 0 when no seed is given.
    """
    if mode not in (EXACT, HEURISTIC):
        raise InvalidArgument(f"mode must be {EXACT!r} or {HEURISTIC!r}, got {mode!r}")
    if H.n < 5:
        raise InvalidArgument(f"extremality needs n >= 5, got n={H.n}")
    gamma = Fraction(gamma)
    size = extremal_size(H.n)
    rng = np.random.default_rng(0 if seed is None and mode == EXACT else seed)
    edges, mask = _local_search(H, size, rng, restarts)
    exact = False
    nodes = 0
    if mode == EXACT:
        budget = DEFAULT_BUDGET_NODES if budget_nodes is None else budget_nodes
        try:
            edges, mask, nodes = _exact_search(H, size, (edges, mask), budget)
            exact = True
        except BudgetExhausted as exc:
            nodes = exc.nodes
            logger.warning("exact extremality search stopped after %d nodes; reporting local minimum", nodes)
    density = Fraction(edges, comb(size, 3)) if size >= 3 else Fraction(0)
    witness = tuple(iter_bits(mask)) if density <= gamma else None
    return ExtremalityReport(gamma, size, density, exact, witness, nodes)


# ---------------------------------------------------------------------------
# Good and bad pairs, the extremal-case pipeline
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PairClassification:
    good: tuple[Pair, ...]
    bad: tuple[Pair, ...]

    def to_dict(self) -> dict[str, Any]:
        return {"bad": [list(p) for p in self.bad], "good": [list(p) for p in self.good]}


def _check_subset(H: ThreeGraph, S: Iterable[int]) -> frozenset[int]:
    verts = frozenset(S)
    for v in verts:
        H.check_vertex(v)
    return verts


def classify_pairs(H: ThreeGraph, S: Iterable[int], gamma: Fraction) -> PairClassification:
    """A pair inside S is bad when |N(xy) & S|^2 > gamma n^2, good otherwise."""
    verts = _check_subset(H, S)
    gamma = Fraction(gamma)
    inside = mask_of(verts)
    limit = gamma * H.n**2
    good: list[Pair] = []
    bad: list[Pair] = []
    for x, y in itertools.combinations(sorted(verts), 2):
        hits = (H.neighbor_mask(x, y) & inside).bit_count()
        (bad if hits * hits > limit else good).append((x, y))
    return PairClassification(tuple(good), tuple(bad))


@dataclass(frozen=True)
class MatchingEdge:
    """Edge of H[A] given as a good pair plus its third vertex."""

    pair: Pair
    third: int

    @property
    def vertices(self) -> tuple[int, int, int]:
        return (self.pair[0], self.pair[1], self.third)


@dataclass(frozen=True)
class PipelineReport:
    S: tuple[int, ...]
    X: tuple[int, ...]
    A: tuple[int, ...]
    B: tuple[int, ...]
    matching: tuple[MatchingEdge, ...]
    good: frozenset[Pair]
    bad_pairs: int
    threshold: Fraction
    degenerate: bool

    @property
    def success(self) -> bool:
        return len(self.matching) == len(self.X)

    def to_dict(self) -> dict[str, Any]:
        return {
            "A": list(self.A),
            "B": list(self.B),
            "S": list(self.S),
            "X": list(self.X),
            "bad_pairs": self.bad_pairs,
            "degenerate": self.degenerate,
            "good_pairs": len(self.good),
            "matching": [sorted(e.vertices) for e in self.matching],
            "success": self.success,
            "threshold": fraction_str(self.threshold),
        }


def _grow_matching(
    H: ThreeGraph, good: Sequence[Pair], region: int, target: int
) -> list[MatchingEdge]:
    matching: list[MatchingEdge] = []
    used = 0

    def extend() -> None:
        nonlocal used
        for x, y in good:
            if len(matching) >= target:
                return
            if used >> x & 1 or used >> y & 1:
                continue
            options = H.neighbor_mask(x, y) & region & ~used
            if options:
                z = (options & -options).bit_length() - 1
                matching.append(MatchingEdge((x, y), z))
                used |= (1 << x) | (1 << y) | (1 << z)

    def replace() -> bool:
        nonlocal used
        free = [p for p in good if not (used >> p[0] & 1 or used >> p[1] & 1)]
        for p, q in itertools.combinations(free, 2):
            if set(p) & set(q):
                continue
            for index, edge in enumerate(matching):
                for x, y in itertools.permutations(edge.vertices, 2):
                    if H.has_edge(p[0], p[1], x) and H.has_edge(q[0], q[1], y):
                        del matching[index]
                        matching.extend((MatchingEdge(p, x), MatchingEdge(q, y)))
                        # the third vertex of the dropped edge is free again
                        used = mask_of(v for e in matching for v in e.vertices)
                        return True
        return False

    while len(matching) < target:
        extend()
        if len(matching) >= target or not replace():
            break
    return matching


def pipeline_quantities(
    H: ThreeGraph, S: Iterable[int], gamma: Fraction, *, x_rule: Fraction = X_RULE
) -> PipelineReport:
    """X (outside vertices in few edges with two vertices in S), A, B and M."""
    verts = _check_subset(H, S)
    n = H.n
    if len(verts) != extremal_size(n):
        raise InvalidArgument(f"S must have floor(3n/5) = {extremal_size(n)} vertices, got {len(verts)}")
    inside = mask_of(verts)
    threshold = Fraction(x_rule) * n * n
    degenerate = threshold < 1
    outside = [v for v in range(n) if v not in verts]
    if degenerate:
        logger.warning("threshold %s below one at n=%d; taking X = V \\ S", threshold, n)
        X = outside
    else:
        pairs_in_s = list(itertools.combinations(sorted(verts), 2))
        X = [
            v for v in outside if sum(1 for x, y in pairs_in_s if H.neighbor_mask(x, y) >> v & 1) < threshold
        ]
    A = sorted(verts | set(X))
    B = [v for v in range(n) if v not in A]
    classes = classify_pairs(H, verts, gamma)
    matching = _grow_matching(H, classes.good, mask_of(A), len(X))
    return PipelineReport(
        tuple(sorted(verts)),
        tuple(X),
        tuple(A),
        tuple(B),
        tuple(matching),
        frozenset(classes.good),
        len(classes.bad),
        threshold,
        degenerate,
    )


def _set_aside(H: ThreeGraph, report: PipelineReport) -> list[TCopy] | None:
    """One copy with four vertices in A and one in B per matching edge."""
    a_mask, b_mask = mask_of(report.A), mask_of(report.B)
    reserved = mask_of(v for e in report.matching for v in e.vertices)
    used = 0
    copies: list[TCopy] = []
    for edge in report.matching:
        (u, v), w = edge.pair, edge.third
        copy: TCopy | None = None
        spare = a_mask & ~reserved & ~used
        for z in iter_bits(spare):
            common = H.neighbor_mask(u, v) & H.neighbor_mask(z, w) & b_mask & ~used
            if common:
                copy = TCopy.canonical(u, v, w, (common & -common).bit_length() - 1, z)
                break
        if copy is None:
            for z in iter_bits(spare):
                pool = H.neighbor_mask(z, w) & spare & ~(1 << z)
                for x, y in itertools.combinations(iter_bits(pool), 2):
                    if (x, y) not in report.good:
                        continue
                    tops = H.neighbor_mask(x, y) & b_mask & ~used
                    if tops:
                        copy = TCopy.canonical(z, w, x, y, (tops & -tops).bit_length() - 1)
                        break
                if copy is not None:
                    break
        if copy is None:
            return None
        copies.append(copy)
        used |= mask_of(copy)
        reserved &= ~mask_of(edge.vertices)
    return copies


def extremal_case_tiling(
    H: ThreeGraph, S: Iterable[int], gamma: Fraction, *, budget_nodes: int | None = None
) -> Tiling | Infeasible | Unknown:
    """Constructive tiling for an extremal graph, stage by stage.

    Matching M, then set-aside copies, then the 3:2 remainder tiled by a
    perfect matching of its support 5-graph.
    """
    if H.n % 5:
        return Infeasible("divisibility")
    report = pipeline_quantities(H, S, gamma)
    if not report.success:
        return Infeasible(f"matching stage: found {len(report.matching)} of {len(report.X)} edges")
    aside = _set_aside(H, report)
    if aside is None:
        return Infeasible("set-aside stage")
    used = {v for copy in aside for v in copy}
    rest_a = [v for v in report.A if v not in used]
    rest_b = [v for v in report.B if v not in used]
    if 2 * len(rest_a) != 3 * len(rest_b):
        return Infeasible(f"ratio stage: {len(rest_a)}:{len(rest_b)} is not 3:2")
    sub, order = induced(H, rest_a + rest_b)
    position = {v: i for i, v in enumerate(order)}
    J = gen_support_5graph(sub, [position[v] for v in rest_a], [position[v] for v in rest_b])
    matching = perfect_matching_5graph(J, budget_nodes=budget_nodes)
    if isinstance(matching, Unknown):
        return matching
    if isinstance(matching, Infeasible):
        return Infeasible(f"auxiliary matching stage: {matching.reason}", nodes=matching.nodes)
    tiled = list(aside)
    for edge in matching:
        witness = first_copy_in(sub, edge)
        assert witness is not None
        tiled.append(TCopy(*(order[v] for v in witness)))
    tiling = Tiling(H.n, tuple(sorted(tiled)))
    if not tiling.verify(H) or not tiling.perfect:
        raise AssertionError("extremal-case construction produced an invalid tiling")
    return tiling


# ---------------------------------------------------------------------------
# Linkedness
# ---------------------------------------------------------------------------


def _tiles(H: ThreeGraph, vertices: Sequence[int], budget_nodes: int | None) -> bool:
    if len(vertices) == 5:
        return first_copy_in(H, vertices) is not None
    sub, _ = induced(H, vertices)
    result = perfect_tiling(sub, budget_nodes=budget_nodes)
    if isinstance(result, Unknown):
        raise BudgetExhausted(result.nodes)
    return isinstance(result, Tiling)


@dataclass(frozen=True)
class LinkedCount:
    u: int
    v: int
    r: int
    total: int
    estimate: Fraction
    exact: bool
    samples: int = 0

    @property
    def count(self) -> int | None:
        return int(self.estimate) if self.exact else None

    def linked(self, eta: Fraction, n: int) -> bool:
        """At least eta C(n, 5r-1) good sets."""
        return self.estimate >= Fraction(eta) * comb(n, 5 * self.r - 1)

    def to_dict(self) -> dict[str, Any]:
        return {
            "count": self.count,
            "estimate": fraction_str(self.estimate),
            "exact": self.exact,
            "pair": [self.u, self.v],
            "r": self.r,
            "samples": self.samples,
            "total": self.total,
        }


def linked_count(
    H: ThreeGraph,
    u: int,
    v: int,
    r: int = 1,
    *,
    samples: int = DEFAULT_SAMPLES,
    seed: int | None = None,
    budget_nodes: int | None = None,
) -> LinkedCount | Unknown:
    """Count (5r-1)-sets S avoiding u, v with H[S+u] and H[S+v] both tileable.

    Exhaustive for r <= 2; for larger r an unbiased estimate from ``samples``
    uniform sets. ``budget_nodes`` bounds each tileability search; running out
    makes the whole count Unknown.
    """
    try:
        return _linked_count(H, u, v, r, samples, seed, budget_nodes)
    except BudgetExhausted as exc:
        logger.warning("linkedness of %d, %d stopped on the node budget", u, v)
        return Unknown("node budget exhausted", nodes=exc.nodes)


def _linked_count(
    H: ThreeGraph, u: int, v: int, r: int, samples: int, seed: int | None, budget_nodes: int | None
) -> LinkedCount:
    H.check_vertex(u)
    H.check_vertex(v)
    if u == v:
        raise InvalidArgument(f"linkedness needs two distinct vertices, got {u} twice")
    if r < 1:
        raise InvalidArgument(f"r must be positive, got {r}")
    size = 5 * r - 1
    others = [w for w in range(H.n) if w != u and w != v]
    total = comb(len(others), size)

    def good(S: Sequence[int]) -> bool:
        return _tiles(H, sorted((*S, u)), budget_nodes) and _tiles(H, sorted((*S, v)), budget_nodes)

    if r <= 2:
        hits = sum(1 for S in itertools.combinations(others, size) if good(S))
        return LinkedCount(min(u, v), max(u, v), r, total, Fraction(hits), True)
    if samples < 1:
        raise InvalidArgument(f"sampling needs a positive sample size, got {samples}")
    if total == 0:
        return LinkedCount(min(u, v), max(u, v), r, 0, Fraction(0), True)
    rng = np.random.default_rng(seed)
    hits = 0
    for _ in range(samples):
        S = [others[int(i)] for i in rng.choice(len(others), size=size, replace=False)]
        hits += good(S)
    return LinkedCount(min(u, v), max(u, v), r, total, Fraction(hits * total, samples), False, samples)


@dataclass(frozen=True)
class LinkageProfile:
    eta: Fraction
    r: int
    partners: tuple[tuple[int, ...], ...]
    unlinked_triples: int

    @property
    def min_partners(self) -> int:
        return min((len(p) for p in self.partners), default=0)

    @property
    def every_triple_linked(self) -> bool:
        return self.unlinked_triples == 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "eta": fraction_str(self.eta),
            "every_triple_linked": self.every_triple_linked,
            "min_partners": self.min_partners,
            "partners": [list(p) for p in self.partners],
            "r": self.r,
            "unlinked_triples": self.unlinked_triples,
        }


def _is_linked(
    H: ThreeGraph, u: int, v: int, eta: Fraction, r: int, samples: int, seed: int | None, budget_nodes: int | None
) -> bool:
    return _linked_count(H, u, v, r, samples, seed, budget_nodes).linked(eta, H.n)


def linked_pairs(
    H: ThreeGraph,
    eta: Fraction,
    r: int = 1,
    *,
    seed: int | None = None,
    samples: int = DEFAULT_SAMPLES,
    budget_nodes: int | None = None,
) -> set[Pair] | Unknown:
    try:
        return {
            (u, v)
            for u, v in itertools.combinations(range(H.n), 2)
            if _is_linked(H, u, v, eta, r, samples, seed, budget_nodes)
        }
    except BudgetExhausted as exc:
        return Unknown("node budget exhausted", nodes=exc.nodes)


def linkage_profile(
    H: ThreeGraph,
    eta: Fraction,
    r: int = 1,
    *,
    seed: int | None = None,
    samples: int = DEFAULT_SAMPLES,
    budget_nodes: int | None = None,
) -> LinkageProfile | Unknown:
    """Linked partners per vertex and the number of 3-sets with no linked pair."""
    linked = linked_pairs(H, eta, r, seed=seed, samples=samples, budget_nodes=budget_nodes)
    if isinstance(linked, Unknown):
        return linked
    partners = tuple(
        tuple(sorted(w for w in range(H.n) if w != u and pair(u, w) in linked)) for u in range(H.n)
    )
    unlinked = sum(
        1
        for x, y, z in itertools.combinations(range(H.n), 3)
        if (x, y) not in linked and (x, z) not in linked and (y, z) not in linked
    )
    return LinkageProfile(Fraction(eta), r, partners, unlinked)


def is_closed(
    H: ThreeGraph,
    X: Iterable[int],
    eta: Fraction,
    r: int = 1,
    *,
    seed: int | None = None,
    samples: int = DEFAULT_SAMPLES,
    budget_nodes: int | None = None,
) -> bool | Unknown:
    """Every two vertices of X are (eta, r)-linked."""
    verts = sorted(_check_subset(H, X))
    try:
        return all(
            _is_linked(H, x, y, eta, r, samples, seed, budget_nodes)
            for x, y in itertools.combinations(verts, 2)
        )
    except BudgetExhausted as exc:
        return Unknown("node budget exhausted", nodes=exc.nodes)
