"""3-uniform and 5-uniform hypergraphs on dense integer vertex labels.

Vertices are ``0..n-1``. Edges are stored as sorted tuples; pair
neighbourhoods are kept as integer bitsets, built lazily on first codegree
query and shared read-only afterwards.
"""

from __future__ import annotations

import itertools
import threading
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from tiling.errors import FormatError, InvalidArgument, Unsupported

Pair = tuple[int, int]
Triple = tuple[int, int, int]

BLOW_UP_FACTOR = 5


def pair(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _normalize_edge(edge: Iterable[int], k: int, n: int) -> tuple[int, ...]:
    try:
        verts = tuple(sorted(int(v) for v in edge))
    except (TypeError, ValueError) as exc:
        raise InvalidArgument(f"edge {edge!r} is not a collection of integers") from exc
    if len(verts) != k or len(set(verts)) != k:
        raise InvalidArgument(f"edge {edge!r} must have exactly {k} distinct vertices")
    if verts[0] < 0 or verts[-1] >= n:
        raise InvalidArgument(f"edge {edge!r} has a vertex outside [0, {n})")
    return verts


class ThreeGraph:
    """Immutable 3-graph with a lazily built pair-neighbourhood index."""

    __slots__ = ("_n", "_edges", "_index", "_lock")

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()) -> None:
        if n < 0:
            raise InvalidArgument(f"vertex count must be non-negative, got {n}")
        self._n = n
        self._edges: frozenset[Triple] = frozenset(
            _normalize_edge(e, 3, n) for e in edges  # type: ignore[misc]
        )
        self._index: dict[Pair, int] | None = None
        self._lock = threading.Lock()

    def __reduce__(self):
        return (ThreeGraph, (self._n, sorted(self._edges)))

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> frozenset[Triple]:
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def vertices(self) -> range:
        return range(self._n)

    def sorted_edges(self) -> list[Triple]:
        return sorted(self._edges)

    def has_edge(self, u: int, v: int, w: int) -> bool:
        return tuple(sorted((u, v, w))) in self._edges

    def _pair_index(self) -> dict[Pair, int]:
        index = self._index
        if index is None:
            with self._lock:
                if self._index is None:
                    built: dict[Pair, int] = {}
                    for a, b, c in self._edges:
                        built[(a, b)] = built.get((a, b), 0) | (1 << c)
                        built[(a, c)] = built.get((a, c), 0) | (1 << b)
                        built[(b, c)] = built.get((b, c), 0) | (1 << a)
                    self._index = built
                index = self._index
        return index

    def neighbor_mask(self, u: int, v: int) -> int:
        """Bitset of N(uv)."""
        return self._pair_index().get(pair(u, v), 0)

    def neighbors(self, u: int, v: int) -> frozenset[int]:
        return frozenset(iter_bits(self.neighbor_mask(u, v)))

    def active_pairs(self) -> list[Pair]:
        """Pairs lying in at least one edge, in lexicographic order."""
        return sorted(self._pair_index())

    def check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self._n:
            raise InvalidArgument(f"vertex {v!r} outside [0, {self._n})")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ThreeGraph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"ThreeGraph(n={self._n}, edges={len(self._edges)})"


class FiveGraph:
    """Immutable 5-graph, optionally split into (A, B) with 3+2 edges."""

    __slots__ = ("_n", "_edges", "_part_a", "_part_b")

    def __init__(
        self,
        n: int,
        edges: Iterable[Iterable[int]] = (),
        bipartition: tuple[Iterable[int], Iterable[int]] | None = None,
    ) -> None:
        if n < 0:
            raise InvalidArgument(f"vertex count must be non-negative, got {n}")
        self._n = n
        self._edges: frozenset[tuple[int, ...]] = frozenset(_normalize_edge(e, 5, n) for e in edges)
        self._part_a: frozenset[int] | None = None
        self._part_b: frozenset[int] | None = None
        if bipartition is not None:
            part_a, part_b = (frozenset(bipartition[0]), frozenset(bipartition[1]))
            if part_a & part_b:
                raise InvalidArgument("bipartition parts intersect")
            if part_a | part_b != frozenset(range(n)):
                raise InvalidArgument("bipartition does not cover the vertex set")
            for edge in self._edges:
                if len(part_a.intersection(edge)) != 3:
                    raise InvalidArgument(f"edge {edge} does not meet A in exactly 3 vertices")
            self._part_a, self._part_b = part_a, part_b

    def __reduce__(self):
        parts = None
        if self._part_a is not None:
            parts = (sorted(self._part_a), sorted(self._part_b or ()))
        return (FiveGraph, (self._n, sorted(self._edges), parts))

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> frozenset[tuple[int, ...]]:
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def bipartition(self) -> tuple[frozenset[int], frozenset[int]] | None:
        if self._part_a is None or self._part_b is None:
            return None
        return self._part_a, self._part_b

    def sorted_edges(self) -> list[tuple[int, ...]]:
        return sorted(self._edges)

    def degree(self, v: int) -> int:
        return sum(1 for e in self._edges if v in e)

    def degrees(self) -> list[int]:
        counts = [0] * self._n
        for edge in self._edges:
            for v in edge:
                counts[v] += 1
        return counts

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiveGraph):
            return NotImplemented
        return (self._n, self._edges, self.bipartition) == (other._n, other._edges, other.bipartition)

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        split = "" if self._part_a is None else f", |A|={len(self._part_a)}"
        return f"FiveGraph(n={self._n}, edges={len(self._edges)}{split})"


@dataclass(frozen=True, slots=True)
class PairNeighborhood:
    pair: Pair
    neighbors: frozenset[int]

    @property
    def degree(self) -> int:
        return len(self.neighbors)


@dataclass(frozen=True, slots=True)
class AvoidanceGraph:
    """Graph B of forbidden pairs; a vertex set avoids B if it spans no pair of B."""

    pairs: frozenset[Pair] = frozenset()

    @classmethod
    def of(cls, pairs: Iterable[Iterable[int]] = ()) -> AvoidanceGraph:
        normalized: set[Pair] = set()
        for raw in pairs:
            u, v = (int(x) for x in raw)
            if u == v:
                raise InvalidArgument(f"forbidden pair ({u}, {v}) is a loop")
            normalized.add(pair(u, v))
        return cls(frozenset(normalized))

    def __len__(self) -> int:
        return len(self.pairs)

    def forbids(self, u: int, v: int) -> bool:
        return pair(u, v) in self.pairs

    def avoids(self, vertices: Iterable[int]) -> bool:
        if not self.pairs:
            return True
        verts = sorted(vertices)
        return not any(p in self.pairs for p in itertools.combinations(verts, 2))

    def degree(self, v: int) -> int:
        return sum(1 for p in self.pairs if v in p)

    def max_degree(self) -> int:
        """Δ(B); zero for an empty graph."""
        counts: dict[int, int] = {}
        for u, v in self.pairs:
            counts[u] = counts.get(u, 0) + 1
            counts[v] = counts.get(v, 0) + 1
        return max(counts.values(), default=0)

    def check_range(self, n: int) -> None:
        for u, v in self.pairs:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidArgument(f"forbidden pair ({u}, {v}) outside [0, {n})")

    def sorted_pairs(self) -> list[Pair]:
        return sorted(self.pairs)


# ---------------------------------------------------------------------------
# Degree, codegree, density
# ---------------------------------------------------------------------------


def _check_pair(H: ThreeGraph, u: int, v: int) -> None:
    H.check_vertex(u)
    H.check_vertex(v)
    if u == v:
        raise InvalidArgument(f"pair needs two distinct vertices, got {u} twice")


def pair_neighborhood(H: ThreeGraph, u: int, v: int) -> PairNeighborhood:
    _check_pair(H, u, v)
    return PairNeighborhood(pair(u, v), H.neighbors(u, v))


def codegree(H: ThreeGraph, u: int, v: int) -> int:
    """Number of edges containing both u and v."""
    _check_pair(H, u, v)
    return H.neighbor_mask(u, v).bit_count()


def min_codegree(H: ThreeGraph) -> int:
    if H.n < 2:
        raise InvalidArgument(f"minimum codegree needs n >= 2, got n={H.n}")
    return min(
        H.neighbor_mask(u, v).bit_count() for u, v in itertools.combinations(range(H.n), 2)
    )


def max_codegree(H: ThreeGraph) -> int:
    if H.n < 2:
        raise InvalidArgument(f"maximum codegree needs n >= 2, got n={H.n}")
    return max(
        H.neighbor_mask(u, v).bit_count() for u, v in itertools.combinations(range(H.n), 2)
    )


def vertex_degree(H: ThreeGraph, v: int) -> int:
    H.check_vertex(v)
    return sum(1 for e in H.edges if v in e)


def density(H: ThreeGraph) -> Fraction:
    """e(H) / C(n, 3) as an exact rational."""
    if H.n < 3:
        raise InvalidArgument(f"density needs n >= 3, got n={H.n}")
    return Fraction(H.edge_count, comb(H.n, 3))


def induced(H: ThreeGraph, S: Iterable[int]) -> tuple[ThreeGraph, tuple[int, ...]]:
    """H[S] relabelled to 0..|S|-1 in increasing order, plus the lift map."""
    order = tuple(sorted(set(S)))
    for v in order:
        H.check_vertex(v)
    position = {v: i for i, v in enumerate(order)}
    edges = [
        (position[a], position[b], position[c])
        for a, b, c in H.edges
        if a in position and b in position and c in position
    ]
    return ThreeGraph(len(order), edges), order


def union(graphs: Iterable[ThreeGraph]) -> ThreeGraph:
    graphs = list(graphs)
    if not graphs:
        raise InvalidArgument("union of an empty family")
    n = graphs[0].n
    if any(g.n != n for g in graphs):
        raise InvalidArgument("graphs in a union must share the vertex count")
    edges: set[Triple] = set()
    for g in graphs:
        edges |= g.edges
    return ThreeGraph(n, edges)


def blow_up(
    H: ThreeGraph,
    factor: int = BLOW_UP_FACTOR,
    forbidden: AvoidanceGraph | Iterable[Pair] = (),
) -> tuple[ThreeGraph, AvoidanceGraph]:
    """Replace every vertex u by five copies u_0..u_4 (u_i is 5u + i).

    Edges are the lifts u_i v_j w_k of edges uvw, plus every triple with two
    vertices in one class. Forbidden pairs lift to all u_i v_j and every
    within-class pair u_i u_j is forbidden.
    """
    if factor != BLOW_UP_FACTOR:
        raise Unsupported(f"blow-up factor is fixed at {BLOW_UP_FACTOR}, got {factor}")
    k = BLOW_UP_FACTOR
    size = k * H.n
    copies = range(k)
    edges: set[Triple] = set()
    for u, v, w in H.edges:
        for i, j, l in itertools.product(copies, repeat=3):
            edges.add((k * u + i, k * v + j, k * w + l))
    for u in range(H.n):
        for i, j in itertools.combinations(copies, 2):
            x, y = k * u + i, k * u + j
            for z in range(size):
                if z != x and z != y:
                    edges.add(tuple(sorted((x, y, z))))  # type: ignore[arg-type]
    if not isinstance(forbidden, AvoidanceGraph):
        forbidden = AvoidanceGraph.of(forbidden)
    pairs: set[Pair] = set()
    for u, v in forbidden.pairs:
        H.check_vertex(u)
        H.check_vertex(v)
        for i, j in itertools.product(copies, repeat=2):
            pairs.add(pair(k * u + i, k * v + j))
    for u in range(H.n):
        for i, j in itertools.combinations(copies, 2):
            pairs.add((k * u + i, k * u + j))
    return ThreeGraph(size, edges), AvoidanceGraph(frozenset(pairs))


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------


def parse_header(text: str) -> dict[str, str]:
    """Collect ``key=value`` tokens from leading ``#`` comment lines."""
    meta: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if not line.startswith("#"):
            break
        for token in line[1:].split():
            if "=" in token:
                key, value = token.split("=", 1)
                meta[key] = value
    return meta


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def _parse_ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError as exc:
        raise FormatError(f"expected integers, got {line!r}", lineno) from exc


def _parse_body(text: str, k: int) -> tuple[int, list[tuple[int, ...]], list[int] | None]:
    lines = _content_lines(text)
    try:
        lineno, first = next(lines)
    except StopIteration:
        raise FormatError("missing vertex count line") from None
    values = _parse_ints(first, lineno)
    if len(values) != 1 or values[0] < 0:
        raise FormatError(f"first line must be a single vertex count, got {first!r}", lineno)
    n = values[0]
    edges: list[tuple[int, ...]] = []
    part_a: list[int] | None = None
    for lineno, line in lines:
        if line.startswith("A:"):
            if k != 5 or part_a is not None or edges:
                raise FormatError("unexpected bipartition header", lineno)
            part_a = _parse_ints(line[2:], lineno)
            continue
        verts = _parse_ints(line, lineno)
        if len(verts) != k:
            raise FormatError(f"expected {k} vertices per edge, got {len(verts)}", lineno)
        if any(a >= b for a, b in zip(verts, verts[1:])):
            raise FormatError(f"edge vertices must be strictly increasing: {line!r}", lineno)
        if verts[0] < 0 or verts[-1] >= n:
            raise FormatError(f"edge vertex outside [0, {n}): {line!r}", lineno)
        edges.append(tuple(verts))
    return n, edges, part_a


def parse_three_graph(text: str) -> ThreeGraph:
    n, edges, _ = _parse_body(text, 3)
    return ThreeGraph(n, edges)


def parse_five_graph(text: str) -> FiveGraph:
    n, edges, part_a = _parse_body(text, 5)
    if part_a is None:
        return FiveGraph(n, edges)
    if any(v < 0 or v >= n for v in part_a):
        raise FormatError("bipartition header names a vertex out of range")
    part_b = sorted(set(range(n)) - set(part_a))
    return FiveGraph(n, edges, (part_a, part_b))


def _header_lines(meta: Mapping[str, object] | None) -> list[str]:
    if not meta:
        return []
    tokens = " ".join(f"{key}={value}" for key, value in sorted(meta.items()))
    return [f"# {tokens}"]


def dump_three_graph(H: ThreeGraph, meta: Mapping[str, object] | None = None) -> str:
    lines = _header_lines(meta)
    lines.append(str(H.n))
    lines.extend(" ".join(map(str, e)) for e in H.sorted_edges())
    return "\n".join(lines) + "\n"


def dump_five_graph(J: FiveGraph, meta: Mapping[str, object] | None = None) -> str:
    lines = _header_lines(meta)
    lines.append(str(J.n))
    if J.bipartition is not None:
        lines.append("A: " + " ".join(map(str, sorted(J.bipartition[0]))))
    lines.extend(" ".join(map(str, e)) for e in J.sorted_edges())
    return "\n".join(lines) + "\n"
