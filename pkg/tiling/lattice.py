"""Index vectors of copies with respect to an ordered partition, and the
integer lattice generated by the abundant ones."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any

from tiling.copies import iter_copies
from tiling.errors import InvalidArgument, NotFound
from tiling.hypergraph import ThreeGraph
from tiling.rationals import fraction_str

logger = logging.getLogger(__name__)

IndexVector = tuple[int, ...]


def _owners(parts: Sequence[Iterable[int]], n: int | None = None) -> dict[int, int]:
    owner: dict[int, int] = {}
    for index, part in enumerate(parts):
        for v in part:
            if v in owner:
                raise InvalidArgument(f"vertex {v} appears in two parts")
            owner[v] = index
    if n is not None and set(owner) != set(range(n)):
        raise InvalidArgument("parts do not partition the vertex set")
    return owner


def index_vector(S: Iterable[int], parts: Sequence[Iterable[int]]) -> IndexVector:
    """(|S & V_1|, ..., |S & V_r|)."""
    owner = _owners(parts)
    counts = [0] * len(parts)
    for v in set(S):
        if v not in owner:
            raise InvalidArgument(f"vertex {v} lies in no part")
        counts[owner[v]] += 1
    return tuple(counts)


def index_buckets(H: ThreeGraph, parts: Sequence[Iterable[int]]) -> dict[IndexVector, int]:
    """Number of copies of T realising each index vector (observed vectors only)."""
    owner = _owners(parts, H.n)
    r = len(parts)
    buckets: dict[IndexVector, int] = {}
    for copy in iter_copies(H):
        counts = [0] * r
        for v in copy:
            counts[owner[v]] += 1
        key = tuple(counts)
        buckets[key] = buckets.get(key, 0) + 1
    return dict(sorted(buckets.items()))


def abundant_vectors(H: ThreeGraph, parts: Sequence[Iterable[int]], mu: Fraction) -> list[IndexVector]:
    """Index vectors realised by at least mu * C(n, 5) copies."""
    mu = Fraction(mu)
    if not 0 < mu <= 1:
        raise InvalidArgument(f"mu must lie in (0, 1], got {mu}")
    threshold = mu * comb(H.n, 5)
    return [vec for vec, count in index_buckets(H, parts).items() if count >= threshold]


@dataclass
class IndexLattice:
    """Subgroup of Z^r generated by integer vectors, kept in row echelon form."""

    generators: list[IndexVector]
    dim: int
    basis: list[list[int]] = field(init=False)
    pivots: list[int] = field(init=False)

    def __post_init__(self) -> None:
        for g in self.generators:
            if len(g) != self.dim:
                raise InvalidArgument(f"generator {g} does not have dimension {self.dim}")
        self.basis, self.pivots = _echelon([list(g) for g in self.generators], self.dim)

    @classmethod
    def of(cls, generators: Iterable[Sequence[int]], dim: int | None = None) -> IndexLattice:
        gens = [tuple(int(x) for x in g) for g in generators]
        if dim is None:
            if not gens:
                raise InvalidArgument("dimension is required for an empty generator set")
            dim = len(gens[0])
        return cls(gens, dim)

    def contains(self, g: Sequence[int]) -> bool:
        if len(g) != self.dim:
            raise InvalidArgument(f"vector of length {len(g)} in a lattice of dimension {self.dim}")
        rest = [int(x) for x in g]
        for row, col in zip(self.basis, self.pivots):
            if any(rest[c] for c in range(col) if c not in self.pivots):
                return False
            q, r = divmod(rest[col], row[col])
            if r:
                return False
            if q:
                rest = [a - q * b for a, b in zip(rest, row)]
        return not any(rest)

    def to_dict(self) -> dict[str, Any]:
        return {
            "basis": self.basis,
            "dim": self.dim,
            "generators": [list(g) for g in self.generators],
        }


def _echelon(rows: list[list[int]], dim: int) -> tuple[list[list[int]], list[int]]:
    """Integer row echelon form by repeated division on the smallest pivot."""
    rows = [row for row in rows if any(row)]
    basis: list[list[int]] = []
    pivots: list[int] = []
    for col in range(dim):
        active = [row for row in rows if row[col]]
        rows = [row for row in rows if not row[col]]
        while len(active) > 1:
            active.sort(key=lambda row: abs(row[col]))
            pivot = active[0]
            reduced = [pivot]
            for row in active[1:]:
                q = row[col] // pivot[col]
                row = [a - q * b for a, b in zip(row, pivot)]
                if row[col]:
                    reduced.append(row)
                elif any(row):
                    rows.append(row)
            active = reduced
        if active:
            pivot = active[0]
            if pivot[col] < 0:
                pivot = [-x for x in pivot]
            basis.append(pivot)
            pivots.append(col)
    return basis, pivots


def lattice_membership(L: IndexLattice, g: Sequence[int]) -> bool:
    return L.contains(g)


def unit_vector(r: int, j: int) -> IndexVector:
    return tuple(1 if i == j else 0 for i in range(r))


def transferral_witness(
    H: ThreeGraph, parts: Sequence[Iterable[int]], psi: Fraction
) -> tuple[IndexVector, IndexVector] | NotFound:
    """Index vectors i, i' with i - i' = (1, -1), each realised by >= psi n^5 copies.

    Among qualifying pairs the one with the largest smaller bucket wins.
    """
    if len(parts) != 2:
        raise InvalidArgument(f"transferral needs a bipartition, got {len(parts)} parts")
    psi = Fraction(psi)
    if psi < 0:
        raise InvalidArgument(f"psi must be non-negative, got {psi}")
    threshold = psi * H.n**5
    buckets = index_buckets(H, parts)
    best: tuple[int, IndexVector, IndexVector] | None = None
    for low, count in buckets.items():
        high = (low[0] + 1, low[1] - 1)
        other = buckets.get(high, 0)
        if count >= threshold and other >= threshold and min(count, other) > 0:
            score = min(count, other)
            if best is None or score > best[0]:
                best = (score, high, low)
    if best is None:
        return NotFound(f"no transferral pair above {fraction_str(threshold)} copies")
    return best[1], best[2]


@dataclass(frozen=True)
class ClosureReport:
    mu: Fraction
    generators: tuple[IndexVector, ...]
    failing: tuple[tuple[int, int], ...]

    @property
    def holds(self) -> bool:
        return not self.failing

    def to_dict(self) -> dict[str, Any]:
        return {
            "failing": [[i + 1, j + 1] for i, j in self.failing],
            "generators": [list(g) for g in self.generators],
            "holds": self.holds,
            "mu": fraction_str(self.mu),
        }


def closure_hypothesis(H: ThreeGraph, parts: Sequence[Iterable[int]], mu: Fraction) -> ClosureReport:
    """Whether u_l - u_l' lies in the abundant-vector lattice for every l, l'."""
    r = len(parts)
    generators = abundant_vectors(H, parts, mu)
    lattice = IndexLattice.of(generators, dim=r)
    failing = []
    for i, j in itertools.combinations(range(r), 2):
        diff = [a - b for a, b in zip(unit_vector(r, i), unit_vector(r, j))]
        if not lattice.contains(diff):
            failing.append((i, j))
    logger.debug("closure check: %d abundant vectors, %d failing pairs", len(generators), len(failing))
    return ClosureReport(Fraction(mu), tuple(generators), tuple(failing))
