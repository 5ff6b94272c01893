"""Copies of the generalised triangle T (edges abc, abd, cde).

A copy is stored with its roles in canonical form ``a < b`` and ``c < d``;
the two swaps a<->b and c<->d generate the automorphism group of T, so each
copy has exactly one canonical tuple.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Iterator
from typing import NamedTuple

from tiling.errors import FormatError, InvalidArgument
from tiling.hypergraph import ThreeGraph, Triple, iter_bits, mask_of

logger = logging.getLogger(__name__)

FiveSet = tuple[int, int, int, int, int]


class TCopy(NamedTuple):
    a: int
    b: int
    c: int
    d: int
    e: int

    @classmethod
    def canonical(cls, a: int, b: int, c: int, d: int, e: int) -> TCopy:
        if a > b:
            a, b = b, a
        if c > d:
            c, d = d, c
        return cls(a, b, c, d, e)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self)

    def five_set(self) -> FiveSet:
        return tuple(sorted(self))  # type: ignore[return-value]

    def edges(self) -> tuple[Triple, Triple, Triple]:
        a, b, c, d, e = self
        return (
            tuple(sorted((a, b, c))),  # type: ignore[return-value]
            tuple(sorted((a, b, d))),
            tuple(sorted((c, d, e))),
        )

    def is_canonical(self) -> bool:
        return self.a < self.b and self.c < self.d and len(set(self)) == 5


def is_copy_of(H: ThreeGraph, copy: TCopy) -> bool:
    """Role edges all present and the five vertices distinct and in range."""
    if len(set(copy)) != 5 or min(copy) < 0 or max(copy) >= H.n:
        return False
    return all(edge in H.edges for edge in copy.edges())


def _copies_within(H: ThreeGraph, allowed: int) -> Iterator[TCopy]:
    verts = list(iter_bits(allowed))
    for a, b in itertools.combinations(verts, 2):
        middle = H.neighbor_mask(a, b) & allowed
        if middle.bit_count() < 2:
            continue
        outside_ab = allowed & ~((1 << a) | (1 << b))
        for c, d in itertools.combinations(iter_bits(middle), 2):
            for e in iter_bits(H.neighbor_mask(c, d) & outside_ab):
                yield TCopy(a, b, c, d, e)


def iter_copies(H: ThreeGraph) -> Iterator[TCopy]:
    """Lazily yield every canonical copy in lexicographic order."""
    everything = (1 << H.n) - 1
    for a, b in H.active_pairs():
        middle = H.neighbor_mask(a, b)
        if middle.bit_count() < 2:
            continue
        outside_ab = everything & ~((1 << a) | (1 << b))
        for c, d in itertools.combinations(iter_bits(middle), 2):
            for e in iter_bits(H.neighbor_mask(c, d) & outside_ab):
                yield TCopy(a, b, c, d, e)


def enumerate_copies(H: ThreeGraph) -> list[TCopy]:
    copies = list(iter_copies(H))
    logger.debug("enumerated %d copies of T in %r", len(copies), H)
    return copies


def count_copies(H: ThreeGraph) -> int:
    return sum(1 for _ in iter_copies(H))


def copies_through(H: ThreeGraph, u: int) -> list[TCopy]:
    H.check_vertex(u)
    return [c for c in iter_copies(H) if u in c]


def copies_through_pair(H: ThreeGraph, u: int, v: int) -> list[TCopy]:
    H.check_vertex(u)
    H.check_vertex(v)
    if u == v:
        raise InvalidArgument(f"pair needs two distinct vertices, got {u} twice")
    return [c for c in iter_copies(H) if u in c and v in c]


def copies_in(H: ThreeGraph, S: Iterable[int]) -> list[TCopy]:
    """All copies whose five vertices lie in S."""
    verts = set(S)
    for v in verts:
        H.check_vertex(v)
    return list(_copies_within(H, mask_of(verts)))


def first_copy_in(H: ThreeGraph, S: Iterable[int]) -> TCopy | None:
    return next(_copies_within(H, mask_of(S)), None)


def supports_T(H: ThreeGraph, S: Iterable[int]) -> bool:
    verts = set(S)
    if len(verts) != 5:
        raise InvalidArgument(f"supports_T needs a 5-set, got {len(verts)} vertices")
    for v in verts:
        H.check_vertex(v)
    return first_copy_in(H, verts) is not None


def supporting_sets(H: ThreeGraph) -> dict[FiveSet, TCopy]:
    """Every 5-set spanning a copy, mapped to its lexicographically first copy."""
    witnesses: dict[FiveSet, TCopy] = {}
    for copy in iter_copies(H):
        witnesses.setdefault(copy.five_set(), copy)
    return dict(sorted(witnesses.items()))


def format_copies(copies: Iterable[TCopy]) -> str:
    return "".join(" ".join(map(str, copy)) + "\n" for copy in copies)


def parse_copies(text: str, H: ThreeGraph | None = None) -> list[TCopy]:
    """Read one canonical copy per line; with H given, check role edges too."""
    copies: list[TCopy] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise FormatError(f"expected integers, got {line!r}", lineno) from exc
        if len(values) != 5:
            raise FormatError(f"a copy has 5 vertices, got {len(values)}", lineno)
        copy = TCopy(*values)
        if not copy.is_canonical():
            raise FormatError(f"copy {line!r} is not in canonical form", lineno)
        if H is not None and not is_copy_of(H, copy):
            raise FormatError(f"copy {line!r} is not a copy of T in the graph", lineno)
        copies.append(copy)
    return copies
