"""Naive reference computations the solvers are checked against.

None of these share code paths with the solvers they validate: they scan
maps, subsets and coefficient boxes directly.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from fractions import Fraction
from math import comb

from tiling.hypergraph import ThreeGraph

T_EDGES = ((0, 1, 2), (0, 1, 3), (2, 3, 4))
T_AUTOMORPHISMS = 4


def _is_t(H: ThreeGraph, phi: Sequence[int]) -> bool:
    return all(H.has_edge(phi[i], phi[j], phi[k]) for i, j, k in T_EDGES)


def labeled_embeddings(H: ThreeGraph) -> int:
    """Injective maps V(T) -> V(H) sending every edge of T to an edge."""
    return sum(1 for phi in itertools.permutations(range(H.n), 5) if _is_t(H, phi))


def naive_supports(H: ThreeGraph, S: Sequence[int]) -> bool:
    return any(_is_t(H, phi) for phi in itertools.permutations(S))


def _supporting(H: ThreeGraph, vertices: Sequence[int]) -> list[frozenset[int]]:
    return [frozenset(S) for S in itertools.combinations(vertices, 5) if naive_supports(H, S)]


def brute_force_max_tiling(H: ThreeGraph) -> int:
    """Largest number of disjoint supporting 5-sets, by plain recursion."""
    sets = _supporting(H, range(H.n))

    def best(start: int, used: frozenset[int]) -> int:
        top = 0
        for i in range(start, len(sets)):
            if not sets[i] & used:
                top = max(top, 1 + best(i + 1, used | sets[i]))
        return top

    return best(0, frozenset())


def brute_force_perfect(H: ThreeGraph, vertices: Sequence[int] | None = None) -> bool:
    """Whether the vertex set splits into disjoint supporting 5-sets."""
    verts = tuple(range(H.n)) if vertices is None else tuple(sorted(vertices))
    if len(verts) % 5:
        return False
    sets = _supporting(H, verts)

    def cover(left: frozenset[int]) -> bool:
        if not left:
            return True
        v = min(left)
        return any(cover(left - S) for S in sets if v in S and S <= left)

    return cover(frozenset(verts))


def brute_force_lattice_member(
    generators: Sequence[Sequence[int]], g: Sequence[int], box: int = 10
) -> bool:
    """Integer combination of the generators equal to g with coefficients in [-box, box]."""
    target = tuple(g)
    if not generators:
        return not any(target)
    for coeffs in itertools.product(range(-box, box + 1), repeat=len(generators)):
        combo = tuple(sum(c * gen[i] for c, gen in zip(coeffs, generators)) for i in range(len(target)))
        if combo == target:
            return True
    return False


def naive_linked_count(H: ThreeGraph, u: int, v: int, r: int = 1) -> int:
    others = [w for w in range(H.n) if w != u and w != v]
    return sum(
        1
        for S in itertools.combinations(others, 5 * r - 1)
        if brute_force_perfect(H, (*S, u)) and brute_force_perfect(H, (*S, v))
    )


def exhaustive_min_density(H: ThreeGraph, size: int) -> Fraction:
    """Minimum edge density over all vertex subsets of the given size."""
    best: int | None = None
    for S in itertools.combinations(range(H.n), size):
        inside = set(S)
        count = sum(1 for e in H.edges if inside.issuperset(e))
        if best is None or count < best:
            best = count
    return Fraction(best or 0, comb(size, 3)) if size >= 3 else Fraction(0)
