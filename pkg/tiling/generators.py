"""Named constructions and seeded random instances.

Every generator is a pure function of its arguments; randomness comes from
``numpy.random.default_rng(seed)`` (PCG64), recorded as ``rng=PCG64`` in the
metadata header of emitted graphs.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from tiling.copies import supports_T
from tiling.errors import FormatError, InvalidArgument
from tiling.hypergraph import (
    FiveGraph,
    Pair,
    ThreeGraph,
    Triple,
    dump_five_graph,
    dump_three_graph,
    parse_three_graph,
)
from tiling.rainbow import RainbowInstance
from tiling.rationals import fraction_str, parse_fraction

logger = logging.getLogger(__name__)

RNG_NAME = "PCG64"
FAMILY_SEPARATOR = "---"

Kind = Literal["h_ext", "complete", "tripartite", "random_codegree", "rainbow_family", "support_5graph"]


class MarkedGraph(NamedTuple):
    graph: ThreeGraph
    A: tuple[int, ...]
    B: tuple[int, ...]


def gen_h_ext(n: int) -> MarkedGraph:
    """|A| = 2n/5 - 1, |B| = 3n/5 + 1, edges all triples meeting A."""
    if n % 5 or n < 10:
        raise InvalidArgument(f"divisibility: H_ext needs 5 | n and n >= 10, got n={n}")
    size_a = 2 * n // 5 - 1
    A = tuple(range(size_a))
    B = tuple(range(size_a, n))
    edges = [t for t in itertools.combinations(range(n), 3) if t[0] < size_a]
    return MarkedGraph(ThreeGraph(n, edges), A, B)


def gen_complete(n: int) -> ThreeGraph:
    if n < 3:
        raise InvalidArgument(f"complete 3-graph needs n >= 3, got n={n}")
    return ThreeGraph(n, itertools.combinations(range(n), 3))


def gen_tripartite(sizes: Sequence[int]) -> ThreeGraph:
    """All transversal triples of consecutive parts of the given sizes."""
    if len(sizes) != 3 or any(s < 0 for s in sizes):
        raise InvalidArgument(f"tripartite construction needs three part sizes, got {list(sizes)}")
    starts = [0, sizes[0], sizes[0] + sizes[1]]
    parts = [range(start, start + size) for start, size in zip(starts, sizes)]
    return ThreeGraph(sum(sizes), itertools.product(*parts))


def gen_random_codegree(
    n: int, delta_floor: int, seed: int | None, *, p: Fraction = Fraction(1, 2)
) -> ThreeGraph:
    """Sample each triple with probability p, then repair every deficient pair.

    A pair below the floor receives uniformly random completing edges until
    it reaches the floor; codegrees only grow, so one pass over the pairs
    suffices.
    """
    if n < 3:
        raise InvalidArgument(f"random 3-graph needs n >= 3, got n={n}")
    if delta_floor < 0 or delta_floor > n - 2:
        raise InvalidArgument(f"unreachable codegree floor {delta_floor} for n={n}")
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise InvalidArgument(f"p must lie in [0, 1], got {fraction_str(p)}")
    rng = np.random.default_rng(seed)
    triples: list[Triple] = list(itertools.combinations(range(n), 3))  # type: ignore[arg-type]
    draws = rng.random(len(triples))
    edges = {t for t, x in zip(triples, draws) if x < float(p)}
    codeg: dict[Pair, int] = {pr: 0 for pr in itertools.combinations(range(n), 2)}  # type: ignore[misc]
    for a, b, c in edges:
        codeg[(a, b)] += 1
        codeg[(a, c)] += 1
        codeg[(b, c)] += 1
    added = 0
    for u, v in itertools.combinations(range(n), 2):
        deficit = delta_floor - codeg[(u, v)]
        if deficit <= 0:
            continue
        candidates = [w for w in range(n) if w != u and w != v and tuple(sorted((u, v, w))) not in edges]
        for index in rng.choice(len(candidates), size=deficit, replace=False):
            w = candidates[int(index)]
            a, b, c = sorted((u, v, w))
            edges.add((a, b, c))
            codeg[(a, b)] += 1
            codeg[(a, c)] += 1
            codeg[(b, c)] += 1
            added += 1
    logger.debug("random codegree graph n=%d floor=%d: %d edges, %d added in repair", n, delta_floor, len(edges), added)
    return ThreeGraph(n, edges)


def gen_support_5graph(H: ThreeGraph, A: Iterable[int], B: Iterable[int]) -> FiveGraph:
    """5-sets with three vertices in A and two in B that support a copy of T."""
    part_a, part_b = sorted(set(A)), sorted(set(B))
    if set(part_a) & set(part_b) or set(part_a) | set(part_b) != set(range(H.n)):
        raise InvalidArgument("A and B do not partition the vertex set")
    edges = []
    for top in itertools.combinations(part_a, 3):
        for bottom in itertools.combinations(part_b, 2):
            S = top + bottom
            if supports_T(H, S):
                edges.append(S)
    return FiveGraph(H.n, edges, (part_a, part_b))


def gen_rainbow_family(n: int, base: Sequence[GenSpec]) -> RainbowInstance:
    """One colour graph per spec, all on the vertex set of size n."""
    if n % 5:
        raise InvalidArgument(f"divisibility: rainbow families need 5 | n, got n={n}")
    if len(base) != 3 * n // 5:
        raise InvalidArgument(f"expected {3 * n // 5} colour specs, got {len(base)}")
    family = []
    for spec in base:
        if spec.kind in ("rainbow_family", "support_5graph"):
            raise InvalidArgument(f"colour graphs must be 3-graphs, got kind {spec.kind!r}")
        if spec.n not in (None, n):
            raise InvalidArgument(f"colour spec has n={spec.n}, family has n={n}")
        family.append(build(spec.model_copy(update={"n": n})).graphs[0])
    return RainbowInstance(n, tuple(family))


# ---------------------------------------------------------------------------
# Specs and dispatch
# ---------------------------------------------------------------------------


class GenSpec(BaseModel):
    """Generator request; ``kind`` selects which of the other fields apply."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Kind
    n: int | None = None
    seed: int | None = None
    delta_floor: int | None = None
    p: str = "1/2"
    sizes: tuple[int, int, int] | None = None
    A: tuple[int, ...] | None = None
    source: GenSpec | None = None
    colours: tuple[GenSpec, ...] | None = None

    @model_validator(mode="after")
    def _check_kind(self) -> GenSpec:
        needs_n = self.kind in ("h_ext", "complete", "random_codegree", "rainbow_family")
        if needs_n and self.n is None:
            raise ValueError(f"kind {self.kind!r} needs n")
        if self.kind == "tripartite" and self.sizes is None:
            raise ValueError("kind 'tripartite' needs sizes")
        if self.kind == "random_codegree" and self.delta_floor is None:
            raise ValueError("kind 'random_codegree' needs delta_floor")
        if self.kind == "support_5graph" and (self.source is None or self.A is None):
            raise ValueError("kind 'support_5graph' needs source and A")
        if self.kind == "rainbow_family" and self.colours is None:
            raise ValueError("kind 'rainbow_family' needs colours")
        return self

    def parameters(self) -> dict[str, object]:
        """Scalar parameters for the metadata header."""
        params: dict[str, object] = {"kind": self.kind}
        if self.n is not None:
            params["n"] = self.n
        if self.kind == "random_codegree":
            params.update(seed=self.seed, delta_floor=self.delta_floor, p=self.p, rng=RNG_NAME)
        if self.sizes is not None:
            params["sizes"] = ",".join(map(str, self.sizes))
        return params


@dataclass(frozen=True)
class Generated:
    spec: GenSpec
    graphs: tuple[ThreeGraph | FiveGraph, ...]
    marks: dict[str, tuple[int, ...]] = field(default_factory=dict)

    @property
    def graph(self) -> ThreeGraph | FiveGraph:
        return self.graphs[0]

    def meta(self) -> dict[str, object]:
        meta = self.spec.parameters()
        for name, verts in self.marks.items():
            meta[name] = ",".join(map(str, verts))
        return meta

    def dump(self) -> str:
        meta = self.meta()
        if self.spec.kind == "rainbow_family":
            return dump_family(self.graphs, meta)  # type: ignore[arg-type]
        if isinstance(self.graph, FiveGraph):
            return dump_five_graph(self.graph, meta)
        return dump_three_graph(self.graph, meta)


def build(spec: GenSpec) -> Generated:
    """Instantiate a spec."""
    if spec.kind == "h_ext":
        marked = gen_h_ext(spec.n)  # type: ignore[arg-type]
        return Generated(spec, (marked.graph,), {"A": marked.A, "B": marked.B})
    if spec.kind == "complete":
        return Generated(spec, (gen_complete(spec.n),))  # type: ignore[arg-type]
    if spec.kind == "tripartite":
        graph = gen_tripartite(spec.sizes)  # type: ignore[arg-type]
        if spec.n is not None and spec.n != graph.n:
            raise InvalidArgument(f"part sizes sum to {graph.n}, spec says n={spec.n}")
        return Generated(spec, (graph,))
    if spec.kind == "random_codegree":
        graph = gen_random_codegree(
            spec.n, spec.delta_floor, spec.seed, p=parse_fraction(spec.p)  # type: ignore[arg-type]
        )
        return Generated(spec, (graph,))
    if spec.kind == "support_5graph":
        host = build(spec.source).graph  # type: ignore[arg-type]
        if not isinstance(host, ThreeGraph):
            raise InvalidArgument("support 5-graph source must be a 3-graph")
        A = tuple(sorted(spec.A))  # type: ignore[arg-type]
        B = tuple(v for v in range(host.n) if v not in A)
        return Generated(spec, (gen_support_5graph(host, A, B),))
    inst = gen_rainbow_family(spec.n, spec.colours)  # type: ignore[arg-type]
    return Generated(spec, inst.family)


# ---------------------------------------------------------------------------
# Colour families as text
# ---------------------------------------------------------------------------


def dump_family(family: Sequence[ThreeGraph], meta: dict[str, object] | None = None) -> str:
    """Colour graphs in the 3-graph format, separated by ``---`` lines."""
    blocks = []
    for index, H in enumerate(family):
        block_meta = dict(meta or {}) if index == 0 else {}
        block_meta["colour"] = index
        blocks.append(dump_three_graph(H, block_meta))
    return (FAMILY_SEPARATOR + "\n").join(blocks)


def parse_family(text: str) -> RainbowInstance:
    blocks: list[list[str]] = [[]]
    for line in text.splitlines():
        if line.strip() == FAMILY_SEPARATOR:
            blocks.append([])
        else:
            blocks[-1].append(line)
    family = []
    for block in blocks:
        try:
            family.append(parse_three_graph("\n".join(block)))
        except FormatError as exc:
            raise FormatError(f"colour {len(family)}: {exc}") from exc
    return RainbowInstance.of(family)
