"""Perfect fractional T-tilings, Farkas certificates and pair-weight minimax.

Copies spanning the same 5-set have the same characteristic vector, so the
linear programs use supporting 5-sets as columns and place each set's weight
on its first witness copy.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Any

from tiling.copies import FiveSet, TCopy, is_copy_of, supporting_sets
from tiling.errors import Infeasible, InvalidArgument, NotFound
from tiling.hypergraph import BLOW_UP_FACTOR, AvoidanceGraph, Pair, ThreeGraph
from tiling.lp import INFEASIBLE, OPTIMAL, solve_lp
from tiling.rationals import fraction_list, fraction_str, parse_fraction

logger = logging.getLogger(__name__)

FORMULATIONS = ("sets", "pairs")


@dataclass(frozen=True)
class FractionalTiling:
    n: int
    weights: Mapping[TCopy, Fraction] = field(default_factory=dict)

    def vertex_load(self, v: int) -> Fraction:
        return sum((w for copy, w in self.weights.items() if v in copy), Fraction(0))

    def loads(self) -> list[Fraction]:
        loads = [Fraction(0)] * self.n
        for copy, w in self.weights.items():
            for v in copy:
                loads[v] += w
        return loads

    def pair_weight(self, u: int, v: int) -> Fraction:
        return sum((w for copy, w in self.weights.items() if u in copy and v in copy), Fraction(0))

    def pair_weights(self) -> dict[Pair, Fraction]:
        """w(uv) for every pair of distinct vertices, zero included."""
        weights = {p: Fraction(0) for p in itertools.combinations(range(self.n), 2)}
        for copy, w in self.weights.items():
            for p in itertools.combinations(sorted(copy), 2):
                weights[p] += w
        return weights

    def psi(self) -> Fraction:
        """Largest pair weight."""
        return max(self.pair_weights().values(), default=Fraction(0))

    def total_weight(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def is_perfect(self) -> bool:
        return all(load == 1 for load in self.loads())

    def verify(self, H: ThreeGraph, B: AvoidanceGraph | None = None, *, perfect: bool = True) -> bool:
        if H.n != self.n:
            return False
        for copy, w in self.weights.items():
            if w < 0 or not is_copy_of(H, copy):
                return False
            if w > 0 and B is not None and not B.avoids(copy):
                return False
        loads = self.loads()
        if perfect:
            return all(load == 1 for load in loads)
        return all(load <= 1 for load in loads)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "perfect": self.is_perfect(),
            "total": fraction_str(self.total_weight()),
            "weights": {
                " ".join(map(str, copy)): fraction_str(w) for copy, w in sorted(self.weights.items()) if w
            },
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> FractionalTiling:
        try:
            weights = {
                TCopy(*(int(v) for v in key.split())): parse_fraction(value)
                for key, value in data["weights"].items()
            }
            return cls(int(data["n"]), weights)
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidArgument(f"malformed fractional tiling: {exc}") from exc


@dataclass(frozen=True)
class FarkasCertificate:
    """Vertex vector a with a.1_S >= 0 on admissible copies and a.1 < 0."""

    a: tuple[Fraction, ...]
    avoiding: AvoidanceGraph = AvoidanceGraph()

    def dot(self, vertices: Iterable[int]) -> Fraction:
        return sum((self.a[v] for v in vertices), Fraction(0))

    def total(self) -> Fraction:
        return sum(self.a, Fraction(0))

    def to_dict(self, verified: bool) -> dict[str, Any]:
        return {
            "a": fraction_list(self.a),
            "avoiding": [list(p) for p in self.avoiding.sorted_pairs()],
            "verified": verified,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> FarkasCertificate:
        try:
            a = tuple(parse_fraction(v) for v in data["a"])
            avoiding = AvoidanceGraph.of(data.get("avoiding", ()))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidArgument(f"malformed certificate: {exc}") from exc
        return cls(a, avoiding)


def admissible_sets(H: ThreeGraph, B: AvoidanceGraph | None = None) -> dict[FiveSet, TCopy]:
    """Supporting 5-sets spanning no forbidden pair, with their witness copies."""
    witnesses = supporting_sets(H)
    if B is None or not B.pairs:
        return witnesses
    B.check_range(H.n)
    return {key: copy for key, copy in witnesses.items() if B.avoids(key)}


def verify_certificate(H: ThreeGraph, B: AvoidanceGraph | None, cert: FarkasCertificate) -> bool:
    if len(cert.a) != H.n:
        raise InvalidArgument(f"certificate has {len(cert.a)} entries, graph has {H.n} vertices")
    if cert.total() >= 0:
        return False
    return all(cert.dot(key) >= 0 for key in admissible_sets(H, B))


def _incidence(n: int, keys: Sequence[FiveSet]) -> list[list[int]]:
    rows = [[0] * len(keys) for _ in range(n)]
    for j, key in enumerate(keys):
        for v in key:
            rows[v][j] = 1
    return rows


def frac_perfect(H: ThreeGraph, B: AvoidanceGraph | None = None) -> FractionalTiling | FarkasCertificate:
    """Perfect B-avoiding fractional tiling, or a certificate that none exists."""
    B = B or AvoidanceGraph()
    sets = admissible_sets(H, B)
    if not sets:
        if H.n == 0:
            return FractionalTiling(0, {})
        cert = FarkasCertificate(tuple(Fraction(-1) for _ in range(H.n)), B)
    else:
        keys = list(sets)
        result = solve_lp([0] * len(keys), _incidence(H.n, keys), [1] * H.n)
        if result.status == OPTIMAL:
            tiling = FractionalTiling(H.n, {sets[k]: x for k, x in zip(keys, result.x) if x})
            if not tiling.verify(H, B):
                raise AssertionError("simplex returned an imperfect fractional tiling")
            return tiling
        cert = FarkasCertificate(result.farkas, B)
    if not verify_certificate(H, B, cert):
        raise AssertionError("simplex returned an invalid Farkas certificate")
    logger.debug("no perfect fractional tiling; certificate total %s", cert.total())
    return cert


def frac_min_pair_weight(
    H: ThreeGraph, *, formulation: str = "sets"
) -> tuple[Fraction, FractionalTiling] | Infeasible:
    """Minimise the largest pair weight over perfect fractional tilings.

    ``sets`` bounds each pair's load directly by W; ``pairs`` introduces one
    load variable per pair and bounds those instead. Both give the same W.
    """
    if formulation not in FORMULATIONS:
        raise InvalidArgument(f"formulation must be one of {FORMULATIONS}, got {formulation!r}")
    sets = supporting_sets(H)
    if H.n == 0:
        return Fraction(0), FractionalTiling(0, {})
    if not sets:
        return Infeasible("no perfect fractional tiling")
    keys = list(sets)
    k = len(keys)
    covered_pairs: dict[Pair, list[int]] = {}
    for j, key in enumerate(keys):
        for p in itertools.combinations(key, 2):
            covered_pairs.setdefault(p, []).append(j)
    pairs = sorted(covered_pairs)
    vertex_rows = _incidence(H.n, keys)

    if formulation == "sets":
        # columns: x_S..., W
        c = [0] * k + [1]
        A_eq = [row + [0] for row in vertex_rows]
        A_ub = []
        for p in pairs:
            row = [0] * (k + 1)
            for j in covered_pairs[p]:
                row[j] = 1
            row[k] = -1
            A_ub.append(row)
        result = solve_lp(c, A_eq, [1] * H.n, A_ub, [0] * len(A_ub))
    else:
        # columns: x_S..., p_uv..., W
        width = k + len(pairs) + 1
        c = [0] * (width - 1) + [1]
        A_eq = [row + [0] * (len(pairs) + 1) for row in vertex_rows]
        for i, p in enumerate(pairs):
            row = [0] * width
            for j in covered_pairs[p]:
                row[j] = 1
            row[k + i] = -1
            A_eq.append(row)
        A_ub = []
        for i in range(len(pairs)):
            row = [0] * width
            row[k + i] = 1
            row[width - 1] = -1
            A_ub.append(row)
        b_eq = [1] * H.n + [0] * len(pairs)
        result = solve_lp(c, A_eq, b_eq, A_ub, [0] * len(A_ub))

    if result.status == INFEASIBLE:
        return Infeasible("no perfect fractional tiling")
    if result.status != OPTIMAL or result.objective is None:
        raise AssertionError(f"pair-weight program ended {result.status}")
    tiling = FractionalTiling(H.n, {sets[key]: x for key, x in zip(keys, result.x[:k]) if x})
    if not tiling.verify(H) or tiling.psi() != result.objective:
        raise AssertionError("pair-weight optimum failed verification")
    return result.objective, tiling


# ---------------------------------------------------------------------------
# Minimax improvement step
# ---------------------------------------------------------------------------


def blend(w: FractionalTiling, w2: FractionalTiling, mu: Fraction) -> FractionalTiling:
    """(1 - mu) w + mu w2."""
    mu = Fraction(mu)
    if not 0 <= mu <= 1:
        raise InvalidArgument(f"blend weight must lie in [0, 1], got {mu}")
    if w.n != w2.n:
        raise InvalidArgument("blended tilings live on different vertex sets")
    weights: dict[TCopy, Fraction] = {}
    for copy, x in w.weights.items():
        weights[copy] = weights.get(copy, Fraction(0)) + (1 - mu) * x
    for copy, x in w2.weights.items():
        weights[copy] = weights.get(copy, Fraction(0)) + mu * x
    return FractionalTiling(w.n, {c: x for c, x in weights.items() if x})


def heavy_pairs(w: FractionalTiling) -> tuple[Fraction, AvoidanceGraph, Fraction]:
    """(W, pairs attaining W, largest pair weight strictly below W)."""
    weights = w.pair_weights()
    top = max(weights.values(), default=Fraction(0))
    below = [x for x in weights.values() if x < top]
    heavy = AvoidanceGraph(frozenset(p for p, x in weights.items() if x == top))
    return top, heavy, max(below, default=Fraction(0))


def blend_weight(top: Fraction, runner_up: Fraction) -> Fraction:
    """Half the gap below the heaviest pair weight, capped at half of it."""
    return min((top - runner_up) / 2, top / 2)


@dataclass(frozen=True)
class ImprovementStep:
    psi_before: Fraction
    heavy: AvoidanceGraph
    mu: Fraction | None
    avoiding: FractionalTiling | FarkasCertificate
    result: FractionalTiling | None

    @property
    def improved(self) -> bool:
        return self.result is not None and self.result.psi() < self.psi_before

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "heavy_pairs": [list(p) for p in self.heavy.sorted_pairs()],
            "improved": self.improved,
            "mu": None if self.mu is None else fraction_str(self.mu),
            "psi_before": fraction_str(self.psi_before),
        }
        if self.result is not None:
            data["psi_after"] = fraction_str(self.result.psi())
            data["tiling"] = self.result.to_dict()
        else:
            data["certificate"] = self.avoiding.to_dict(True)  # type: ignore[union-attr]
        return data


def improve_pair_weight(H: ThreeGraph, w: FractionalTiling) -> ImprovementStep:
    """One improvement step: avoid the heaviest pairs, then blend back in.

    When no perfect tiling avoids the heaviest pairs the step returns the
    certificate instead. That only says this step cannot lower W; w need not
    attain the minimax. Otherwise every heavy pair drops to (1 - mu) W and
    no other pair reaches W, so the largest pair weight strictly decreases.
    """
    if not w.verify(H):
        raise InvalidArgument("improvement needs a perfect fractional tiling of H")
    top, heavy, runner_up = heavy_pairs(w)
    other = frac_perfect(H, heavy)
    if isinstance(other, FarkasCertificate):
        return ImprovementStep(top, heavy, None, other, None)
    mu = blend_weight(top, runner_up)
    return ImprovementStep(top, heavy, mu, other, blend(w, other, mu))


# ---------------------------------------------------------------------------
# Aggregation and blow-up projection
# ---------------------------------------------------------------------------


def support_weights(w: FractionalTiling) -> dict[FiveSet, Fraction]:
    """Copy weights summed per spanned 5-set; pair weights are unchanged."""
    totals: dict[FiveSet, Fraction] = {}
    for copy, x in w.weights.items():
        key = copy.five_set()
        totals[key] = totals.get(key, Fraction(0)) + x
    return dict(sorted(totals.items()))


def to_multigraph(w: FractionalTiling) -> tuple[int, dict[FiveSet, int]]:
    """Common denominator D and the integer multiplicity D * w(S) of each 5-set."""
    totals = support_weights(w)
    denominator = reduce(lcm, (x.denominator for x in totals.values()), 1)
    return denominator, {key: int(x * denominator) for key, x in totals.items() if x}


def project_blow_up(w_blown: FractionalTiling, H: ThreeGraph) -> FractionalTiling:
    """Push a tiling of the blow-up that avoids within-class pairs down to H.

    Each lifted copy maps to the copy obtained by collapsing u_i to u. The
    collapsed weight is the lifted total divided by the blow-up factor, so a
    perfect tiling maps to a perfect tiling.
    """
    k = BLOW_UP_FACTOR
    if w_blown.n != k * H.n:
        raise InvalidArgument(f"blown-up tiling has {w_blown.n} vertices, expected {k * H.n}")
    weights: dict[TCopy, Fraction] = {}
    for copy, x in w_blown.weights.items():
        if not x:
            continue
        classes = [v // k for v in copy]
        if len(set(classes)) != 5:
            raise InvalidArgument(f"copy {tuple(copy)} meets a vertex class twice")
        image = TCopy.canonical(*classes)
        if not is_copy_of(H, image):
            raise InvalidArgument(f"copy {tuple(copy)} does not project to a copy in H")
        weights[image] = weights.get(image, Fraction(0)) + x / k
    return FractionalTiling(H.n, dict(sorted(weights.items())))


# ---------------------------------------------------------------------------
# Domination and the ordered-partition audit
# ---------------------------------------------------------------------------


def dominates(U: Iterable[int], W: Iterable[int]) -> bool:
    """Whether the i-th smallest of W is at most the i-th smallest of U, for all i."""
    us, ws = sorted(U), sorted(W)
    if len(us) != len(ws):
        raise InvalidArgument(f"domination compares sets of equal size, got {len(us)} and {len(ws)}")
    return all(w <= u for u, w in zip(us, ws))


Family = list[FiveSet]


def ordered_partition_families(n: int, beta: Fraction) -> tuple[Family, Family, Family]:
    """Three families of 5-sets partitioning positions 0..n-1.

    With b = beta * n, position i - 1 stands for the i-th vertex in order:
    the first family takes {i, b+i, 3n/5+b+i, 3n/5+2b+i, 3n/5+3b+i} for i <= b,
    the second {3n/5-7b+i, 3n/5-5b+i, 3n/5-3b+i, 3n/5-b+i, 3n/5+4b+i} for
    i <= 2b and the third {2b+i, n/5-b+i, 2n/5-4b+i, 3n/5+6b+i, 4n/5+3b+i}
    for i <= n/5-3b.
    """
    beta = Fraction(beta)
    if n <= 0 or n % 5:
        raise InvalidArgument(f"constraint 5 | n violated (n={n})")
    bn = beta * n
    if bn.denominator != 1:
        raise InvalidArgument(f"constraint beta*n integral violated (beta*n={bn})")
    b = int(bn)
    if b < 0:
        raise InvalidArgument(f"constraint beta >= 0 violated (beta={beta})")
    fifth = n // 5
    if fifth - 3 * b < 0:
        raise InvalidArgument(f"constraint n/5 - 3*beta*n >= 0 violated (n/5={fifth}, beta*n={b})")

    def block(offsets: Sequence[int], count: int) -> Family:
        return [tuple(off + i - 1 for off in offsets) for i in range(1, count + 1)]  # type: ignore[misc]

    first = block((0, b, 3 * fifth + b, 3 * fifth + 2 * b, 3 * fifth + 3 * b), b)
    second = block(
        (3 * fifth - 7 * b, 3 * fifth - 5 * b, 3 * fifth - 3 * b, 3 * fifth - b, 3 * fifth + 4 * b), 2 * b
    )
    third = block((2 * b, fifth - b, 2 * fifth - 4 * b, 3 * fifth + 6 * b, 4 * fifth + 3 * b), fifth - 3 * b)
    seen = [v for family in (first, second, third) for s in family for v in s]
    if sorted(seen) != list(range(n)):
        raise AssertionError("ordered-partition families do not partition the positions")
    return first, second, third


@dataclass(frozen=True)
class WeightingReport:
    a_dot_one: Fraction
    copy_weights: tuple[Fraction | None, ...]
    family_sums: tuple[Fraction, ...]
    bound: Fraction
    verdict: str

    @property
    def chain_holds(self) -> bool:
        return self.a_dot_one >= self.bound

    @property
    def contradiction(self) -> bool:
        return self.a_dot_one < 0 and self.bound >= 0 and self.chain_holds

    def to_dict(self) -> dict[str, Any]:
        return {
            "a_dot_one": fraction_str(self.a_dot_one),
            "bound": fraction_str(self.bound),
            "chain_holds": self.chain_holds,
            "contradiction": self.contradiction,
            "copy_weights": [None if x is None else fraction_str(x) for x in self.copy_weights],
            "family_sums": fraction_list(self.family_sums),
            "verdict": self.verdict,
        }


def monotone_weighting_check(
    a: Sequence[Fraction | int],
    copies: Sequence[Iterable[int] | None],
    families: Sequence[Sequence[Iterable[int]]],
) -> WeightingReport:
    """Evaluate 0 > a.1 = sum_V a.1_V >= sum_i |V_i| a.1_{T_i} for sorted a.

    Positions index ``a``; ``copies[i]`` must be dominated by every member of
    ``families[i]`` (and may be None only for an empty family).
    """
    a = [Fraction(x) for x in a]
    if any(x > y for x, y in zip(a, a[1:])):
        raise InvalidArgument("weighting vector must be sorted ascending")
    if len(copies) != len(families):
        raise InvalidArgument("one copy per family is required")
    copy_weights: list[Fraction | None] = []
    family_sums: list[Fraction] = []
    bound = Fraction(0)
    for index, (copy, family) in enumerate(zip(copies, families)):
        members = [tuple(m) for m in family]
        family_sums.append(sum((sum(a[v] for v in m) for m in members), Fraction(0)))
        if copy is None:
            if members:
                raise InvalidArgument(f"family {index + 1} is non-empty but has no copy")
            copy_weights.append(None)
            continue
        copy = tuple(copy)
        for member in members:
            if not dominates(member, copy):
                raise InvalidArgument(f"copy {copy} is not dominated by {member} in family {index + 1}")
        weight = sum((a[v] for v in copy), Fraction(0))
        copy_weights.append(weight)
        bound += len(members) * weight
    total = sum(a, Fraction(0))
    if total >= 0:
        verdict = "no contradiction, a.1 >= 0"
    elif all(x is None or x >= 0 for x in copy_weights):
        verdict = "contradiction: 0 > a.1 >= bound >= 0"
    else:
        verdict = "some T_i has negative weight"
    return WeightingReport(total, tuple(copy_weights), tuple(family_sums), bound, verdict)


def dominated_copy(
    H: ThreeGraph,
    B: AvoidanceGraph | None,
    family: Sequence[Iterable[int]],
    order: Sequence[int] | None = None,
) -> TCopy | NotFound:
    """A B-avoiding copy whose positions are dominated by every family member.

    ``order`` lists vertices by position (default: identity). Family members
    are given as positions.
    """
    order = list(range(H.n)) if order is None else list(order)
    if sorted(order) != list(range(H.n)):
        raise InvalidArgument("order must be a permutation of the vertices")
    position = {v: i for i, v in enumerate(order)}
    members = [sorted(m) for m in family]
    if not members:
        return NotFound("empty family")
    ceiling = [min(col) for col in zip(*members)]
    for key, copy in admissible_sets(H, B).items():
        spots = sorted(position[v] for v in key)
        if all(s <= c for s, c in zip(spots, ceiling)):
            return copy
    return NotFound("no admissible copy is dominated by every member")


@dataclass(frozen=True)
class PartitionAudit:
    order: tuple[int, ...]
    families: tuple[Family, Family, Family]
    copies: tuple[TCopy | None, ...]
    report: WeightingReport | None
    missing: tuple[int, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "copies": [None if c is None else list(c) for c in self.copies],
            "family_sizes": [len(f) for f in self.families],
            "missing": [i + 1 for i in self.missing],
            "order": list(self.order),
            "report": None if self.report is None else self.report.to_dict(),
        }


def certificate_partition_audit(
    H: ThreeGraph, B: AvoidanceGraph | None, cert: FarkasCertificate, beta: Fraction
) -> PartitionAudit:
    """Sort vertices by the certificate, build the families, look for T_1..T_3.

    A missing T_i is the situation in which the graph must be close to
    extremal; otherwise the weighting check shows where the chain breaks.
    """
    if len(cert.a) != H.n:
        raise InvalidArgument(f"certificate has {len(cert.a)} entries, graph has {H.n} vertices")
    order = tuple(sorted(range(H.n), key=lambda v: (cert.a[v], v)))
    families = ordered_partition_families(H.n, beta)
    found: list[TCopy | None] = []
    positions: list[tuple[int, ...] | None] = []
    missing: list[int] = []
    rank = {v: i for i, v in enumerate(order)}
    for index, family in enumerate(families):
        if not family:
            found.append(None)
            positions.append(None)
            continue
        copy = dominated_copy(H, B, family, order)
        if isinstance(copy, NotFound):
            missing.append(index)
            found.append(None)
            positions.append(None)
        else:
            found.append(copy)
            positions.append(tuple(sorted(rank[v] for v in copy)))
    report = None
    if not missing:
        a_sorted = [cert.a[v] for v in order]
        report = monotone_weighting_check(a_sorted, positions, families)
    return PartitionAudit(order, families, tuple(found), report, tuple(missing))
