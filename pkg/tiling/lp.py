"""Two-phase tableau simplex over exact rationals with Bland's rule.

Solves ``min c.x`` subject to ``A_eq x = b_eq``, ``A_ub x <= b_ub`` and
``x >= 0``. When phase one cannot drive the artificial variables to zero the
result carries a Farkas vector ``a`` (equality rows first, then inequality
rows) with ``a.A >= 0`` columnwise, ``a >= 0`` on inequality rows and
``a.b < 0``.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from tiling.errors import InvalidArgument

logger = logging.getLogger(__name__)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

Number = Fraction | int


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] = ()
    objective: Fraction | None = None
    farkas: tuple[Fraction, ...] = ()
    pivots: int = 0


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.cost: list[Fraction] = []
        self.value = Fraction(0)
        self.pivots = 0

    def price(self, costs: Sequence[Fraction]) -> None:
        """Reduced costs and objective value for the current basis."""
        width = len(costs)
        reduced = list(costs)
        value = Fraction(0)
        for r, b in enumerate(self.basis):
            cb = costs[b]
            if cb:
                row = self.rows[r]
                for j in range(width):
                    if row[j]:
                        reduced[j] -= cb * row[j]
                value += cb * self.rhs[r]
        self.cost = reduced
        self.value = value

    def pivot(self, r: int, col: int) -> None:
        self.pivots += 1
        row = self.rows[r]
        factor = row[col]
        if factor != 1:
            self.rows[r] = row = [v / factor for v in row]
            self.rhs[r] /= factor
        for i, other in enumerate(self.rows):
            if i != r and other[col]:
                f = other[col]
                self.rows[i] = [a - f * b if b else a for a, b in zip(other, row)]
                self.rhs[i] -= f * self.rhs[r]
        if self.cost and self.cost[col]:
            f = self.cost[col]
            self.cost = [a - f * b if b else a for a, b in zip(self.cost, row)]
            self.value += f * self.rhs[r]
        self.basis[r] = col

    def run(self) -> bool:
        """Iterate to optimality; False when unbounded."""
        while True:
            col = next((j for j, d in enumerate(self.cost) if d < 0), None)
            if col is None:
                return True
            best_row = None
            best_ratio: Fraction | None = None
            for r, row in enumerate(self.rows):
                if row[col] > 0:
                    ratio = self.rhs[r] / row[col]
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and self.basis[r] < self.basis[best_row])  # type: ignore[index]
                    ):
                        best_row, best_ratio = r, ratio
            if best_row is None:
                return False
            self.pivot(best_row, col)


def integral_direction(vector: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Positive multiple of ``vector`` with coprime integer entries."""
    if not any(vector):
        return tuple(Fraction(0) for _ in vector)
    scale = reduce(lcm, (v.denominator for v in vector), 1)
    ints = [int(v * scale) for v in vector]
    divisor = reduce(gcd, (abs(v) for v in ints if v), 0)
    return tuple(Fraction(v // divisor) for v in ints)


def solve_lp(
    c: Sequence[Number],
    A_eq: Sequence[Sequence[Number]] = (),
    b_eq: Sequence[Number] = (),
    A_ub: Sequence[Sequence[Number]] = (),
    b_ub: Sequence[Number] = (),
) -> LPResult:
    costs = [Fraction(v) for v in c]
    k = len(costs)
    if len(A_eq) != len(b_eq) or len(A_ub) != len(b_ub):
        raise InvalidArgument("constraint matrix and right-hand side lengths differ")
    for row in (*A_eq, *A_ub):
        if len(row) != k:
            raise InvalidArgument(f"constraint row has {len(row)} entries, expected {k}")

    n_ub = len(A_ub)
    width = k + n_ub
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for row, b in zip(A_eq, b_eq):
        rows.append([Fraction(v) for v in row] + [Fraction(0)] * n_ub)
        rhs.append(Fraction(b))
    for i, (row, b) in enumerate(zip(A_ub, b_ub)):
        slack = [Fraction(0)] * n_ub
        slack[i] = Fraction(1)
        rows.append([Fraction(v) for v in row] + slack)
        rhs.append(Fraction(b))

    m = len(rows)
    signs = [1] * m
    for i in range(m):
        if rhs[i] < 0:
            signs[i] = -1
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    for i in range(m):
        rows[i].extend(Fraction(1) if j == i else Fraction(0) for j in range(m))

    tableau = _Tableau(rows, rhs, [width + i for i in range(m)])
    tableau.price([Fraction(0)] * width + [Fraction(1)] * m)
    tableau.run()

    if tableau.value > 0:
        y = [1 - tableau.cost[width + i] for i in range(m)]
        farkas = integral_direction([-sign * yi for sign, yi in zip(signs, y)])
        logger.debug("phase one infeasible after %d pivots", tableau.pivots)
        return LPResult(INFEASIBLE, farkas=farkas, pivots=tableau.pivots)

    # drive artificials out of the basis, dropping redundant rows
    for r in reversed(range(m)):
        if tableau.basis[r] >= width:
            col = next((j for j in range(width) if tableau.rows[r][j]), None)
            if col is None:
                del tableau.rows[r], tableau.rhs[r], tableau.basis[r]
            else:
                tableau.pivot(r, col)
    tableau.rows = [row[:width] for row in tableau.rows]
    tableau.price(costs + [Fraction(0)] * n_ub)
    if not tableau.run():
        return LPResult(UNBOUNDED, pivots=tableau.pivots)

    x = [Fraction(0)] * width
    for r, b in enumerate(tableau.basis):
        x[b] = tableau.rhs[r]
    logger.debug("simplex optimal after %d pivots, value %s", tableau.pivots, tableau.value)
    return LPResult(OPTIMAL, tuple(x[:k]), tableau.value, pivots=tableau.pivots)
