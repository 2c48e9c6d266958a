"""Exact-rational simplex with Bland's rule.

Solves ``max c·x`` subject to ``A x <= b`` and ``x >= 0``.  Rows with a
negative right-hand side trigger a phase-one search for a feasible basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class Infeasible(ValueError):
    pass


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "unbounded"
    value: Fraction | None
    x: tuple[Fraction, ...] | None


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, col: int):
        row = self.rows[r]
        p = row[col]
        if p != 1:
            inv = 1 / p
            row[:] = [v * inv for v in row]
            self.rhs[r] *= inv
        for i, other in enumerate(self.rows):
            if i != r:
                f = other[col]
                if f:
                    other[:] = [a - f * b for a, b in zip(other, row)]
                    self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = col

    def optimize(self, cost: list[Fraction], allowed: int) -> str:
        """Maximize ``cost`` over columns ``< allowed``; Bland's rule throughout."""
        while True:
            # reduced cost of column j: cost_j - sum_i cost[basis_i] * rows[i][j]
            cb = [cost[b] for b in self.basis]
            enter = None
            for j in range(allowed):
                if j in self.basis:
                    continue
                red = cost[j] - sum(c * row[j] for c, row in zip(cb, self.rows) if c)
                if red > 0:
                    enter = j
                    break
            if enter is None:
                return "optimal"
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], enter)


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    n = len(c)
    m = len(A)
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    # columns: x (n) | slacks (m) | artificials (one per negative row)
    neg = [i for i in range(m) if b[i] < 0]
    width = n + m + len(neg)
    rows, rhs, basis = [], [], []
    art = {}
    for i in range(m):
        row = A[i] + [Fraction(0)] * (m + len(neg))
        row[n + i] = Fraction(1)
        bi = b[i]
        if bi < 0:
            row = [-v for v in row]
            bi = -bi
            j = n + m + len(art)
            art[i] = j
            row[j] = Fraction(1)
            basis.append(j)
        else:
            basis.append(n + i)
        rows.append(row)
        rhs.append(bi)
    tab = _Tableau(rows, rhs, basis)
    if neg:
        phase1 = [Fraction(0)] * width
        for j in art.values():
            phase1[j] = Fraction(-1)
        tab.optimize(phase1, width)
        if any(tab.rhs[i] != 0 for i, bv in enumerate(tab.basis) if bv >= n + m):
            raise Infeasible("linear program is infeasible")
        for i, bv in enumerate(tab.basis):
            if bv >= n + m:
                for j in range(n + m):
                    if tab.rows[i][j] != 0:
                        tab.pivot(i, j)
                        break
    cost = [Fraction(v) for v in c] + [Fraction(0)] * (width - n)
    status = tab.optimize(cost, n + m)
    if status == "unbounded":
        return LPResult("unbounded", None, None)
    x = [Fraction(0)] * n
    for i, bv in enumerate(tab.basis):
        if bv < n:
            x[bv] = tab.rhs[i]
    value = sum((ci * xi for ci, xi in zip(cost, x)), Fraction(0))
    return LPResult("optimal", value, tuple(x))
