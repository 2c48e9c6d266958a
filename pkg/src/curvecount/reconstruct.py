"""Exact univariate rational reconstruction and reciprocity verdicts.

Polynomials are lists of integer coefficients, lowest degree first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import lp

Poly = list


class ReconstructionError(ValueError):
    def __init__(self, msg: str, index: int | None = None):
        super().__init__(msg)
        self.index = index


class UnpointedCone(ValueError):
    pass


# -- polynomial helpers -----------------------------------------------------------


def trim(p: Sequence) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def pmul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def psub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def pscale(a: Sequence, c) -> list:
    return trim([c * x for x in a])


def pshift(a: Sequence, k: int) -> list:
    return [0] * k + list(a) if a else []


def _pdivmod(a: list, b: list) -> tuple[list, list]:
    a = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        a = trim(a)
    return trim(q), a


def _primitive(p: Sequence) -> list:
    """Scale a rational polynomial to coprime integers, keeping the sign."""
    p = trim(p)
    if not p:
        return []
    den = math.lcm(*(Fraction(x).denominator for x in p))
    ints = [int(Fraction(x) * den) for x in p]
    g = math.gcd(*ints)
    return [x // g for x in ints]


def pgcd(a: Sequence, b: Sequence) -> list:
    a, b = trim(a), trim(b)
    while b:
        _, r = _pdivmod(list(a), list(b))
        a, b = b, _primitive(r)
    return _primitive(a)


def pdiv_exact(a: Sequence, b: Sequence) -> list:
    q, r = _pdivmod(list(a), list(b))
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def reverse(p: Sequence, degree: int) -> list:
    """``t^degree * p(1/t)``."""
    p = list(p) + [0] * max(0, degree + 1 - len(p))
    return trim(p[: degree + 1][::-1])


def expand(num: Sequence, den: Sequence, length: int) -> list[int]:
    """First ``length`` power-series coefficients of num/den (den[0] = ±1 or exact)."""
    out = []
    d0 = den[0]
    for k in range(length):
        s = num[k] if k < len(num) else 0
        for j in range(1, min(k, len(den) - 1) + 1):
            s -= den[j] * out[k - j]
        v = Fraction(s, d0) if not isinstance(s, Fraction) else s / d0
        out.append(int(v) if v.denominator == 1 else v)
    return out


def _fmt_poly(p: Sequence, var: str = "t") -> str:
    if not p:
        return "0"
    parts = []
    for k, c in enumerate(p):
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mono and abs(c) == 1:
            coef = "-" if c < 0 else "+"
            parts.append(f"{coef}{mono}")
        else:
            parts.append(f"{'+' if c > 0 else '-'}{abs(c)}{mono}")
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


# -- rational functions -----------------------------------------------------------


@dataclass(frozen=True)
class RationalFunction:
    """Normalized P/Q: gcd(P, Q) = 1, integer content 1, Q(0) > 0."""

    num: tuple[int, ...]
    den: tuple[int, ...]

    @classmethod
    def make(cls, num: Sequence, den: Sequence) -> "RationalFunction":
        num, den = trim(num), trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not den or den[0] == 0:
            raise ValueError("denominator must not vanish at t = 0")
        if not num:
            return cls((), (1,))
        g = pgcd(num, den)
        if len(g) > 1:
            num, den = pdiv_exact(num, g), pdiv_exact(den, g)
        num = [Fraction(x) for x in num]
        den = [Fraction(x) for x in den]
        scale = math.lcm(*(x.denominator for x in num + den))
        ni = [int(x * scale) for x in num]
        di = [int(x * scale) for x in den]
        c = math.gcd(*(ni + di))
        if di[0] < 0:
            c = -c
        return cls(tuple(x // c for x in ni), tuple(x // c for x in di))

    @property
    def deg_num(self) -> int:
        return len(self.num) - 1

    @property
    def deg_den(self) -> int:
        return len(self.den) - 1

    def series(self, length: int) -> list:
        return expand(list(self.num), list(self.den), length)

    def __str__(self) -> str:
        if self.den == (1,):
            return _fmt_poly(self.num)
        return f"({_fmt_poly(self.num)})/({_fmt_poly(self.den)})"

    def as_dict(self) -> dict:
        return {"num": list(self.num), "den": list(self.den)}


def _solve(rows: list[list[Fraction]], rhs: list[Fraction], n: int) -> list[Fraction] | None:
    """One exact solution of rows·x = rhs (free variables zero), or None."""
    rows = [list(r) + [b] for r, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for col in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    if any(row[n] != 0 for row in rows[r:]):
        return None
    x = [Fraction(0)] * n
    for i, col in enumerate(piv_cols):
        x[col] = rows[i][n]
    return x


def _fit(window: Sequence[int], p: int, q: int) -> tuple[list, list] | None:
    """Padé fit of exact type (<=p, <=q) to ``window`` with Q(0) = 1."""
    W = len(window)
    c = [Fraction(v) for v in window]
    # coefficient k of Q*c for k in p+1..W-1 must vanish; unknowns q_1..q_q
    rows, rhs = [], []
    for k in range(p + 1, W):
        rows.append([c[k - j] if k - j >= 0 else Fraction(0) for j in range(1, q + 1)])
        rhs.append(-c[k])
    sol = _solve(rows, rhs, q) if q else ([] if all(v == 0 for v in rhs) else None)
    if sol is None:
        return None
    Q = [Fraction(1)] + sol
    P = [sum((Q[j] * c[k - j] for j in range(min(k, q) + 1)), Fraction(0)) for k in range(min(p + 1, W))]
    return P, Q


def default_dmax(L: int) -> int:
    """Half the highest index, lowered by one when needed to leave L >= 2*dmax + 1."""
    return max((L - 1) // 2, 0)


def pade_reconstruct(seq: Sequence[int], dmax: int | None = None, denominator: Sequence[int] | None = None) -> RationalFunction:
    """Least-degree P/Q with deg Q <= dmax fitting ``seq[:L-dmax+1]``.

    The remaining ``dmax`` coefficients are withheld and must be reproduced
    exactly by the re-expansion.  With ``denominator`` given, only the
    numerator is fitted (deg P <= L-dmax) and the tail check still applies.
    """
    seq = [int(v) for v in seq]
    L = len(seq) - 1
    if dmax is None:
        dmax = default_dmax(L)
    if dmax < 0 or L < 2 * dmax + 1:
        raise ReconstructionError(f"need at least {2 * dmax + 2} coefficients for dmax={dmax}, got {L + 1}")
    W = L - dmax + 1
    window = seq[:W]
    fit = None
    if denominator is not None:
        Q = [Fraction(v) for v in denominator]
        prod = pmul(Q, [Fraction(v) for v in window])
        fit = (trim((prod + [0] * W)[:W]), Q)
    else:
        for n in range(W):
            for q in range(min(dmax, n) + 1):
                fit = _fit(window, n - q, q)
                if fit is not None:
                    break
            if fit is not None:
                break
    if fit is None:
        raise ReconstructionError(f"no rational fit with denominator degree <= {dmax} in {W} coefficients")
    r = RationalFunction.make(*fit)
    got = r.series(L + 1)
    for i in range(L + 1):
        if got[i] != seq[i]:
            where = "window" if i < W else "withheld tail"
            raise ReconstructionError(f"predictive check failed at index {i} ({where}): expected {seq[i]}, got {got[i]}", i)
    return r


def reconstruct(seq: Sequence[int], dmax: int | None = None, denominator=None) -> tuple[RationalFunction, int]:
    """Try ``dmax`` from the default downwards; return the fit and the dmax used."""
    L = len(seq) - 1
    top = default_dmax(L) if dmax is None else dmax
    last = None
    # dmax = 0 would withhold nothing; keep at least one predicted coefficient
    for d in range(top, 0, -1):
        try:
            return pade_reconstruct(seq, d, denominator), d
        except ReconstructionError as exc:
            last = exc
    raise last or ReconstructionError("empty sequence")


# -- verdicts ------------------------------------------------------------------------


@dataclass(frozen=True)
class ReciprocityVerdict:
    holds: bool
    function: RationalFunction | None
    sign: int | None
    shift: int | None
    fit_window: int | None = None
    validated_to: int | None = None
    witness: str | None = None
    weights: tuple[int, ...] | None = None

    def as_dict(self) -> dict:
        return {
            "weights": list(self.weights) if self.weights is not None else None,
            "rational": self.function.as_dict() if self.function else None,
            "reciprocal": self.holds,
            "sign": self.sign,
            "shift": self.shift,
            "fit_window": self.fit_window,
            "validated_to": self.validated_to,
            "witness": self.witness,
        }


def _low(p: Sequence) -> int:
    return next(i for i, v in enumerate(p) if v)


def inversion_relation(r: RationalFunction) -> tuple[int, int] | None:
    """(sign, s) with r(1/t) = sign * t^s * r(t), or None when no such relation."""
    P, Q = list(r.num), list(r.den)
    if not P:
        return (1, 0)
    p, q = len(P) - 1, len(Q) - 1
    # r(1/t) = t^(q-p) rev(P)/rev(Q); compare t^(q-p) rev(P) Q with P rev(Q)
    lhs = pmul(reverse(P, p), Q)
    rhs = pmul(P, reverse(Q, q))
    ratio = Fraction(lhs[_low(lhs)], rhs[_low(rhs)])
    if abs(ratio) != 1:
        return None
    sign = int(ratio)
    s = (q - p) + _low(lhs) - _low(rhs)
    shift_l = _low(lhs)
    shift_r = _low(rhs)
    if trim(lhs[shift_l:]) != pscale(rhs[shift_r:], sign):
        return None
    return sign, s


def check_reciprocity(r: RationalFunction, **info) -> ReciprocityVerdict:
    rel = inversion_relation(r)
    if rel is None:
        return ReciprocityVerdict(False, r, None, None, witness="r(1/t) is not a signed monomial multiple of r(t)", **info)
    sign, s = rel
    holds = sign == 1 and s == 0
    witness = None if holds else f"r(1/t) = {'+' if sign > 0 else '-'}t^{s} r(t)"
    return ReciprocityVerdict(holds, r, sign, s, witness=witness, **info)


def reciprocity_from_sequence(seq: Sequence[int], dmax: int | None = None, weights=None) -> ReciprocityVerdict:
    L = len(seq) - 1
    try:
        r, d = reconstruct(seq, dmax)
    except ReconstructionError as exc:
        return ReciprocityVerdict(False, None, None, None, witness=f"reconstruction failed: {exc}", validated_to=L,
                                  weights=tuple(weights) if weights else None)
    return check_reciprocity(r, fit_window=L - d + 1, validated_to=L, weights=tuple(weights) if weights else None)


# -- Stanley reciprocity on integer matrices --------------------------------------------------


def is_pointed(phi: Sequence[Sequence[int]], weights: Sequence[int]) -> bool:
    """True iff the only nonnegative kernel point of weight zero is the origin."""
    m = len(weights)
    zero = [j for j in range(m) if weights[j] == 0]
    if not zero:
        return True
    A, b = [], []
    for row in phi:
        A.append(list(row))
        A.append([-v for v in row])
        b += [0, 0]
    for j in range(m):
        r = [0] * m
        r[j] = 1
        A.append(r)
        b.append(0 if weights[j] > 0 else 1)
    c = [1 if weights[j] == 0 else 0 for j in range(m)]
    res = lp.maximize(c, A, b)
    return res.status == "optimal" and res.value == 0


def stanley_points(phi: Sequence[Sequence[int]], degree: int, weights: Sequence[int] | None = None, interior: bool = False) -> list[int]:
    """Graded counts of nonnegative (or strictly positive) integer kernel points."""
    phi = [list(r) for r in phi]
    m = len(phi[0]) if phi else len(weights or ())
    weights = [1] * m if weights is None else list(weights)
    if len(weights) != m:
        raise ValueError(f"expected {m} weights, got {len(weights)}")
    if any(w < 0 for w in weights):
        raise ValueError("weights must be nonnegative")
    if not is_pointed(phi, weights):
        raise UnpointedCone("cone is not pointed for these weights: graded counts are infinite")
    bounds = []
    for j in range(m):
        if weights[j]:
            bounds.append(degree // weights[j])
            continue
        # zero-weight column of a pointed cone: bounded through the weighted slice
        A = [list(r) for r in phi] + [[-v for v in r] for r in phi] + [list(weights)]
        res = lp.maximize([1 if k == j else 0 for k in range(m)], A, [0] * (2 * len(phi)) + [degree])
        bounds.append(math.floor(res.value))
    lo = 1 if interior else 0
    if (sum(weights) if interior else 0) > degree:
        return [0] * (degree + 1)
    order = _column_order(phi, m)
    nrows = len(phi)
    # rows still open after position pos, i.e. with nonzero columns on both sides
    first_pos = {i: min(p for p, j in enumerate(order) if phi[i][j]) for i in range(nrows) if any(phi[i])}
    last_pos = {i: max(p for p, j in enumerate(order) if phi[i][j]) for i in range(nrows) if any(phi[i])}
    open_after = [tuple(i for i in first_pos if first_pos[i] <= pos < last_pos[i]) for pos in range(m)]
    closing = [tuple(i for i in last_pos if last_pos[i] == pos) for pos in range(m)]
    wt = [weights[j] for j in order]
    ub = [bounds[j] for j in order]
    cols = [[row[j] for row in phi] for j in order]
    min_future = [lo * sum(wt[pos:]) for pos in range(m + 1)]
    memo: dict = {}

    def rec(pos: int, acc: dict) -> list[int]:
        """Completion counts by added weight, for row sums ``acc`` before ``pos``."""
        if pos == m:
            return [1]
        key = (pos, tuple(acc.get(i, 0) for i in (open_after[pos - 1] if pos else ())))
        hit = memo.get(key)
        if hit is not None:
            return hit
        col, w = cols[pos], wt[pos]
        res = [0] * (degree + 1)
        v = lo
        while v <= ub[pos] and v * w + min_future[pos + 1] <= degree:
            nxt = dict(acc)
            for i, a in enumerate(col):
                if a:
                    nxt[i] = nxt.get(i, 0) + a * v
            if all(nxt.get(i, 0) == 0 for i in closing[pos]):
                keep = {i: nxt.get(i, 0) for i in open_after[pos]}
                sub = rec(pos + 1, keep)
                base = v * w
                for d, c in enumerate(sub):
                    if c and base + d <= degree:
                        res[base + d] += c
            v += 1
        memo[key] = res
        return res

    return rec(0, {})


def _column_order(phi, m):
    remaining = set(range(m))
    order = []
    open_rows: set[int] = set()
    while remaining:
        def cost(j):
            rows = {i for i, row in enumerate(phi) if row[j]}
            new = len(rows - open_rows)
            closing = sum(
                1 for i in rows | open_rows if all(not phi[i][k] for k in remaining - {j})
            )
            return (-closing, new, j)

        j = min(remaining, key=cost)
        remaining.discard(j)
        order.append(j)
        open_rows |= {i for i, row in enumerate(phi) if row[j]}
        open_rows = {i for i in open_rows if any(phi[i][k] for k in remaining)}
    return order


def check_stanley(k_seq: Sequence[int], k_int_seq: Sequence[int], m: int, rank: int, dmax: int | None = None) -> ReciprocityVerdict:
    """Verify k(1/t) = (-1)^(m-rank) k°(t) on reconstructed rational functions."""
    if not any(k_int_seq):
        raise ValueError("interior series vanishes on the computed range: the hypothesis k° != 0 is not met")
    L = len(k_seq) - 1
    k, d = reconstruct(k_seq, dmax)
    try:
        # same cone, same denominators: fit only the interior numerator first
        ki, _ = reconstruct(k_int_seq, dmax, denominator=list(k.den))
    except ReconstructionError:
        ki, _ = reconstruct(k_int_seq, dmax)
    expected = (-1) ** (m - rank)
    P, Q = list(k.num), list(k.den)
    p, q = len(P) - 1, len(Q) - 1
    # k(1/t) = t^(q-p) rev(P)/rev(Q); cross-multiply with ki = P'/Q'
    lhs = pmul(pshift(reverse(P, p), max(q - p, 0)), list(ki.den))
    rhs = pmul(pshift(pscale(list(ki.num), expected), max(p - q, 0)), reverse(Q, q))
    holds = trim(lhs) == trim(rhs)
    witness = None if holds else "k(1/t) differs from the signed interior series"
    return ReciprocityVerdict(holds, k, expected, None, fit_window=L - d + 1, validated_to=L, witness=witness)
