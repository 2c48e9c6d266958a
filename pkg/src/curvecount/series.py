"""Truncated multivariate counting series over the marked edges."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .cone import PeripheralVector, peripheral_vectors
from .enumeration import NotCountingCurve, is_essential, iter_multicurves
from .surface import Triangulation, unmarked_dual_is_forest

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class SparseSeries:
    variables: tuple[str, ...]
    terms: dict[Exponent, int] = field(hash=False)
    truncation: int

    def __post_init__(self):
        clean = {a: c for a, c in self.terms.items() if c and sum(a) <= self.truncation}
        object.__setattr__(self, "terms", clean)

    def __getitem__(self, alpha: Exponent) -> int:
        return self.terms.get(tuple(alpha), 0)

    def __eq__(self, other):
        if not isinstance(other, SparseSeries):
            return NotImplemented
        return (self.variables, self.truncation, self.terms) == (other.variables, other.truncation, other.terms)

    def truncate(self, degree: int) -> "SparseSeries":
        return SparseSeries(self.variables, self.terms, min(degree, self.truncation))

    def mul_binomial(self, alpha: Exponent, sign: int = -1) -> "SparseSeries":
        """Multiply by ``1 + sign * x^alpha``."""
        out = Counter(self.terms)
        for a, c in self.terms.items():
            b = tuple(i + j for i, j in zip(a, alpha))
            if sum(b) <= self.truncation:
                out[b] += sign * c
        return SparseSeries(self.variables, dict(out), self.truncation)

    def div_binomial(self, alpha: Exponent) -> "SparseSeries":
        """Multiply by ``1/(1 - x^alpha)`` expanded geometrically."""
        if not any(alpha):
            raise ValueError("cannot invert 1 - x^0")
        out = dict(self.terms)
        # ascending total degree so each shifted term is final before use
        for a in sorted(_all_exponents(len(self.variables), self.truncation), key=sum):
            c = out.get(a, 0)
            if not c:
                continue
            b = tuple(i + j for i, j in zip(a, alpha))
            if sum(b) <= self.truncation:
                out[b] = out.get(b, 0) + c
        return SparseSeries(self.variables, out, self.truncation)

    def to_dict(self) -> dict:
        return {
            "variables": list(self.variables),
            "truncation": self.truncation,
            "terms": [{"alpha": list(a), "coeff": str(c)} for a, c in sorted(self.terms.items())],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, doc: dict) -> "SparseSeries":
        terms = {tuple(t["alpha"]): int(t["coeff"]) for t in doc["terms"]}
        return cls(tuple(doc["variables"]), terms, int(doc["truncation"]))


def _all_exponents(m: int, degree: int) -> Iterator[Exponent]:
    if m == 0:
        yield ()
        return
    for a in range(degree + 1):
        for rest in _all_exponents(m - 1, degree - a):
            yield (a,) + rest


# -- counting g through the unmarked dual forest -------------------------------


class _Forest:
    """Triangles joined by unmarked edges; a forest exactly for counting curves."""

    def __init__(self, t: Triangulation):
        self.t = t
        adj: list[list[tuple[int, int]]] = [[] for _ in t.triangles]
        for e in t.unmarked:
            a, b = (h // 3 for h in t.halves[e])
            adj[a].append((e, b))
            adj[b].append((e, a))
        self.slot_of = {e: i for i, e in enumerate(t.marked)}
        self.trees = []
        seen = set()
        for root in range(t.num_triangles):
            if root in seen:
                continue
            order, parent = [], {root: None}
            todo = [root]
            seen.add(root)
            while todo:
                tri = todo.pop()
                order.append(tri)
                for e, u in adj[tri]:
                    if u not in seen:
                        seen.add(u)
                        parent[u] = e
                        todo.append(u)
            self.trees.append((order, parent))

    def count(self, alpha: Exponent) -> int:
        total = 1
        for order, parent in self.trees:
            total *= self._count_tree(order, parent, alpha)
            if not total:
                return 0
        return total

    def _count_tree(self, order, parent, alpha) -> int:
        t = self.t
        marked_sum = 0
        for tri in order:
            for e, _ in t.triangles[tri]:
                if e in self.slot_of:
                    marked_sum += alpha[self.slot_of[e]]
        bound = marked_sum // 2
        msgs: dict[int, list[int]] = {}  # unmarked edge -> counts by its weight
        for tri in reversed(order):
            pe = parent[tri]
            known, kids = [], []
            for e, _ in t.triangles[tri]:
                if e in self.slot_of:
                    known.append(alpha[self.slot_of[e]])
                elif e == pe:
                    continue
                else:
                    kids.append(msgs.pop(e))
            if pe is None:
                return _close(known, kids, bound)
            msgs[pe] = [_close(known + [v], kids, bound) for v in range(bound + 1)]
        raise AssertionError("unreachable")


def _ok(a: int, b: int, c: int) -> bool:
    return (a + b + c) % 2 == 0 and a <= b + c and b <= a + c and c <= a + b


def _close(known: list[int], kids: list[list[int]], bound: int) -> int:
    """Weighted count of child values completing one triangle."""
    if not kids:
        return 1 if _ok(*known) else 0
    if len(kids) == 1:
        a, b = known
        m = kids[0]
        lo, hi = abs(a - b), min(a + b, bound)
        return sum(m[u] for u in range(lo, hi + 1, 2))
    if len(kids) == 2:
        (a,) = known
        m1, m2 = kids
        total = 0
        for u in range(bound + 1):
            if m1[u]:
                lo, hi = abs(a - u), min(a + u, bound)
                total += m1[u] * sum(m2[v] for v in range(lo, hi + 1, 2))
        return total
    m1, m2, m3 = kids
    total = 0
    for u in range(bound + 1):
        if not m1[u]:
            continue
        for v in range(bound + 1):
            if m2[v]:
                lo, hi = abs(u - v), min(u + v, bound)
                total += m1[u] * m2[v] * sum(m3[s] for s in range(lo, hi + 1, 2))
    return total


def compute_g(t: Triangulation, degree: int, method: str = "forest") -> SparseSeries:
    """Counts G_alpha of all multicurves by marked restriction, through ``degree``.

    ``method="forest"`` counts completions of the marked weights over the
    unmarked dual forest; ``method="enumerate"`` tallies the explicit
    enumeration.  Both give the same series.
    """
    names = t.marked_names
    if method == "enumerate":
        counts = Counter(tuple(w[e] for e in t.marked) for w in iter_multicurves(t, degree))
        return SparseSeries(names, dict(counts), degree)
    if method != "forest":
        raise ValueError(f"unknown method {method!r}")
    if not unmarked_dual_is_forest(t):
        raise NotCountingCurve(f"{t.name}: marked edges do not form a counting curve")
    forest = _Forest(t)
    terms = {}
    for alpha in _all_exponents(len(names), degree):
        c = forest.count(alpha)
        if c:
            terms[alpha] = c
    return SparseSeries(names, terms, degree)


def compute_f_direct(t: Triangulation, degree: int) -> SparseSeries:
    counts = Counter(tuple(w[e] for e in t.marked) for w in iter_multicurves(t, degree) if is_essential(t, w))
    return SparseSeries(t.marked_names, dict(counts), degree)


def compute_f_division(g: SparseSeries, deltas: Sequence[PeripheralVector], degree: int | None = None) -> SparseSeries:
    degree = g.truncation if degree is None else degree
    if degree > g.truncation:
        raise ValueError(f"g is truncated at {g.truncation} < {degree}")
    f = g.truncate(degree)
    for d in deltas:
        if not any(d.alpha):
            raise ValueError(f"peripheral vector of puncture {d.puncture} has zero marked degree")
        f = f.mul_binomial(d.alpha, -1)
    return f


def compute_f(t: Triangulation, degree: int) -> SparseSeries:
    """Essential counts via the division identity (fast path)."""
    return compute_f_division(compute_g(t, degree), peripheral_vectors(t), degree)


def reliable_horizon(degree: int, weights: Sequence[int]) -> int:
    return degree * min(weights)


def specialize(s: SparseSeries, weights: Sequence[int]) -> list[int]:
    """Coefficients of ``sum_alpha c_alpha t^<weights, alpha>`` through the reliable horizon."""
    if len(weights) != len(s.variables):
        raise ValueError(f"expected {len(s.variables)} weights, got {len(weights)}")
    if any(w <= 0 for w in weights):
        raise ValueError("specialization weights must be positive")
    horizon = reliable_horizon(s.truncation, weights)
    out = [0] * (horizon + 1)
    for a, c in s.terms.items():
        k = sum(w * x for w, x in zip(weights, a))
        if k <= horizon:
            out[k] += c
    return out
