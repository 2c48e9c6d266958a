"""Multicurve enumeration, strand tracing and cyclic words."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .cone import check_weights, edge_bounds, is_counting_curve, peripheral_vectors, weights_to_corners
from .surface import Triangulation

Symbol = tuple[str, int]


class NotCountingCurve(ValueError):
    pass


# -- cyclic words -------------------------------------------------------------


def _cancel_linear(word: Sequence[Symbol]) -> list[Symbol]:
    out: list[Symbol] = []
    for s in word:
        if out and out[-1][0] == s[0] and out[-1][1] == -s[1]:
            out.pop()
        else:
            out.append(s)
    return out


def is_cyclically_reduced(word: Sequence[Symbol]) -> bool:
    n = len(word)
    return all(not (word[i][0] == word[(i + 1) % n][0] and word[i][1] == -word[(i + 1) % n][1]) for i in range(n))


def invert(word: Sequence[Symbol]) -> tuple[Symbol, ...]:
    return tuple((g, -s) for g, s in reversed(word))


def reduce_cyclic(word: Sequence[Symbol]) -> tuple[Symbol, ...]:
    """Cyclically reduce and return the canonical representative.

    The canonical form is the least rotation of the reduced word or of its
    inverse, comparing symbols by generator name and then ``X`` before ``X^-1``.
    """
    w = _cancel_linear(word)
    i, j = 0, len(w) - 1
    while i < j and w[i][0] == w[j][0] and w[i][1] == -w[j][1]:
        i += 1
        j -= 1
    w = w[i : j + 1]
    if not w:
        return ()
    candidates = []
    for v in (tuple(w), invert(w)):
        candidates.extend(v[k:] + v[:k] for k in range(len(v)))
    return min(candidates, key=lambda v: [(g, s < 0) for g, s in v])


# -- tracing ------------------------------------------------------------------


@dataclass(frozen=True)
class TracedComponent:
    crossings: tuple[Symbol, ...]
    weights: tuple[int, ...]
    puncture: int | None = None

    @property
    def peripheral(self) -> bool:
        return self.puncture is not None

    def word(self) -> tuple[Symbol, ...]:
        return reduce_cyclic(self.crossings)

    def as_dict(self) -> dict:
        return {
            "crossings": [f"{g}{'' if s > 0 else '^-1'}" for g, s in self.crossings],
            "word": [f"{g}{'' if s > 0 else '^-1'}" for g, s in self.word()],
            "weights": list(self.weights),
            "peripheral": self.peripheral,
            "puncture": self.puncture,
        }


def _strands(t: Triangulation, w: Sequence[int]) -> Iterator[tuple[list[tuple[int, int]], list[int]]]:
    """Yield each closed strand as its list of (half-edge, position) entries."""
    x = weights_to_corners(t, w)
    pair, eof = t.pairing, t.edge_of
    first = [t.halves[e][0] for e in range(t.num_edges)]
    seen = [[False] * w[e] for e in range(t.num_edges)]

    def node(h, p):
        e = eof[h]
        return e, p if h == first[e] else w[e] - 1 - p

    for e0 in range(t.num_edges):
        for q0 in range(w[e0]):
            if seen[e0][q0]:
                continue
            # enter the triangle of the first half-edge at position q0
            h, p = first[e0], q0
            path = []
            while True:
                e, q = node(h, p)
                if seen[e][q]:
                    break
                seen[e][q] = True
                path.append((h, p))
                tri, k = divmod(h, 3)
                W = w[eof[h]]
                prev = 3 * tri + (k - 1) % 3
                if p < x[prev]:
                    h2 = prev
                    p2 = w[eof[h2]] - 1 - p
                else:
                    j = W - 1 - p
                    h2 = 3 * tri + (k + 1) % 3
                    p2 = j
                h, p = pair[h2], w[eof[h2]] - 1 - p2
            yield path


def trace_components(t: Triangulation, w: Sequence[int], classify: bool = True) -> list[TracedComponent]:
    check_weights(t, w)
    deltas = {p.weights: p.puncture for p in peripheral_vectors(t)} if classify else {}
    out = []
    for path in _strands(t, w):
        counts = [0] * t.num_edges
        crossings = []
        for h, _ in path:
            e = t.edge_of[h]
            counts[e] += 1
            crossings.append((t.edge_names[e], -t.sign_of[h]))
        wt = tuple(counts)
        out.append(TracedComponent(tuple(crossings), wt, deltas.get(wt)))
    return out


def classify_peripheral(t: Triangulation, comp: TracedComponent) -> int | None:
    for p in peripheral_vectors(t):
        if p.weights == comp.weights:
            return p.puncture
    return None


def is_essential(t: Triangulation, w: Sequence[int]) -> bool:
    return not any(c.peripheral for c in trace_components(t, w))


# -- enumeration --------------------------------------------------------------


def _edge_order(t: Triangulation) -> list[int]:
    order = list(t.marked)
    placed = set(order)
    rest = list(t.unmarked)
    while rest:
        # prefer the edge whose triangles are most determined already
        def score(e):
            best = 0
            for h in t.halves[e]:
                tri = h // 3
                known = sum(1 for k in range(3) if t.edge_of[3 * tri + k] in placed or t.edge_of[3 * tri + k] == e)
                best = max(best, known)
            return -best

        rest.sort(key=lambda e: (score(e), e))
        e = rest.pop(0)
        order.append(e)
        placed.add(e)
    return order


def _plan(t: Triangulation, order: list[int]):
    pos = {e: i for i, e in enumerate(order)}
    steps = []
    for i, e in enumerate(order):
        checks = []
        for tri, slots in enumerate(t.triangles):
            es = [s for s, _ in slots]
            if e in es and max(pos[s] for s in es) == i:
                checks.append(tuple(es))
        steps.append(checks)
    return steps


def iter_multicurves(t: Triangulation, degree: int) -> Iterator[tuple[int, ...]]:
    """All valid edge-weight vectors with marked degree <= ``degree`` (unordered)."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if not is_counting_curve(t):
        raise NotCountingCurve(f"{t.name}: marked edges do not form a counting curve")
    order = _edge_order(t)
    steps = _plan(t, order)
    ub = edge_bounds(t, degree)
    marked = set(t.marked)
    E = t.num_edges
    w = [0] * E

    def candidates(i, budget):
        e = order[i]
        lo, hi = 0, ub[e]
        if e in marked:
            hi = min(hi, budget)
        step = 1
        parity = None
        for es in steps[i]:
            others = [s for s in es if s != e]
            if len(others) == 2:
                a, b = w[others[0]], w[others[1]]
                lo = max(lo, abs(a - b))
                hi = min(hi, a + b)
                par = (a + b) % 2
            else:
                # two slots on e, one on the other edge d: d even, 2e >= d
                d = w[others[0]]
                if d % 2:
                    return range(0)
                lo = max(lo, d // 2)
                par = None
            if par is not None:
                if parity is None:
                    parity = par
                elif parity != par:
                    return range(0)
        if parity is not None:
            if lo % 2 != parity:
                lo += 1
            step = 2
        return range(lo, hi + 1, step)

    def rec(i, budget):
        if i == E:
            yield tuple(w)
            return
        e = order[i]
        is_marked = e in marked
        for v in candidates(i, budget):
            w[e] = v
            yield from rec(i + 1, budget - v if is_marked else budget)
        w[e] = 0

    yield from rec(0, degree)


def enumerate_multicurves(t: Triangulation, degree: int) -> list[tuple[int, ...]]:
    return sorted(iter_multicurves(t, degree))
