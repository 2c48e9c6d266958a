"""Matching matrix, normal-coordinate conversions and cone bounds.

Edge weights are tuples indexed like ``Triangulation.edge_names``; corner
vectors are tuples indexed by corner id ``3t+k`` (the corner between
half-edges ``k`` and ``k+1`` of triangle ``t``).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import lp
from .surface import Triangulation


class WeightError(ValueError):
    """Edge weights violating parity or the triangle inequalities."""


@dataclass(frozen=True)
class MatchingMatrix:
    rows: tuple[tuple[int, ...], ...]
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.col_labels)

    def apply(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * v for a, v in zip(row, x)) for row in self.rows)

    def to_json(self) -> str:
        return json.dumps(
            {"rows": [list(r) for r in self.rows], "row_labels": list(self.row_labels), "col_labels": list(self.col_labels)}
        )

    @classmethod
    def from_json(cls, text: str | dict) -> "MatchingMatrix":
        doc = json.loads(text) if isinstance(text, str) else text
        rows = tuple(tuple(int(v) for v in r) for r in doc["rows"])
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise ValueError("matrix rows have different lengths")
        row_labels = tuple(doc.get("row_labels") or (f"r{i}" for i in range(len(rows))))
        col_labels = tuple(doc.get("col_labels") or (f"c{j}" for j in range(width)))
        return cls(rows, row_labels, col_labels)


@dataclass(frozen=True)
class PeripheralVector:
    puncture: int
    corners: tuple[int, ...]
    weights: tuple[int, ...]
    alpha: tuple[int, ...]


def corner_label(t: Triangulation, c: int) -> str:
    tri, k = divmod(c, 3)
    a = t.edge_names[t.edge_of[c]]
    b = t.edge_names[t.edge_of[3 * tri + (k + 1) % 3]]
    return f"T{tri}:{a}|{b}"


def corners_at(h: int) -> tuple[int, int]:
    """The two corners touching half-edge ``h`` (before it, after it)."""
    tri, k = divmod(h, 3)
    return 3 * tri + (k - 1) % 3, h


def build_matrix(t: Triangulation) -> MatchingMatrix:
    width = t.num_half_edges
    rows = []
    for first, second in t.halves:
        row = [0] * width
        for c in corners_at(first):
            row[c] += 1
        for c in corners_at(second):
            row[c] -= 1
        rows.append(tuple(row))
    return MatchingMatrix(tuple(rows), t.edge_names, tuple(corner_label(t, c) for c in range(width)))


def rank(m: MatchingMatrix | Sequence[Sequence[int]]) -> int:
    """Exact rank by fraction-free (Bareiss) elimination."""
    rows = [list(r) for r in (m.rows if isinstance(m, MatchingMatrix) else m)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        for i in range(r + 1, len(rows)):
            a = rows[i][col]
            rows[i] = [(p * rows[i][j] - a * rows[r][j]) // prev for j in range(ncols)]
        prev = p
        r += 1
        if r == len(rows):
            break
    return r


def check_weights(t: Triangulation, w: Sequence[int]) -> None:
    if len(w) != t.num_edges:
        raise WeightError(f"expected {t.num_edges} edge weights, got {len(w)}")
    if any(v < 0 for v in w):
        raise WeightError("edge weights must be nonnegative")
    for tri, slots in enumerate(t.triangles):
        a, b, c = (w[e] for e, _ in slots)
        if (a + b + c) % 2:
            raise WeightError(f"parity violation in triangle T{tri} (weights {a},{b},{c})")
        if a > b + c or b > a + c or c > a + b:
            raise WeightError(f"triangle inequality violated in triangle T{tri} (weights {a},{b},{c})")


def weights_to_corners(t: Triangulation, w: Sequence[int]) -> tuple[int, ...]:
    check_weights(t, w)
    out = []
    for slots in t.triangles:
        ws = [w[e] for e, _ in slots]
        for k in range(3):
            out.append((ws[k] + ws[(k + 1) % 3] - ws[(k + 2) % 3]) // 2)
    return tuple(out)


def corners_to_weights(t: Triangulation, x: Sequence[int]) -> tuple[int, ...]:
    if len(x) != t.num_half_edges:
        raise ValueError(f"expected {t.num_half_edges} corner values, got {len(x)}")
    w = []
    for e, (first, second) in enumerate(t.halves):
        a = sum(x[c] for c in corners_at(first))
        b = sum(x[c] for c in corners_at(second))
        if a != b:
            raise ValueError(f"corner vector violates the matching equation of edge {t.edge_names[e]!r}")
        w.append(a)
    return tuple(w)


def peripheral_vectors(t: Triangulation) -> list[PeripheralVector]:
    out = []
    for i, link in enumerate(t.links):
        d = [0] * t.num_half_edges
        for c in link:
            d[c] += 1
        w = corners_to_weights(t, d)
        out.append(PeripheralVector(i, tuple(d), w, tuple(w[e] for e in t.marked)))
    return out


def _cone_rows(t: Triangulation) -> list[list[int]]:
    rows = []
    for slots in t.triangles:
        idx = [e for e, _ in slots]
        for k in range(3):
            row = [0] * t.num_edges
            row[idx[k]] += 1
            row[idx[(k + 1) % 3]] -= 1
            row[idx[(k + 2) % 3]] -= 1
            if any(row) and any(v > 0 for v in row):
                rows.append(row)
    return rows


def lp_max(
    t: Triangulation,
    objective: int | str | Sequence[int],
    *,
    degree_bound: int | None = None,
    zero_marked: bool = False,
    box: int | None = None,
) -> Fraction | None:
    """Maximize an edge weight (or a linear form) over the real weight cone.

    Returns the exact optimum, or ``None`` when the program is unbounded.
    """
    E = t.num_edges
    if isinstance(objective, str):
        objective = t.edge_index(objective)
    if isinstance(objective, int):
        c = [0] * E
        c[objective] = 1
    else:
        c = list(objective)
    A = _cone_rows(t)
    b = [0] * len(A)
    if degree_bound is not None:
        row = [0] * E
        for e in t.marked:
            row[e] = 1
        A.append(row)
        b.append(degree_bound)
    if zero_marked:
        for e in t.marked:
            row = [0] * E
            row[e] = 1
            A.append(row)
            b.append(0)
    if box is not None:
        for e in range(E):
            row = [0] * E
            row[e] = 1
            A.append(row)
            b.append(box)
    res = lp.maximize(c, A, b)
    return None if res.status == "unbounded" else res.value


def is_counting_curve(t: Triangulation) -> bool:
    """True iff no nonzero weight vector in the cone avoids every marked edge."""
    value = lp_max(t, [1] * t.num_edges, zero_marked=True, box=1)
    return value == 0


def edge_bounds(t: Triangulation, degree: int) -> tuple[int, ...]:
    """Integer upper bound for each edge weight given marked degree <= degree."""
    out = []
    for e in range(t.num_edges):
        if e in t.marked:
            out.append(degree)
            continue
        v = lp_max(t, e, degree_bound=degree)
        if v is None:
            raise ValueError(f"edge {t.edge_names[e]!r} is unbounded: not a counting curve")
        out.append(math.floor(v))
    return tuple(out)
