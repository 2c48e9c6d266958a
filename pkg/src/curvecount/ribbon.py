"""Ribbon graphs: a disk with orientable handles, counted through the handles.

The cocores of the handles form a counting curve.  Cutting along them leaves
one polygon whose sides read the handle ends in rotation order, the first end
of each handle with ``+`` and the second with ``-``.  A ribbon graph with at
least two handles becomes a cell decomposition (one ``2h``-gon) and is refined
like any other.  The single-handle ribbon graph is the annulus, which has no
ideal triangulation; it is handled directly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .series import SparseSeries, compute_f, compute_g, specialize
from .surface import CellDecomposition, SurfaceError, Triangulation, _load_document, refine


@dataclass(frozen=True)
class RibbonGraph:
    name: str
    rotation: tuple[str, ...]

    def __post_init__(self):
        seen: dict[str, int] = {}
        for h in self.rotation:
            seen[h] = seen.get(h, 0) + 1
        bad = sorted(h for h, k in seen.items() if k != 2)
        if bad:
            raise SurfaceError(f"handle {bad[0]!r} must appear exactly twice in the rotation")
        if not self.rotation:
            raise SurfaceError("ribbon graph needs at least one handle")

    @property
    def handles(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(self.rotation))

    @property
    def is_annulus(self) -> bool:
        return len(self.handles) == 1

    def polygon(self) -> list[tuple[str, int]]:
        seen = set()
        out = []
        for h in self.rotation:
            out.append((h, -1 if h in seen else 1))
            seen.add(h)
        return out

    def triangulation(self) -> Triangulation:
        if self.is_annulus:
            raise SurfaceError("the annulus has no ideal triangulation")
        return refine(CellDecomposition(self.name, (tuple(self.polygon()),)), self.handles)

    def dumps(self) -> str:
        return json.dumps({"name": self.name, "ribbon": list(self.rotation)}, indent=2)


def parse_ribbon(text: str | dict) -> RibbonGraph:
    doc = _load_document(text)
    rot = doc.get("ribbon")
    if not isinstance(rot, list) or not all(isinstance(h, str) for h in rot):
        raise SurfaceError("'ribbon' must be a list of handle names")
    return RibbonGraph(str(doc.get("name", "")), tuple(rot))


def is_ribbon_document(text: str | dict) -> bool:
    return "ribbon" in _load_document(text)


def ribbon_series(r: RibbonGraph, degree: int, essential: bool = True) -> SparseSeries:
    """Counting series over the handle cocores.

    On the annulus every multicurve is a multiple of the core, which is
    isotopic to both boundary circles: g = 1/(1 - x) and f = 1.
    """
    if r.is_annulus:
        terms = {(0,): 1} if essential else {(k,): 1 for k in range(degree + 1)}
        return SparseSeries(r.handles, terms, degree)
    t = r.triangulation()
    return compute_f(t, degree) if essential else compute_g(t, degree)


def handle_counts(r: RibbonGraph, degree: int) -> list[int]:
    """Coefficients c(0..degree) of Z(t): essential multicurves by handle passes."""
    s = ribbon_series(r, degree)
    return specialize(s, [1] * len(s.variables))
