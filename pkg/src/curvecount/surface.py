"""Ideally triangulated punctured surfaces with a marked counting curve.

A surface is stored as a half-edge map.  Triangle ``t`` owns half-edges
``3t, 3t+1, 3t+2`` listed in counterclockwise boundary order; half-edge ``h``
lies on edge ``edge_of[h]`` and runs along (``+1``) or against (``-1``) the
edge's reference direction.  Corner ``3t+k`` is the corner of triangle ``t``
between half-edges ``3t+k`` and ``3t+(k+1)%3``; it sits at the vertex where
half-edge ``3t+k`` ends.  Vertices are punctures.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class SurfaceError(ValueError):
    """Raised for malformed surface documents."""


def _parse_dir_edge(token) -> tuple[str, int]:
    if not isinstance(token, str) or len(token) < 2 or token[-1] not in "+-":
        raise SurfaceError(f"bad directed edge {token!r}: expected a name suffixed by '+' or '-'")
    return token[:-1], 1 if token[-1] == "+" else -1


def _check_edge_uses(cells: Sequence[Sequence[tuple[str, int]]]) -> list[str]:
    uses: dict[str, list[int]] = {}
    for cell in cells:
        for name, sign in cell:
            uses.setdefault(name, []).append(sign)
    for name, signs in uses.items():
        if len(signs) == 1:
            raise SurfaceError(f"edge used once: {name!r}")
        if len(signs) != 2:
            raise SurfaceError(f"edge {name!r} used {len(signs)} times (expected 2)")
        if signs[0] == signs[1]:
            raise SurfaceError(f"edge {name!r} used twice with the same direction")
    return list(uses)


def _load_document(text: str | dict) -> dict:
    if isinstance(text, dict):
        return text
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SurfaceError(f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise SurfaceError("surface document must be a JSON object")
    return doc


def _read_cells(doc: dict, min_sides: int, max_sides: int | None) -> list[list[tuple[str, int]]]:
    raw = doc.get("triangles")
    if not isinstance(raw, list):
        raise SurfaceError("missing 'triangles' list")
    cells = []
    for i, cell in enumerate(raw):
        if not isinstance(cell, list):
            raise SurfaceError(f"cell {i} is not a list")
        if len(cell) < min_sides or (max_sides is not None and len(cell) > max_sides):
            if max_sides == 3:
                raise SurfaceError(f"cell {i} has {len(cell)} sides; a triangle needs exactly 3")
            raise SurfaceError(f"cell {i} has {len(cell)} sides; cells need at least {min_sides}")
        cells.append([_parse_dir_edge(tok) for tok in cell])
    return cells


def _read_marked(doc: dict, names: Iterable[str]) -> tuple[str, ...]:
    marked = doc.get("counting_curve")
    if not isinstance(marked, list) or not all(isinstance(m, str) for m in marked):
        raise SurfaceError("'counting_curve' must be a list of edge names")
    if not marked:
        raise SurfaceError("counting curve is empty")
    known = set(names)
    for m in marked:
        if m not in known:
            raise SurfaceError(f"marked edge name unknown: {m!r}")
    if len(set(marked)) != len(marked):
        raise SurfaceError("counting curve lists an edge twice")
    return tuple(marked)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    genus: int | None
    punctures: int
    N: int
    violations: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "genus": self.genus,
            "punctures": self.punctures,
            "N": self.N,
            "violations": list(self.violations),
        }


@dataclass(frozen=True, eq=False)
class Triangulation:
    """Half-edge map of an ideal triangulation.

    ``triangles`` holds ``(edge_index, sign)`` triples; ``edge_names[i]`` is the
    stable name of edge ``i``; ``marked`` lists the counting-curve edges in
    document order.
    """

    name: str
    edge_names: tuple[str, ...]
    triangles: tuple[tuple[tuple[int, int], ...], ...]
    marked: tuple[int, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.edge_names)})

    @classmethod
    def from_cells(cls, name: str, cells, marked_names: Sequence[str]) -> "Triangulation":
        names = _check_edge_uses(cells)
        index = {n: i for i, n in enumerate(names)}
        tris = tuple(tuple((index[n], s) for n, s in cell) for cell in cells)
        for tri in tris:
            if len(tri) != 3:
                raise SurfaceError("every cell of a triangulation must have 3 sides")
        if not marked_names:
            raise SurfaceError("counting curve is empty")
        for m in marked_names:
            if m not in index:
                raise SurfaceError(f"marked edge name unknown: {m!r}")
        return cls(name, tuple(names), tris, tuple(index[m] for m in marked_names))

    # -- basic counts -------------------------------------------------------

    @property
    def num_triangles(self) -> int:
        return len(self.triangles)

    @property
    def num_edges(self) -> int:
        return len(self.edge_names)

    @property
    def num_half_edges(self) -> int:
        return 3 * len(self.triangles)

    @property
    def N(self) -> int:
        return len(self.triangles) // 2

    def edge_index(self, name: str) -> int:
        return self._index[name]

    @property
    def marked_names(self) -> tuple[str, ...]:
        return tuple(self.edge_names[e] for e in self.marked)

    @cached_property
    def unmarked(self) -> tuple[int, ...]:
        ms = set(self.marked)
        return tuple(e for e in range(self.num_edges) if e not in ms)

    # -- half-edge structure ------------------------------------------------

    @cached_property
    def edge_of(self) -> tuple[int, ...]:
        return tuple(e for tri in self.triangles for e, _ in tri)

    @cached_property
    def sign_of(self) -> tuple[int, ...]:
        return tuple(s for tri in self.triangles for _, s in tri)

    @cached_property
    def halves(self) -> tuple[tuple[int, int], ...]:
        """For each edge its two half-edges, smaller identifier first."""
        acc: list[list[int]] = [[] for _ in self.edge_names]
        for h, e in enumerate(self.edge_of):
            acc[e].append(h)
        return tuple(tuple(sorted(a)) for a in acc)

    @cached_property
    def pairing(self) -> tuple[int, ...]:
        pair = [0] * self.num_half_edges
        for a, b in self.halves:
            pair[a], pair[b] = b, a
        return tuple(pair)

    def next_corner(self, c: int) -> int:
        """Next corner around the vertex at the end of half-edge ``c``."""
        h = self.pairing[c]
        t, k = divmod(h, 3)
        return 3 * t + (k - 1) % 3

    @cached_property
    def links(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.num_half_edges
        out = []
        for c0 in range(self.num_half_edges):
            if seen[c0]:
                continue
            orbit = []
            c = c0
            while not seen[c]:
                seen[c] = True
                orbit.append(c)
                c = self.next_corner(c)
            out.append(tuple(orbit))
        return tuple(out)

    @property
    def num_punctures(self) -> int:
        return len(self.links)

    @property
    def euler_characteristic(self) -> int:
        return self.num_punctures - self.num_edges + self.num_triangles

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2

    def is_connected(self) -> bool:
        if not self.triangles:
            return False
        seen = {0}
        todo = [0]
        while todo:
            t = todo.pop()
            for k in range(3):
                u = self.pairing[3 * t + k] // 3
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
        return len(seen) == self.num_triangles

    # -- serialization ------------------------------------------------------

    def to_document(self) -> dict:
        return {
            "name": self.name,
            "triangles": [
                [self.edge_names[e] + ("+" if s > 0 else "-") for e, s in tri] for tri in self.triangles
            ],
            "counting_curve": list(self.marked_names),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_document(), indent=2)

    def with_marked(self, names: Sequence[str]) -> "Triangulation":
        if not names:
            raise SurfaceError("counting curve is empty")
        return Triangulation(self.name, self.edge_names, self.triangles, tuple(self.edge_index(n) for n in names))

    def __repr__(self):
        return (
            f"Triangulation({self.name!r}, g={self.genus}, n={self.num_punctures}, N={self.N}, "
            f"marked={list(self.marked_names)})"
        )


@dataclass(frozen=True)
class CellDecomposition:
    """Polygonal cells glued along edges; each cell a cyclic list of (name, sign)."""

    name: str
    cells: tuple[tuple[tuple[str, int], ...], ...]

    def dumps(self, marked: Sequence[str] = ()) -> str:
        return json.dumps(
            {
                "name": self.name,
                "triangles": [[n + ("+" if s > 0 else "-") for n, s in cell] for cell in self.cells],
                "counting_curve": list(marked),
            },
            indent=2,
        )


def parse_surface(text: str | dict) -> Triangulation:
    doc = _load_document(text)
    cells = _read_cells(doc, 3, 3)
    names = _check_edge_uses(cells)
    marked = _read_marked(doc, names)
    return Triangulation.from_cells(str(doc.get("name", "")), cells, marked)


def parse_cells(text: str | dict) -> tuple[CellDecomposition, tuple[str, ...]]:
    doc = _load_document(text)
    cells = _read_cells(doc, 3, None)
    names = _check_edge_uses(cells)
    marked = _read_marked(doc, names)
    return CellDecomposition(str(doc.get("name", "")), tuple(tuple(c) for c in cells)), marked


def load_surface(text: str | dict) -> Triangulation:
    """Parse a triangulation or a cell decomposition (refined on the fly)."""
    doc = _load_document(text)
    raw = doc.get("triangles")
    if isinstance(raw, list) and all(isinstance(c, list) and len(c) == 3 for c in raw):
        return parse_surface(doc)
    cells, marked = parse_cells(doc)
    return refine(cells, marked)


def validate(t: Triangulation) -> ValidationReport:
    problems = []
    n = t.num_punctures
    F, E = t.num_triangles, t.num_edges
    if F == 0:
        problems.append("no triangles")
    if 2 * E != 3 * F:
        problems.append(f"{E} edges and {F} triangles violate 3F = 2E")
    if F % 2:
        problems.append(f"odd number of triangles ({F})")
    for e, (a, b) in enumerate(t.halves):
        if t.sign_of[a] == t.sign_of[b]:
            problems.append(f"edge {t.edge_names[e]!r} traversed twice in the same direction")
    connected = t.is_connected()
    if not connected:
        problems.append("not connected")
    chi = t.euler_characteristic
    genus = None
    if chi % 2:
        problems.append(f"Euler characteristic {chi} is odd")
    elif connected:
        genus = (2 - chi) // 2
        if genus < 0:
            problems.append(f"negative genus {genus}")
            genus = None
    N = F // 2
    if (N - n) % 2:
        problems.append(f"N={N} and n={n} have different parity")
    if not t.marked:
        problems.append("counting curve is empty")
    return ValidationReport(not problems, genus, n, N, tuple(problems))


def vertex_links(t: Triangulation) -> tuple[tuple[int, ...], ...]:
    """Corners around each puncture, in cyclic order."""
    return t.links


def _fresh_name(base: str, taken: set[str]) -> str:
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def refine(c: CellDecomposition, marked: Sequence[str]) -> Triangulation:
    """Fan-triangulate every cell from its first listed corner."""
    names = _check_edge_uses(c.cells)
    taken = set(names)
    tris: list[list[tuple[str, int]]] = []
    for ci, cell in enumerate(c.cells):
        k = len(cell)
        if k < 3:
            raise SurfaceError(f"cell {ci} has {k} sides; cells need at least 3")
        if k == 3:
            tris.append(list(cell))
            continue
        diags = [_fresh_name(f"{c.name or 'cell'}{ci}.{j}", taken) for j in range(1, k - 2)]
        tris.append([cell[0], cell[1], (diags[0], 1)])
        for j in range(1, k - 3):
            tris.append([(diags[j - 1], -1), cell[j + 1], (diags[j], 1)])
        tris.append([(diags[-1], -1), cell[k - 2], cell[k - 1]])
    return Triangulation.from_cells(c.name, tris, list(marked))


def unmarked_dual_is_forest(t: Triangulation) -> bool:
    """True iff the dual graph restricted to unmarked edges has no cycle.

    A cycle there is a closed dual path crossing only unmarked edges, i.e. a
    nontrivial multicurve missed by the counting curve.
    """
    parent = list(range(t.num_triangles))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in t.unmarked:
        a, b = (find(h // 3) for h in t.halves[e])
        if a == b:
            return False
        parent[a] = b
    return True
