import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvecount import (
    CellDecomposition,
    SurfaceError,
    is_counting_curve,
    load_surface,
    parse_cells,
    parse_surface,
    refine,
    validate,
    vertex_links,
)
from curvecount.surface import unmarked_dual_is_forest

from conftest import SURFACES, fixture_doc, surface
from oracles import brute_lp_max_is_zero


def test_s11_counts(s11):
    # 2 - 3 + 1 = 0 = 2 - 2g
    assert (s11.genus, s11.num_punctures, s11.N) == (1, 1, 1)
    assert s11.marked_names == ("a", "b")


def test_s12_counts(s12):
    assert (s12.genus, s12.num_punctures, s12.N) == (1, 2, 2)
    assert s12.edge_names == ("a", "b", "e", "f", "d", "c")


def test_edge_used_once():
    with pytest.raises(SurfaceError, match="edge used once"):
        parse_surface(fixture_doc("bad_edge"))


@pytest.mark.parametrize(
    "doc, msg",
    [
        ('{"triangles": [["a+","b+","c+"],["a-","b-","c-"]], "counting_curve": ["z"]}', "marked edge name unknown"),
        ('{"triangles": [["a+","b+","c+"],["a-","b-","c-"]], "counting_curve": []}', "counting curve is empty"),
        ('{"triangles": [["a+","b+","c+"],["a+","b-","c-"]], "counting_curve": ["a"]}', "same direction"),
        ('{"triangles": [["a+","b+","c+"],["a-","b-","c-"]], "counting_curve": ["a"],', "syntax error at line 1"),
        ('{"triangles": [["a+","b+"],["a-","b-"]], "counting_curve": ["a"]}', "exactly 3"),
        ('{"triangles": [["a*","b+","c+"],["a-","b-","c-"]], "counting_curve": ["b"]}', "bad directed edge"),
    ],
)
def test_parse_errors(doc, msg):
    with pytest.raises(SurfaceError, match=msg):
        parse_surface(doc)


def test_validate_fixtures():
    for name in SURFACES:
        rep = validate(surface(name))
        assert rep.ok, (name, rep.violations)
        assert rep.ok == (not rep.violations)


def test_validate_reports(s11, s12):
    assert validate(s11).as_dict() == {"ok": True, "genus": 1, "punctures": 1, "N": 1, "violations": []}
    r = validate(s12)
    assert (r.genus, r.punctures, r.N) == (1, 2, 2)


def test_disconnected_union():
    doc = {
        "name": "two tori",
        "triangles": [["a+", "b+", "c+"], ["a-", "b-", "c-"], ["x+", "y+", "z+"], ["x-", "y-", "z-"]],
        "counting_curve": ["a", "b", "x", "y"],
    }
    rep = validate(parse_surface(doc))
    assert not rep.ok
    assert "not connected" in rep.violations


def test_vertex_links(s11, s12, sphere3):
    assert len(vertex_links(s11)) == 1 and sorted(vertex_links(s11)[0]) == list(range(6))
    links = vertex_links(s12)
    assert len(links) == 2 and sorted(c for l in links for c in l) == list(range(12))
    assert sorted(len(l) for l in links) == [1, 11]
    assert [len(l) for l in vertex_links(sphere3)] == [2, 2, 2]


def test_links_partition_corners(any_surface):
    corners = [c for l in vertex_links(any_surface) for c in l]
    assert sorted(corners) == list(range(6 * any_surface.N))
    assert len(vertex_links(any_surface)) == any_surface.num_punctures


def test_euler_and_parity(any_surface):
    t = any_surface
    assert 2 * t.N - 3 * t.N + t.num_punctures == 2 - 2 * t.genus
    assert (t.N - t.num_punctures) % 2 == 0


def test_counting_curve_examples(s11, s12):
    assert is_counting_curve(s11)
    assert is_counting_curve(s12)
    assert not is_counting_curve(s12.with_marked(["a", "b"]))
    # a brute-force search to weight 6 agrees
    assert brute_lp_max_is_zero(s11, 6)
    assert not brute_lp_max_is_zero(s12.with_marked(["a", "b"]), 6)


def test_counting_curve_matches_forest(any_surface):
    t = any_surface
    names = t.edge_names
    for k in range(1, len(names) + 1):
        marked = names[:k]
        u = t.with_marked(marked)
        assert is_counting_curve(u) == unmarked_dual_is_forest(u), marked


def test_refine_identity(s11):
    doc = fixture_doc("s11")
    cells, marked = parse_cells(doc)
    t = refine(cells, marked)
    assert t.to_document() == s11.to_document()


def test_refine_square_torus():
    cells, marked = parse_cells({"name": "sq", "triangles": [["a+", "b+", "a-", "b-"]], "counting_curve": ["a", "b"]})
    t = refine(cells, marked)
    assert t.num_triangles == 2 and t.num_edges == 3
    assert validate(t).ok and (t.genus, t.num_punctures) == (1, 1)
    assert t.marked_names == ("a", "b")


def test_refine_two_squares():
    # two squares glued along all four sides: a sphere with four punctures
    doc = {"name": "pair", "triangles": [["a+", "b+", "c+", "d+"], ["d-", "c-", "b-", "a-"]], "counting_curve": ["a", "b", "c"]}
    cells, marked = parse_cells(doc)
    t = refine(cells, marked)
    assert t.num_triangles == 4 and t.num_edges == 6
    assert t.num_edges - 4 == 2  # one diagonal per square
    assert validate(t).ok and (t.genus, t.num_punctures) == (0, 4)


def test_refine_hexagon_matches_fixture_shape(s12):
    t = surface("s12_hexagon")
    assert (t.genus, t.num_punctures, t.N) == (1, 2, 2)
    assert set(t.marked_names) == {"a", "b", "c"}
    assert len(set(t.edge_names) - {"a", "b", "c"}) == 3


def test_refine_rejects_bigon():
    with pytest.raises(SurfaceError, match="at least 3"):
        refine(CellDecomposition("x", ((("a", 1), ("a", -1)),)), ["a"])


def test_refine_diagonal_names_avoid_collisions():
    doc = {"name": "q", "triangles": [["q0.1+", "b+", "q0.1-", "b-"]], "counting_curve": ["b"]}
    cells, marked = parse_cells(doc)
    t = refine(cells, marked)
    assert sorted(t.edge_names) == ["b", "q0.1", "q0.1'"]


def test_refine_idempotent(any_surface):
    cells, marked = parse_cells(any_surface.to_document())
    assert refine(cells, marked).to_document() == any_surface.to_document()


def test_load_surface_accepts_cells():
    t = load_surface(fixture_doc("genus2"))
    assert (t.genus, t.num_punctures, t.N) == (2, 1, 3)


@st.composite
def polygon_surfaces(draw):
    """One 2k-gon with a random pairing of its sides, orientably glued."""
    k = draw(st.integers(2, 5))
    slots = list(range(2 * k))
    order = draw(st.permutations(slots))
    cell = [None] * (2 * k)
    for i in range(k):
        p, q = order[2 * i], order[2 * i + 1]
        cell[p] = f"e{i}+"
        cell[q] = f"e{i}-"
    return {"name": "poly", "triangles": [cell], "counting_curve": [f"e{i}" for i in range(k)]}


@settings(max_examples=40, deadline=None)
@given(polygon_surfaces())
def test_generated_polygons_satisfy_euler(doc):
    t = load_surface(doc)
    rep = validate(t)
    assert rep.ok, rep.violations
    assert 2 * t.N - 3 * t.N + t.num_punctures == 2 - 2 * t.genus
    assert t.num_triangles == len(doc["triangles"][0]) - 2
    assert is_counting_curve(t)


@settings(max_examples=40, deadline=None)
@given(polygon_surfaces())
def test_round_trip(doc):
    t = load_surface(doc)
    again = parse_surface(t.dumps())
    assert again.to_document() == t.to_document()
    assert json.loads(t.dumps()) == t.to_document()
