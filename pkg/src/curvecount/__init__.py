"""Counting multicurves on punctured surfaces by intersections with a counting curve."""

from importlib import resources

from .cone import (
    MatchingMatrix,
    PeripheralVector,
    WeightError,
    build_matrix,
    check_weights,
    corners_to_weights,
    is_counting_curve,
    lp_max,
    peripheral_vectors,
    rank,
    weights_to_corners,
)
from .enumeration import (
    NotCountingCurve,
    TracedComponent,
    classify_peripheral,
    enumerate_multicurves,
    is_essential,
    reduce_cyclic,
    trace_components,
)
from .reconstruct import (
    RationalFunction,
    ReciprocityVerdict,
    ReconstructionError,
    UnpointedCone,
    check_reciprocity,
    check_stanley,
    pade_reconstruct,
    stanley_points,
)
from .ribbon import RibbonGraph, handle_counts, parse_ribbon
from .series import SparseSeries, compute_f, compute_f_direct, compute_f_division, compute_g, specialize
from .surface import (
    CellDecomposition,
    SurfaceError,
    Triangulation,
    ValidationReport,
    load_surface,
    parse_cells,
    parse_surface,
    refine,
    validate,
    vertex_links,
)

__version__ = "0.1.0"


def fixture_path(name: str):
    """Path of a shipped fixture, e.g. ``fixture_path("s11.json")``."""
    return resources.files(__package__).joinpath("fixtures", name)


def load_fixture(name: str) -> str:
    return fixture_path(name).read_text()
