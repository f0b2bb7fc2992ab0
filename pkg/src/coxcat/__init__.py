"""Exact workbench for counting regions of reflection arrangements and their
Catalan deformations.

Every count is available by three independent routes: a closed formula, the
characteristic polynomial evaluated via finite fields (with Zaslavsky's
theorem), and brute-force region enumeration over exact rationals.  On top of
the geometry sits the bijective layer: sketches, moves, canonical forms,
non-nesting partitions, and compartment statistics.
"""

from .arrangement import Arrangement, FAMILY_TAGS, Hyperplane, build, rank, scale_to_integer
from .charpoly import CharPoly, bounded_from_chi, char_poly, count_ff_points, regions_from_chi
from .exactnum import (
    IntPoly,
    PolySeries,
    Rat,
    RatPolyInT,
    interpolate,
    primes_above,
    series_pow_poly_exponent,
)
from .regionlab import (
    enumerate_regions,
    feasible,
    is_bounded_region,
    region_count,
    bounded_count,
    region_graph,
    sign_vector,
)
from .sketchlib import (
    ArcDiagram,
    LatticePath,
    MSketch,
    PointedSketch,
    ReflSketch,
    SymmetricSketch,
    decompose_nnp,
    enumerate_m_sketches,
    enumerate_pointed,
    enumerate_sketches,
    is_bounded_sketch,
    pair_from_sketch,
    realize,
    sketch_from_pair,
    to_arc_diagram,
    to_lattice_path,
)
from .movelab import (
    MOVE_SYSTEMS,
    MoveSystem,
    canonical,
    classes,
    is_ct_maximal,
    is_st_maximal,
    moves,
    verify_moves_against_geometry,
)
from .statlab import (
    CompartmentSplit,
    Distribution,
    cmnj_inequalities,
    compartments,
    distribution,
    gesa_check,
    nnp_positive_compartments,
    raney_check,
    regbreakup_check,
)

__version__ = "0.1.0"
