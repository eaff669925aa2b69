"""Exact computations in Thompson's group F and its groupoid.

Elements live interchangeably as exact piecewise-linear maps and as
strand diagrams; annular closures decide conjugacy, directed loops read
off the fixed-point dynamics, and one-bump elements get Mather circle-map
invariants.
"""

from .binary import (
    TailWord,
    apply_replacement,
    rational_to_tails,
    same_tail,
    tail_to_rational,
)
from .plmap import (
    X0,
    X1,
    CantorPoint,
    PLMap,
    PointwiseInterval,
    compose,
    fixed_intervals,
    identity,
    invert,
    is_one_bump,
    plog,
    plog_inv,
    rescale_to_unit,
    slope_at,
)
from .strand import (
    StrandDiagram,
    concatenate,
    equal_reduced,
    evaluate,
    from_pl_map,
    from_tree_pair,
    generator_diagram,
    invert_diagram,
    reduce,
    to_pl_map,
    trivial_diagram,
)
from .annular import (
    AnnularStrandDiagram,
    LoopInfo,
    are_conjugate,
    canonical_key,
    classify_loops,
    close,
    components,
    cut,
    fixed_intervals_from_loops,
    reduce_annular,
)
from .mather import (
    CircleMap,
    CylindricalStrandDiagram,
    circle_map_from_cylindrical,
    cylindrical_from_annular,
    cylindrical_from_circle_map,
    mather_equivalent,
    mather_invariant,
    rotate,
)
from .orbits import in_same_orbit, multipoint_transporter, pipeline_element

__version__ = "0.1.0"
