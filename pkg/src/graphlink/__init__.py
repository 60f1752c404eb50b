"""Labeled oriented bipartite graphs: principal unimodularity, moves, homology.

The package decides principal unimodularity, applies the graph moves
(switch, vertex addition, twin addition, the third move in both
directions, orientation toggle, and the edge-flip macro), and computes
the integer-valued reduced homology invariant together with its mod-2
and Euler-characteristic consistency channels.
"""

from __future__ import annotations

from .cube import (
    DEFAULT_CONVENTION,
    CubeEdge,
    CubeParityReport,
    EdgeAssignment,
    FaceType,
    StateModule,
    classify_face,
    cube_edges,
    edge_map,
    faces,
    solve_edge_assignment,
    state_module,
    validate_cube_parity,
    xi_zero,
)
from .errors import (
    GraphFormatError,
    GraphlinkError,
    InternalInvariantError,
    MoveError,
    MoveFailed,
    PUViolation,
    TorsionDetected,
)
from .fixtures import FIXTURES, fixture, fixture_text
from .graphs import (
    LabeledGraph,
    UnorientedGraph,
    build_graph,
    load_graph,
    names_to_state,
    parse_graph,
    parse_unoriented,
    serialize_graph,
    state_names,
)
from .homology import (
    BigradedGroups,
    ChainComplex,
    Comparison,
    align_and_compare,
    build_complex,
    euler,
    f2_homology,
    format_table,
    integer_homology,
    khovanov,
    uct_check,
)
from .moves import (
    Move,
    apply_R,
    apply_move,
    apply_script,
    flip_edge_macro,
    fresh_names,
    omega1_add,
    omega1_remove,
    omega2_add,
    omega2_remove,
    omega3_backward,
    omega3_forward,
    omega4,
    parse_script,
    serialize_script,
)
from .pu import (
    Counterexample,
    compare_orientations,
    find_pu_orientation,
    is_pu,
    random_pu_graph,
)

__version__ = "0.1.0"

__all__ = [
    "BigradedGroups",
    "ChainComplex",
    "Comparison",
    "Counterexample",
    "CubeEdge",
    "CubeParityReport",
    "DEFAULT_CONVENTION",
    "EdgeAssignment",
    "FIXTURES",
    "FaceType",
    "GraphFormatError",
    "GraphlinkError",
    "InternalInvariantError",
    "LabeledGraph",
    "Move",
    "MoveError",
    "MoveFailed",
    "PUViolation",
    "StateModule",
    "TorsionDetected",
    "UnorientedGraph",
    "align_and_compare",
    "apply_R",
    "apply_move",
    "apply_script",
    "build_complex",
    "build_graph",
    "classify_face",
    "compare_orientations",
    "cube_edges",
    "edge_map",
    "euler",
    "f2_homology",
    "faces",
    "find_pu_orientation",
    "fixture",
    "fixture_text",
    "flip_edge_macro",
    "format_table",
    "fresh_names",
    "integer_homology",
    "is_pu",
    "khovanov",
    "load_graph",
    "names_to_state",
    "omega1_add",
    "omega1_remove",
    "omega2_add",
    "omega2_remove",
    "omega3_backward",
    "omega3_forward",
    "omega4",
    "parse_graph",
    "parse_script",
    "parse_unoriented",
    "serialize_graph",
    "serialize_script",
    "solve_edge_assignment",
    "state_module",
    "state_names",
    "uct_check",
    "validate_cube_parity",
    "xi_zero",
    "__version__",
]
