"""Exact integer homology of sphere-plumbing bundles over punctured surfaces."""

from .bundle_homology import (
    BoundaryCheck,
    Representation,
    WangPieces,
    boundary_check,
    mapping_torus_homology,
    surface_bundle_homology,
    wang_pieces,
)
from .distinguisher import (
    FillingEntry,
    FillingReport,
    classify_distinct,
    filling_family,
    torsion_closed_form,
)
from .exact_linalg import (
    AbelianGroup,
    IntMatrix,
    SnfResult,
    cokernel_group,
    det,
    format_matrix,
    inverse_unimodular,
    kernel_rank,
    mat_mul,
    mat_pow,
    mat_sub,
    parse_matrix,
    rank,
    snf,
)
from .plumbing import (
    GradedGroup,
    PlumbingGraph,
    base_homology,
    graph_from_json,
    graph_to_json,
    intersection_form,
    parse_graph,
    validate,
)
from .presets import GRAPH_PRESETS, graph_preset
from .twist_engine import (
    GradedAction,
    IDENTITY_ACTION,
    TwistWord,
    parse_word,
    preset_action,
    twist_matrix,
    word_action,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "BoundaryCheck",
    "FillingEntry",
    "FillingReport",
    "GRAPH_PRESETS",
    "GradedAction",
    "GradedGroup",
    "IDENTITY_ACTION",
    "IntMatrix",
    "PlumbingGraph",
    "Representation",
    "SnfResult",
    "TwistWord",
    "WangPieces",
    "base_homology",
    "boundary_check",
    "classify_distinct",
    "cokernel_group",
    "det",
    "filling_family",
    "format_matrix",
    "graph_from_json",
    "graph_preset",
    "graph_to_json",
    "intersection_form",
    "inverse_unimodular",
    "kernel_rank",
    "mapping_torus_homology",
    "mat_mul",
    "mat_pow",
    "mat_sub",
    "parse_graph",
    "parse_matrix",
    "parse_word",
    "preset_action",
    "rank",
    "snf",
    "surface_bundle_homology",
    "torsion_closed_form",
    "twist_matrix",
    "validate",
    "wang_pieces",
    "word_action",
]
