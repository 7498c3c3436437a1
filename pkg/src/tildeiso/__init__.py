"""Swap+mismatch edit distance and isometric-word analysis on binary words."""

from .word import (
    Word,
    complement,
    is_free,
    occurrences,
    parse_word,
    prefix,
    reverse,
    suffix,
)
from .editops import (
    EditOp,
    EnumerationResult,
    Transformation,
    applicable,
    apply_op,
    enumerate_minimal_transformations,
    hamming_distance,
    is_free_transformation,
    mismatch_positions,
    parse_op,
    tilde_distance,
    transformation_from_ops,
)
from .overlaps import (
    Alignment,
    OverlapRecord,
    all_overlaps,
    alignment,
    condition_tilde,
    error_geometry,
    has_hamming_2_error_overlap,
    overlap,
    q_overlaps,
)
from .isometry import (
    CaseMatch,
    IsometryReport,
    VerifyResult,
    WitnessPair,
    build_witness,
    classify,
    is_ham_isometric,
    is_tilde_isometric,
    symmetry_closure,
    verify_witness,
)
from .cube import (
    CubeGraph,
    OracleReport,
    Violation,
    build_cube,
    default_bound,
    export_graph,
    find_min_witnesses,
    oracle_check,
    restricted_distance,
)

__all__ = [
    "Word",
    "complement",
    "is_free",
    "occurrences",
    "parse_word",
    "prefix",
    "reverse",
    "suffix",
    "EditOp",
    "EnumerationResult",
    "Transformation",
    "applicable",
    "apply_op",
    "enumerate_minimal_transformations",
    "hamming_distance",
    "is_free_transformation",
    "mismatch_positions",
    "parse_op",
    "tilde_distance",
    "transformation_from_ops",
    "Alignment",
    "OverlapRecord",
    "all_overlaps",
    "alignment",
    "condition_tilde",
    "error_geometry",
    "has_hamming_2_error_overlap",
    "overlap",
    "q_overlaps",
    "CaseMatch",
    "IsometryReport",
    "VerifyResult",
    "WitnessPair",
    "build_witness",
    "classify",
    "is_ham_isometric",
    "is_tilde_isometric",
    "symmetry_closure",
    "verify_witness",
    "CubeGraph",
    "OracleReport",
    "Violation",
    "build_cube",
    "default_bound",
    "export_graph",
    "find_min_witnesses",
    "oracle_check",
    "restricted_distance",
]

__version__ = "0.1.0"
