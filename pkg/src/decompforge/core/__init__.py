from decompforge.core.degrees import critical_degree_sequence, delta_sequence, min_codegree
from decompforge.core.designs import (
    DesignParams,
    design_count_leading,
    design_divisibility,
    matching_from_blocks,
    steiner_auxiliary,
    steiner_from_matching,
)
from decompforge.core.errors import (
    CancelledError,
    ConfigError,
    DecompForgeError,
    Failure,
    ImpossibleStateError,
    InvalidBarrierError,
    InvalidInputError,
    InvalidInstanceError,
    StageFailure,
    TooLargeError,
)
from decompforge.core.graphs import triangle_auxiliary, triangles_of
from decompforge.core.hypergraph import Hypergraph, Matching, TriangleDecomposition
from decompforge.core.latin import LatinSquare, cyclic_latin_square, latin_squares, latin_to_3graph, transversals
from decompforge.core.verify import (
    DecompositionReport,
    MatchingReport,
    VerificationReport,
    verify_matching,
    verify_perfect_matching,
    verify_triangle_decomposition,
)

__all__ = [
    "CancelledError",
    "ConfigError",
    "DecompForgeError",
    "DecompositionReport",
    "DesignParams",
    "Failure",
    "Hypergraph",
    "ImpossibleStateError",
    "InvalidBarrierError",
    "InvalidInputError",
    "InvalidInstanceError",
    "LatinSquare",
    "Matching",
    "MatchingReport",
    "StageFailure",
    "TooLargeError",
    "TriangleDecomposition",
    "VerificationReport",
    "critical_degree_sequence",
    "cyclic_latin_square",
    "delta_sequence",
    "design_count_leading",
    "design_divisibility",
    "latin_squares",
    "latin_to_3graph",
    "matching_from_blocks",
    "min_codegree",
    "steiner_auxiliary",
    "steiner_from_matching",
    "transversals",
    "triangle_auxiliary",
    "triangles_of",
    "verify_matching",
    "verify_perfect_matching",
    "verify_triangle_decomposition",
]
