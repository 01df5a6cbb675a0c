from decompforge.codegree.absorbers import (
    AbsorberFamily,
    absorbing_split,
    absorbs,
    count_absorbers,
    isolated_edges,
    sample_absorber_family,
)
from decompforge.codegree.pipeline import greedy_maximal_matching, near_perfect_matching_third, perfect_matching_codegree

__all__ = [
    "AbsorberFamily",
    "absorbing_split",
    "absorbs",
    "count_absorbers",
    "greedy_maximal_matching",
    "isolated_edges",
    "near_perfect_matching_third",
    "perfect_matching_codegree",
    "sample_absorber_family",
]
