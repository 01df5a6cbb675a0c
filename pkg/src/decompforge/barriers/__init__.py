from decompforge.barriers.constructions import (
    DivisibilityVerdict,
    SpaceBarrierSpec,
    VertexPartition,
    complete_edge_vectors,
    detect_divisibility_barrier,
    divisibility_barrier,
    edge_vector,
    is_tridivisible,
    parity_barrier,
    parity_partition,
    search_divisibility_barrier,
    space_barrier,
)
from decompforge.barriers.exact import count_perfect_matchings, exact_max_matching
from decompforge.barriers.lattice import (
    IntegerLattice,
    hermite_normal_form,
    lattice_contains,
    lattice_from_vectors,
    lattice_index,
)

__all__ = [
    "DivisibilityVerdict",
    "IntegerLattice",
    "SpaceBarrierSpec",
    "VertexPartition",
    "complete_edge_vectors",
    "count_perfect_matchings",
    "detect_divisibility_barrier",
    "divisibility_barrier",
    "edge_vector",
    "exact_max_matching",
    "hermite_normal_form",
    "is_tridivisible",
    "lattice_contains",
    "lattice_from_vectors",
    "lattice_index",
    "parity_barrier",
    "parity_partition",
    "search_divisibility_barrier",
    "space_barrier",
]
