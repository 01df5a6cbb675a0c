"""Tests for decompforge.barriers"""

from itertools import combinations

import pytest

from decompforge.barriers import (
    SpaceBarrierSpec,
    VertexPartition,
    complete_edge_vectors,
    count_perfect_matchings,
    detect_divisibility_barrier,
    divisibility_barrier,
    edge_vector,
    exact_max_matching,
    is_tridivisible,
    lattice_contains,
    lattice_from_vectors,
    lattice_index,
    parity_barrier,
    search_divisibility_barrier,
    space_barrier,
)
from decompforge.core.errors import InvalidBarrierError, InvalidInputError, InvalidInstanceError, TooLargeError
from decompforge.core.hypergraph import Hypergraph

HALVES = VertexPartition.of([[0, 1, 2], [3, 4, 5]])


def test_space_barrier_single_vertex():
    H = space_barrier(SpaceBarrierSpec(n=6, r=3, i=1, S=frozenset({0})))
    assert H.m == 10
    assert exact_max_matching(H).size == 1


def test_space_barrier_pairs_in_s():
    H = space_barrier(SpaceBarrierSpec(n=9, r=3, i=2, S=frozenset({0, 1, 2})))
    assert exact_max_matching(H).size == 1


def test_space_barrier_matching_bounded_by_s():
    H = space_barrier(SpaceBarrierSpec(n=9, r=3, i=1, S=frozenset({0, 1})))
    assert exact_max_matching(H).size == 2


def test_space_barrier_empty_when_i_equals_r():
    assert space_barrier(SpaceBarrierSpec(n=6, r=3, i=3, S=frozenset())).m == 0


def test_space_barrier_warns_when_s_is_large():
    with pytest.warns(UserWarning):
        space_barrier(SpaceBarrierSpec(n=6, r=3, i=1, S=frozenset({0, 1})))


def test_space_barrier_spec_validation():
    with pytest.raises(InvalidInputError):
        SpaceBarrierSpec(n=6, r=3, i=4, S=frozenset())
    with pytest.raises(InvalidInputError):
        SpaceBarrierSpec(n=6, r=3, i=1, S=frozenset({9}))


def test_parity_barrier_has_no_perfect_matching():
    L = lattice_from_vectors([(2, 0), (0, 1)])
    H = divisibility_barrier(HALVES, L, 3)
    assert all(len({0, 1, 2} & set(e)) % 2 == 0 for e in H.edges)
    assert H.m == 10
    assert count_perfect_matchings(H) == 0
    assert exact_max_matching(H).size < 2


def test_parity_barrier_helper_matches_construction():
    H, P, L = parity_barrier(6, 3, odd_part=3)
    assert P == HALVES
    assert H == divisibility_barrier(HALVES, L, 3)


def test_full_lattice_is_not_a_barrier():
    with pytest.raises(InvalidBarrierError):
        divisibility_barrier(HALVES, lattice_from_vectors([(1, 0), (0, 1)]), 3)


def test_r_partite_barrier():
    P = VertexPartition.of([[0], [1, 2, 3, 4, 5]])
    H = divisibility_barrier(P, lattice_from_vectors([(1, 2)]), 3)
    assert exact_max_matching(H).size == 1


def test_edge_vector():
    assert edge_vector((0, 1, 4), HALVES) == (2, 1)
    assert edge_vector((0, 1, 2), HALVES) == (3, 0)
    assert complete_edge_vectors(HALVES, 3) == {(3, 0), (2, 1), (1, 2), (0, 3)}


def test_partition_validation():
    with pytest.raises(InvalidInputError):
        VertexPartition.of([[0, 1], [1, 2]])
    with pytest.raises(InvalidInputError):
        VertexPartition.of([[0, 2]])


def test_lattice_basis_is_hermite_normal_form():
    assert lattice_from_vectors([(1, 2), (3, 4)]).basis == ((1, 0), (0, 2))
    assert lattice_from_vectors([(2, 0), (0, 2)]).basis == ((2, 0), (0, 2))
    assert lattice_from_vectors([(1, 0), (0, 1)]).determinant() == 1


def test_lattice_membership():
    L = lattice_from_vectors([(2, 0), (0, 1)])
    assert not lattice_contains(L, (3, 5))
    assert lattice_contains(L, (4, 7))
    assert (0, 0) in L
    with pytest.raises(InvalidInputError):
        lattice_contains(L, (1, 2, 3))


def test_lattice_index():
    reference = lattice_from_vectors([(1, 0), (0, 1)])
    assert lattice_index(lattice_from_vectors([(2, 0), (0, 3)]), reference) == 6
    assert lattice_index(lattice_from_vectors([(1, 1)]), reference) is None


def test_detect_parity_barrier():
    H, P, _ = parity_barrier(6, 3, odd_part=3)
    verdict = detect_divisibility_barrier(H, P)
    assert verdict.barrier
    assert verdict.index == 2
    assert verdict.to_dict()["verdict"] == "BARRIER"


def test_detect_complete_graph_has_no_obstruction():
    verdict = detect_divisibility_barrier(Hypergraph.complete(6, 3), HALVES)
    assert not verdict.barrier
    assert verdict.index == 1


def test_detect_single_edge_trivial_partition():
    H = Hypergraph.of(3, 3, [(0, 1, 2)])
    assert not detect_divisibility_barrier(H, VertexPartition.of([[0, 1, 2]])).barrier


def test_search_finds_parity_barrier():
    H, _, _ = parity_barrier(6, 3, odd_part=3)
    verdict = search_divisibility_barrier(H, 2)
    assert verdict is not None
    assert verdict.barrier


def test_search_complete_graph():
    assert search_divisibility_barrier(Hypergraph.complete(6, 3), 2) is None


def test_search_is_bounded():
    with pytest.raises(TooLargeError):
        search_divisibility_barrier(Hypergraph.complete(13, 3), 2)
    with pytest.raises(TooLargeError):
        search_divisibility_barrier(Hypergraph.complete(6, 3), 4)


def test_is_tridivisible():
    assert is_tridivisible(Hypergraph.complete(7))
    assert not is_tridivisible(Hypergraph.complete(4))
    assert is_tridivisible(Hypergraph.graph(3, []))
    with pytest.raises(InvalidInstanceError):
        is_tridivisible(Hypergraph.complete(4, 3))


def test_exact_max_matching_examples():
    assert exact_max_matching(Hypergraph.of(6, 3, [(0, 1, 2), (3, 4, 5)])).size == 2
    assert exact_max_matching(Hypergraph.of(6, 3, [])).size == 0
    with pytest.raises(TooLargeError):
        exact_max_matching(Hypergraph.complete(16, 3))


def test_count_perfect_matchings():
    assert count_perfect_matchings(Hypergraph.complete(6, 3)) == 10
    assert count_perfect_matchings(Hypergraph.complete(4)) == 3
    assert count_perfect_matchings(Hypergraph.of(7, 3, list(combinations(range(7), 3)))) == 0
