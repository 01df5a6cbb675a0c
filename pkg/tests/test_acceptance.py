"""Seeded desk-scale runs of every pipeline.

All but the template check are marked slow and deselected by default; run them with
``pytest -m slow``.
"""

from collections import Counter
from fractions import Fraction
from itertools import combinations

import pytest

from decompforge.algebraic import identity_labeling, template, triangle_decompose_algebraic
from decompforge.barriers import (
    SpaceBarrierSpec,
    detect_divisibility_barrier,
    exact_max_matching,
    is_tridivisible,
    parity_barrier,
    space_barrier,
)
from decompforge.codegree import perfect_matching_codegree
from decompforge.config import NibbleParams
from decompforge.core.designs import DesignParams, steiner_auxiliary
from decompforge.core.hypergraph import Hypergraph, TriangleDecomposition, triangle_edges
from decompforge.core.latin import latin_squares, latin_to_3graph, transversals
from decompforge.core.rng import derive_rng
from decompforge.core.verify import DecompositionReport, MatchingReport, verify_triangle_decomposition
from decompforge.harness import exact_triangle_decomposition, generate_codegree_3graph
from decompforge.iterative import triangle_decompose_iterative
from decompforge.nibble import rodl_nibble
from decompforge.orchestrator import codegree_density
from decompforge.relaxations import FractionalSolution, Infeasible, TriangleLattice, fractional_triangle_decomposition

SEEDS = range(1, 21)


@pytest.mark.parametrize(("a", "count"), [(3, 7), (4, 35), (5, 155)])
def test_projective_template_is_a_steiner_triple_system(a, count):
    n = 2**a - 1
    K = Hypergraph.complete(n)
    T = template(K, identity_labeling(n, a))
    assert len(T.triangles) == count
    assert verify_triangle_decomposition(K, TriangleDecomposition.of(T.triangles)).accepted


def _graphs(n: int):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Hypergraph.graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


@pytest.mark.slow
@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_oracle_and_lattice_agree_with_tridivisibility(n):
    lattice = TriangleLattice(Hypergraph.complete(n))
    for G in _graphs(n):
        divisible = is_tridivisible(G)
        if exact_triangle_decomposition(G) is not None:
            assert divisible
        assert (lattice.decompose(G) is not None) == divisible


@pytest.mark.slow
def test_oracle_and_lattice_agree_on_sampled_seven_vertex_graphs():
    pairs = list(combinations(range(7), 2))
    lattice = TriangleLattice(Hypergraph.complete(7))
    masks = derive_rng(7, "oracle-sample").integers(0, 1 << len(pairs), size=2_000)
    for mask in (int(m) for m in masks):
        G = Hypergraph.graph(7, [p for i, p in enumerate(pairs) if mask >> i & 1])
        divisible = is_tridivisible(G)
        if exact_triangle_decomposition(G) is not None:
            assert divisible
        assert (lattice.decompose(G) is not None) == divisible


@pytest.mark.slow
@pytest.mark.parametrize("i", [1, 2, 3])
def test_space_barrier_matching_bound(i):
    tight = 0
    for n in range(3, 13):
        for s in range(0, n + 1):
            if Fraction(s) >= Fraction(i * n, 3):
                break
            H = space_barrier(SpaceBarrierSpec(n=n, r=3, i=i, S=frozenset(range(s))))
            size = exact_max_matching(H).size
            assert size <= s // i
            tight += size == s // i
    assert tight >= 1


@pytest.mark.slow
def test_fractional_decomposition_of_complete_graphs():
    for n in range(3, 31):
        result = fractional_triangle_decomposition(Hypergraph.complete(n))
        assert isinstance(result, FractionalSolution)
        assert set(result.weights.values()) == {Fraction(1, n - 2)}
    cross = [(a, b) for a in range(4) for b in range(4, 8)]
    inside = [(0, 1), (2, 3), (4, 5), (6, 7)]
    assert isinstance(fractional_triangle_decomposition(Hypergraph.graph(8, cross + inside)), Infeasible)


@pytest.mark.slow
def test_codegree_pipeline_success_rate():
    successes = 0
    for seed in SEEDS:
        H = generate_codegree_3graph(12, 0.55, seed)
        result = perfect_matching_codegree(H, codegree_density(H), seed)
        if isinstance(result, MatchingReport):
            assert result.verification.accepted
            successes += 1
        else:
            # the failure is the pipeline's, not the instance's
            assert exact_max_matching(H).size == 4
    assert successes >= 18


@pytest.mark.slow
@pytest.mark.parametrize("n", [7, 9, 13, 15])
def test_algebraic_pipeline_success_rate(n):
    K = Hypergraph.complete(n)
    successes = 0
    for seed in SEEDS:
        result = triangle_decompose_algebraic(K, seed=seed)
        if isinstance(result, DecompositionReport):
            assert result.verification.accepted
            assert verify_triangle_decomposition(K, result.decomposition).accepted
            successes += 1
    assert successes >= 16


@pytest.mark.slow
@pytest.mark.parametrize("n", [13, 19, 21])
def test_iterative_pipeline_success_rate(n):
    K = Hypergraph.complete(n)
    successes = 0
    for seed in SEEDS:
        result = triangle_decompose_iterative(K, seed=seed)
        if isinstance(result, DecompositionReport):
            assert verify_triangle_decomposition(K, result.decomposition).accepted
            successes += 1
    assert successes >= 14


@pytest.mark.slow
def test_nibble_leave_on_steiner_auxiliary():
    H = steiner_auxiliary(DesignParams(n=99, q=3, r=2))
    small = sum(rodl_nibble(H, NibbleParams(seed=seed)).leave_fraction(H.n) <= 0.15 for seed in SEEDS)
    assert small >= 18


@pytest.mark.slow
@pytest.mark.parametrize("n", [6, 9, 12])
def test_parity_construction_is_detected(n):
    H, P, _ = parity_barrier(n, 3)
    verdict = detect_divisibility_barrier(H, P)
    assert verdict.barrier
    assert verdict.index == 2
    assert exact_max_matching(H).size < n // 3


@pytest.mark.slow
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_latin_square_matchings_are_transversals(k):
    for L in latin_squares(k):
        has_matching = exact_max_matching(latin_to_3graph(L)).size == k
        assert has_matching == bool(transversals(L))


def _edge_multiset(triangles) -> Counter:
    return Counter(e for t in triangles for e in triangle_edges(tuple(t)))


@pytest.mark.slow
def test_flips_keep_edge_sums_and_holes_balance():
    checks = 0
    for n in (7, 9, 13, 15):
        K = Hypergraph.complete(n)
        for seed in SEEDS:
            result = triangle_decompose_algebraic(K, seed=seed)
            if not isinstance(result, DecompositionReport):
                continue
            checks += result.stats["flip_checks"]
            assert result.stats["edge_sum_checks"] == 12 * result.stats["flip_checks"]
            outer = _edge_multiset(result.stats["hole_sets"]["outer"])
            inner = _edge_multiset(result.stats["hole_sets"]["inner"])
            freed = outer - inner
            assert inner <= outer
            assert set(freed.values()) <= {1}
            assert freed.total() == result.stats["spill"]
            if n == 13 and seed <= 5:
                again = triangle_decompose_algebraic(K, seed=seed)
                assert again.stats["hole_sets"] == result.stats["hole_sets"]
    assert checks > 0
