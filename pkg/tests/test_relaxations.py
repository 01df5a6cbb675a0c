"""Tests for decompforge.relaxations"""

import threading
from fractions import Fraction

import pytest

from decompforge.barriers import SpaceBarrierSpec, space_barrier
from decompforge.core.errors import CancelledError, InvalidInputError
from decompforge.core.hypergraph import Hypergraph, triangle_edges
from decompforge.relaxations import (
    BoundFailure,
    FractionalSolution,
    Infeasible,
    IntegralSolution,
    TriangleLattice,
    bounded_integral_decomposition,
    fractional_pm,
    fractional_triangle_decomposition,
    integral_triangle_decomposition,
    solve_feasibility,
)


def _farkas_holds(H: Hypergraph, result: Infeasible) -> bool:
    y = result.certificate
    return sum(y.values()) > 0 and all(sum(y.get(v, 0) for v in e) <= 0 for e in H.edges)


def test_fractional_pm_uniform_on_complete_3graph():
    result = fractional_pm(Hypergraph.complete(6, 3))
    assert isinstance(result, FractionalSolution)
    assert set(result.weights.values()) == {Fraction(1, 10)}
    assert set(result.vertex_sums().values()) == {Fraction(1)}


def test_fractional_pm_single_edge():
    result = fractional_pm(Hypergraph.of(3, 3, [(0, 1, 2)]))
    assert result.weights == {(0, 1, 2): Fraction(1)}


def test_fractional_pm_space_barrier_is_infeasible():
    H = space_barrier(SpaceBarrierSpec(n=6, r=3, i=1, S=frozenset({0})))
    result = fractional_pm(H)
    assert isinstance(result, Infeasible)
    assert _farkas_holds(H, result)
    assert result.to_dict()["infeasible"] is True


def test_fractional_pm_mixed_degrees():
    # vertex degrees differ, so the simplex path runs
    H = Hypergraph.of(6, 3, [(0, 1, 2), (3, 4, 5), (0, 1, 3), (2, 4, 5), (0, 1, 4)])
    result = fractional_pm(H)
    assert isinstance(result, FractionalSolution)
    assert all(s == 1 for s in result.vertex_sums().values())
    assert all(w >= 0 for w in result.weights.values())


@pytest.mark.parametrize("n", [3, 5, 7])
def test_fractional_triangles_on_complete_graph(n):
    result = fractional_triangle_decomposition(Hypergraph.complete(n))
    assert isinstance(result, FractionalSolution)
    assert set(result.weights.values()) == {Fraction(1, n - 2)}


def test_extremal_graph_has_no_fractional_decomposition():
    cross = [(a, b) for a in range(4) for b in range(4, 8)]
    inside = [(0, 1), (2, 3), (4, 5), (6, 7)]
    result = fractional_triangle_decomposition(Hypergraph.graph(8, cross + inside))
    assert isinstance(result, Infeasible)


def test_triangle_free_graph_is_infeasible():
    assert isinstance(fractional_triangle_decomposition(Hypergraph.graph(4, [(0, 1), (1, 2)])), Infeasible)


def test_support_must_be_host_triangles():
    with pytest.raises(InvalidInputError):
        fractional_triangle_decomposition(Hypergraph.graph(4, [(0, 1), (1, 2), (0, 2)]), support=[(0, 1, 3)])


def test_solve_feasibility():
    x = solve_feasibility([{0: 1, 1: 1}], [1], 2)
    assert sum(x.values()) == 1
    assert all(v >= 0 for v in x.values())
    assert isinstance(solve_feasibility([{0: 1}, {0: 1}], [1, 2], 1), Infeasible)


def test_integral_none_for_k4():
    assert integral_triangle_decomposition(Hypergraph.complete(4), Hypergraph.complete(4)) is None


def test_integral_empty_s():
    result = integral_triangle_decomposition(Hypergraph.graph(5, []))
    assert result == IntegralSolution()


def test_integral_k7():
    K7 = Hypergraph.complete(7)
    result = integral_triangle_decomposition(K7, K7)
    assert result is not None
    assert result.decomposes(K7)


def test_integral_six_cycle_in_k6():
    C6 = Hypergraph.graph(6, [(i, (i + 1) % 6) for i in range(6)])
    result = TriangleLattice(Hypergraph.complete(6)).decompose(C6)
    assert result is not None
    assert result.decomposes(C6)


def test_s_outside_host_is_rejected():
    with pytest.raises(InvalidInputError):
        integral_triangle_decomposition(Hypergraph.complete(4), Hypergraph.graph(4, [(0, 1)]))


def test_bounded_k7_reaches_fano_load():
    K7 = Hypergraph.complete(7)
    result = bounded_integral_decomposition(K7, 3, K7)
    assert isinstance(result, IntegralSolution)
    assert result.decomposes(K7)
    assert result.max_load() <= 3


def test_bounded_empty_and_single_triangle():
    assert bounded_integral_decomposition(Hypergraph.graph(4, []), 0) == IntegralSolution()
    S = Hypergraph.graph(5, triangle_edges((0, 1, 2)))
    assert bounded_integral_decomposition(S, 1) == IntegralSolution(weights={(0, 1, 2): 1})


def test_bounded_rejects_negative_bound():
    with pytest.raises(InvalidInputError):
        bounded_integral_decomposition(Hypergraph.complete(7), -1)


def test_bounded_failure_reports_best_load():
    K7 = Hypergraph.complete(7)
    result = bounded_integral_decomposition(K7, 1, K7)
    # every vertex of K_7 lies in three triangles of any decomposition
    assert isinstance(result, BoundFailure)
    assert result.achieved >= 3
    assert result.to_dict()["bound"] == 1


def test_triangle_lattice_rank_of_k6():
    assert TriangleLattice(Hypergraph.complete(6)).rank == 15


def test_triangle_lattice_observes_cancellation():
    cancel = threading.Event()
    cancel.set()
    with pytest.raises(CancelledError):
        TriangleLattice(Hypergraph.complete(6), cancel=cancel)
