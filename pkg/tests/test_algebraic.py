"""Tests for decompforge.algebraic"""

import pytest

from decompforge.algebraic import (
    IRREDUCIBLE,
    AssociatedOctahedron,
    FieldGF2a,
    Hole,
    Labeling,
    LeaveCover,
    LeaveExchange,
    NotOctahedral,
    SignedDecomposition,
    associated_octahedron,
    cascade_absorb,
    compact_degree,
    cover_leave,
    exchange_leave,
    extract_hole,
    find_hole,
    identity_labeling,
    is_irreducible,
    random_labeling,
    signed_decomposition,
    template,
    triangle_decompose_algebraic,
    wide_degree,
)
from decompforge.core.errors import Failure, InvalidInputError, InvalidInstanceError
from decompforge.core.hypergraph import Hypergraph, triangle_edges
from decompforge.core.verify import DecompositionReport
from decompforge.reporter import Reporter


@pytest.fixture
def k7_template():
    return template(Hypergraph.complete(7), identity_labeling(7, 3))


@pytest.fixture
def k6_template():
    # labels 1..6: the pairs summing to 7 have no third vertex
    return template(Hypergraph.complete(6), identity_labeling(6, 3))


def test_field_multiplication():
    f = FieldGF2a.of_degree(3)
    assert f.mul(2, 4) == 3  # x * x^2 = x + 1
    assert f.add(5, 5) == 0
    assert f.inv(2) == 5


def test_field_inverse_for_every_element():
    f = FieldGF2a.of_degree(4)
    assert all(f.mul(x, f.inv(x)) == 1 for x in range(1, f.order))


@pytest.mark.parametrize("a", sorted(IRREDUCIBLE))
def test_tabulated_moduli_are_irreducible(a):
    assert is_irreducible(IRREDUCIBLE[a])


def test_reducible_polynomial():
    assert not is_irreducible(0b101)  # (x + 1)^2


@pytest.mark.parametrize("a", [1, 17])
def test_field_degree_out_of_range(a):
    with pytest.raises(InvalidInputError):
        FieldGF2a.of_degree(a)


def test_field_rejects_foreign_elements():
    f = FieldGF2a.of_degree(3)
    with pytest.raises(InvalidInputError):
        f.mul(8, 1)
    with pytest.raises(InvalidInputError):
        f.inv(0)


def test_degree_rules():
    assert wide_degree(7) == 4
    assert wide_degree(20) == 6
    assert compact_degree(7) == 3
    assert compact_degree(8) == 4


def test_random_labeling_is_an_injection():
    L = random_labeling(7, seed=11)
    assert L.field.a == 4
    assert len(set(L.pi)) == 7
    assert all(1 <= x < 16 for x in L.pi)
    assert L == random_labeling(7, seed=11)
    assert all(L.vertex_of(L.label(v)) == v for v in range(7))


def test_labeling_validation():
    with pytest.raises(InvalidInputError):
        random_labeling(2, seed=0)
    with pytest.raises(InvalidInputError):
        identity_labeling(8, 3)
    with pytest.raises(InvalidInputError):
        Labeling(field=FieldGF2a.of_degree(3), pi=(0, 1, 2))
    with pytest.raises(InvalidInputError):
        Labeling(field=FieldGF2a.of_degree(3), pi=(1, 1, 2))


def test_complete_template_is_the_fano_plane(k7_template, fano):
    assert sorted(k7_template.triangles) == sorted(fano)
    assert len(k7_template.edges()) == 21


def test_template_on_k15():
    T = template(Hypergraph.complete(15), identity_labeling(15, 4))
    assert len(T.triangles) == 35
    assert T.graph().m == 105


def test_template_misses_pairs_without_partner(k6_template):
    assert len(k6_template.triangles) == 4
    assert (0, 5) not in k6_template.edges()
    assert k6_template.triangle_through((0, 1)) == (0, 1, 2)


def test_associated_octahedron(k7_template):
    found = associated_octahedron((0, 1, 3), k7_template)
    assert isinstance(found, AssociatedOctahedron)
    assert found.octahedron.parts == ((0, 5), (1, 4), (3, 2))
    assert (0, 1, 3) in found.with_triangle
    assert all(t in k7_template for t in found.template_side)
    assert len(found.template_side) == 4


def test_template_triangle_has_no_associated_octahedron(k7_template):
    assert isinstance(associated_octahedron((0, 1, 2), k7_template), NotOctahedral)


def test_cascade_moves_weight_onto_template(k7_template):
    cascade = cascade_absorb((0, 1, 3), k7_template, seed=0)
    weights = cascade.apply({(0, 1, 3): 1})
    assert (0, 1, 3) not in weights
    assert all(t in k7_template for t, w in weights.items() if w > 0)


def test_cascade_on_template_triangle_is_empty(k7_template):
    assert cascade_absorb((0, 1, 2), k7_template, seed=0).flips == ()


def test_cover_leave_empty(k7_template):
    cover = cover_leave([], k7_template, seed=0)
    assert cover == LeaveCover(triangles=(), spill=frozenset())
    assert cover.max_spill_degree() == 0


def test_cover_leave_borrows_two_template_edges(k6_template):
    cover = cover_leave([(0, 5)], k6_template, seed=3)
    assert isinstance(cover, LeaveCover)
    (t,) = cover.triangles
    assert {0, 5} <= set(t)
    assert cover.spill == frozenset(triangle_edges(t)) - {(0, 5)}
    assert cover.spill <= k6_template.edges()


def test_cover_leave_rejects_template_edges(k7_template):
    with pytest.raises(InvalidInputError):
        cover_leave([(0, 1)], k7_template, seed=0)


def test_signed_decomposition_of_template_triangle(k7_template):
    S = Hypergraph.of(7, 2, triangle_edges((0, 1, 2)))
    signed = signed_decomposition(S, k7_template)
    assert isinstance(signed, SignedDecomposition)
    assert signed.plus == frozenset({(0, 1, 2)})
    assert signed.minus == frozenset()


def test_signed_decomposition_of_empty_graph(k7_template):
    signed = signed_decomposition(Hypergraph.of(7, 2, []), k7_template)
    assert signed.weights() == {}


def test_signed_decomposition_outside_template(k6_template):
    with pytest.raises(InvalidInputError):
        signed_decomposition(Hypergraph.of(6, 2, [(0, 5)]), k6_template)


def test_extract_hole(k7_template):
    S = triangle_edges((0, 1, 2))
    hole = extract_hole({(0, 1, 2): 1}, k7_template, S)
    assert isinstance(hole, Hole)
    assert hole.outer == frozenset({(0, 1, 2)})
    assert hole.holds_for(S)
    assert extract_hole({(0, 1, 2): 2}, k7_template, S) is None


def test_find_hole_without_spill(k7_template):
    hole = find_hole([], k7_template, budget=100, seed=0)
    assert hole.outer == frozenset() and hole.inner == frozenset()


def test_find_hole_rejects_edges_outside_template(k6_template):
    with pytest.raises(InvalidInputError):
        find_hole([(0, 5)], k6_template, budget=100, seed=0)


def test_pipeline_on_k7():
    reporter = Reporter()
    report = triangle_decompose_algebraic(Hypergraph.complete(7), seed=1, reporter=reporter)
    assert isinstance(report, DecompositionReport)
    assert len(report.decomposition) == 7
    assert report.verification.accepted
    assert report.stats["a"] == 3
    assert report.stats["spill"] == 0
    assert [e.stage for e in reporter.snapshot()][:2] == ["preflight", "template"]


def test_pipeline_rejects_non_tridivisible():
    with pytest.raises(InvalidInstanceError):
        triangle_decompose_algebraic(Hypergraph.complete(4))


@pytest.fixture
def k9_template():
    # labels 1..9: the Fano plane on 0..6 plus (0, 7, 8); G - G* is K_{2,6} between {7, 8} and 1..6
    return template(Hypergraph.complete(9), identity_labeling(9, 4))


def test_k9_leave_defeats_the_greedy_cover(k9_template):
    leave = [(v, w) for v in range(1, 7) for w in (7, 8)]
    failure = cover_leave(leave, k9_template, seed=0)
    assert isinstance(failure, Failure)
    assert failure.stage == "cover_leave"


def test_exchange_leave_releases_template_triangles(k9_template):
    leave = [(v, w) for v in range(1, 7) for w in (7, 8)]
    found = exchange_leave(leave, k9_template, Hypergraph.complete(9), seed=0)
    assert isinstance(found, LeaveExchange)
    assert found.hole.via == "leave_exchange"
    assert found.hole.holds_for(found.cover.spill)
    assert found.hole.outer <= set(k9_template.triangles)
    assert not any(t in k9_template for t in found.cover.triangles + tuple(found.hole.inner))
    covered = [e for t in found.cover.triangles for e in triangle_edges(t) if e not in found.cover.spill]
    assert sorted(covered) == sorted(leave)
    assert found.cover.spill <= k9_template.edges()


def test_exchange_leave_fails_on_a_single_edge(k6_template):
    # one leave edge plus whole template triangles never adds up to a multiple of three
    failure = exchange_leave([(0, 5)], k6_template, Hypergraph.complete(6), seed=0)
    assert isinstance(failure, Failure)
    assert failure.stage == "cover_leave"
    assert not failure.diagnostics["exhausted"]


def test_exchange_leave_rejects_template_edges(k7_template):
    with pytest.raises(InvalidInputError):
        exchange_leave([(0, 1)], k7_template, Hypergraph.complete(7))


def test_pipeline_on_k13_covers_leave_by_exchange():
    # with a = 4 two labels are unused and the template leaves three 4-cycles
    report = triangle_decompose_algebraic(Hypergraph.complete(13), seed=5)
    assert isinstance(report, DecompositionReport)
    assert report.verification.accepted
    assert len(report.decomposition) == 26
    assert report.stats["leave_cover"] == "exchange"
    assert report.stats["spill"] > 0
    assert report.stats["edge_sum_checks"] == 12 * report.stats["flip_checks"]
    assert set(report.stats["hole_sets"]) == {"outer", "inner"}


def test_pipeline_is_reproducible_on_k13():
    first = triangle_decompose_algebraic(Hypergraph.complete(13), seed=2)
    second = triangle_decompose_algebraic(Hypergraph.complete(13), seed=2)
    assert isinstance(first, DecompositionReport)
    assert first.stats["hole_sets"] == second.stats["hole_sets"]
    assert first.decomposition == second.decomposition
