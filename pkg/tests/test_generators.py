"""Tests for decompforge.harness.generators"""

from collections import Counter
from itertools import combinations

import pytest

from decompforge.barriers import is_tridivisible
from decompforge.core.errors import Failure, InvalidInputError, InvalidInstanceError
from decompforge.core.hypergraph import Hypergraph
from decompforge.harness import (
    TridivisibleEdit,
    generate,
    generate_codegree_3graph,
    generate_dense_graph,
    generate_latin_instance,
    generate_steiner_instance,
    make_tridivisible,
)


def test_make_tridivisible_k6_deletes_a_perfect_matching():
    result = make_tridivisible(Hypergraph.complete(6))
    assert isinstance(result, TridivisibleEdit)
    assert result.edits == (("delete", (0, 1)), ("delete", (2, 3)), ("delete", (4, 5)))
    assert set(result.graph.degrees()) == {4}
    assert result.to_dict() == {"edits": [["delete", [0, 1]], ["delete", [2, 3]], ["delete", [4, 5]]], "edges": 12}


def test_make_tridivisible_leaves_k7_alone():
    result = make_tridivisible(Hypergraph.complete(7))
    assert result.edits == ()
    assert result.graph == Hypergraph.complete(7)


def test_make_tridivisible_single_edge():
    result = make_tridivisible(Hypergraph.of(2, 2, [(0, 1)]))
    assert result.graph.m == 0


def test_make_tridivisible_deletes_cycle_for_edge_count():
    # K5 has even degrees but 10 edges; a 4-cycle goes
    result = make_tridivisible(Hypergraph.complete(5))
    assert isinstance(result, TridivisibleEdit)
    assert len(result.edits) == 4
    assert is_tridivisible(result.graph)


def test_make_tridivisible_budget():
    result = make_tridivisible(Hypergraph.complete(6), budget=2)
    assert isinstance(result, Failure)
    assert result.diagnostics == {"edits": 3, "budget": 2}


def test_make_tridivisible_without_short_cycle():
    ring = Hypergraph.of(10, 2, [(i, (i + 1) % 10) for i in range(10)])
    result = make_tridivisible(ring)
    assert isinstance(result, Failure)
    assert result.stage == "make_tridivisible"


def test_dense_graph_keeps_minimum_degree():
    G = generate_dense_graph(20, 0.9, seed=1)
    assert min(G.degrees()) >= 18
    assert G.m < 190
    assert G == generate_dense_graph(20, 0.9, seed=1)


def test_dense_graph_saturated_fraction_is_complete():
    assert generate_dense_graph(7, 1.0, seed=0) == Hypergraph.complete(7)


def test_dense_graph_rejects_fraction():
    with pytest.raises(InvalidInputError):
        generate_dense_graph(10, 0.0, seed=0)


def test_codegree_3graph_keeps_codegree():
    H = generate_codegree_3graph(12, 0.55, seed=1)
    codegree = Counter(p for e in H.edges for p in combinations(e, 2))
    assert min(codegree[p] for p in combinations(range(12), 2)) >= 7
    assert H.m < 220


def test_codegree_3graph_needs_n_divisible_by_3():
    with pytest.raises(InvalidInstanceError):
        generate_codegree_3graph(10, 0.55, seed=1)


def test_latin_instance_is_tripartite():
    H = generate_latin_instance(4, seed=2)
    assert (H.n, H.r, H.m) == (12, 3, 16)
    assert all(len({v // 4 for v in e}) == 3 for e in H.edges)


def test_steiner_instance():
    H = generate_steiner_instance(7)
    assert (H.n, H.m, H.r) == (21, 35, 3)


def test_generate_dispatches_by_name():
    assert generate("complete", n=6, r=3).m == 20
    assert generate("parity", n=6, odd_part=1).r == 3


def test_generate_unknown_name():
    with pytest.raises(InvalidInputError):
        generate("petersen")


def test_generate_bad_parameters():
    with pytest.raises(InvalidInputError):
        generate("complete", n=5, colour="red")
