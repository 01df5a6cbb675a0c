"""Tests for decompforge.core.graphs"""

import networkx as nx
import pytest

from decompforge.core.errors import InvalidInstanceError
from decompforge.core.graphs import (
    adjacency,
    complete_graph_edges,
    to_networkx,
    triangle_auxiliary,
    triangle_degrees,
    triangles_in,
    triangles_of,
)
from decompforge.core.hypergraph import Hypergraph


def test_triangles_of_k5_in_lexicographic_order():
    found = triangles_of(Hypergraph.complete(5))
    assert len(found) == 10
    assert found == sorted(found)
    assert found[0] == (0, 1, 2)


def test_triangles_in_skips_open_paths():
    assert triangles_in(4, [(0, 1), (1, 2), (2, 3)]) == []
    assert triangles_in(4, [(0, 1), (1, 2), (0, 2), (2, 3)]) == [(0, 1, 2)]


def test_triangle_count_matches_networkx():
    G = Hypergraph.graph(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)])
    assert len(triangles_of(G)) == sum(nx.triangles(to_networkx(G)).values()) // 3


def test_adjacency_keeps_isolated_vertices():
    adj = adjacency(Hypergraph.graph(4, [(0, 1)]))
    assert adj == [{1}, {0}, set(), set()]


def test_adjacency_rejects_hypergraphs():
    with pytest.raises(InvalidInstanceError):
        adjacency(Hypergraph.complete(4, 3))


def test_complete_graph_edges_are_sorted_pairs():
    assert complete_graph_edges([5, 2, 7]) == {(2, 5), (2, 7), (5, 7)}
    assert complete_graph_edges([]) == set()


def test_triangle_degrees_on_k4():
    degrees = triangle_degrees(Hypergraph.complete(4))
    assert set(degrees.values()) == {2}


def test_auxiliary_round_trips_triangles(fano):
    aux = triangle_auxiliary(Hypergraph.complete(7), fano)
    assert aux.hypergraph.m == 7
    assert sorted(aux.triangle_of(aux.hyperedge_of(t)) for t in fano) == sorted(fano)
