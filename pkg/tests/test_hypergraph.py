"""Tests for decompforge.core.hypergraph and decompforge.core.codec"""

from fractions import Fraction
from pathlib import Path

import pytest

from decompforge.core.codec import (
    canonical_text,
    certificate_kind,
    digest,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    load_json,
    save_instance,
    weights_from_dict,
    weights_to_dict,
)
from decompforge.core.errors import InvalidInputError, InvalidInstanceError
from decompforge.core.hypergraph import Hypergraph, Matching, TriangleDecomposition, triangle_edges


def test_edges_are_canonical():
    H = Hypergraph.of(6, 3, [[2, 1, 0], [5, 3, 4]])
    assert H.sorted_edges() == [(0, 1, 2), (3, 4, 5)]
    assert H.has_edge([1, 2, 0])
    assert H.m == 2


def test_complete_counts():
    assert Hypergraph.complete(7).m == 21
    assert Hypergraph.complete(6, 3).m == 20
    assert Hypergraph.complete(7).degrees() == [6] * 7


@pytest.mark.parametrize(
    "edges",
    [
        [[0, 1, 1]],  # repeated vertex
        [[0, 1]],  # wrong size
        [[0, 1, 9]],  # out of range
        [[0, 1, 2], [2, 1, 0]],  # duplicate
    ],
)
def test_malformed_edges_are_rejected(edges):
    with pytest.raises(InvalidInstanceError):
        Hypergraph.of(6, 3, edges)


def test_without_and_induced():
    K4 = Hypergraph.complete(4)
    assert K4.without([(0, 1)]).m == 5
    assert K4.induced([0, 1, 2]).sorted_edges() == [(0, 1), (0, 2), (1, 2)]
    assert K4.covered_vertices() == frozenset(range(4))


def test_relabel_drops_outside_edges():
    H, back = Hypergraph.complete(5).relabel([4, 2, 0])
    assert H.n == 3
    assert H.m == 3
    assert back == [4, 2, 0]


def test_matching_and_decomposition_values():
    M = Matching.of([[2, 1, 0], [3, 4, 5]])
    assert M.size == 2
    assert M.vertices() == frozenset(range(6))
    D = TriangleDecomposition.of([[2, 0, 1]])
    assert D.sorted_triangles() == [(0, 1, 2)]
    assert sorted(D.edges()) == list(triangle_edges((0, 1, 2)))


def test_instance_document_roundtrip(tmp_path: Path):
    H = Hypergraph.complete(5, 3)
    path = save_instance(tmp_path / "h.json", H)
    assert load_instance(path) == H
    assert instance_from_dict(instance_to_dict(H)) == H


def test_digest_ignores_edge_order():
    a = Hypergraph.of(4, 2, [[0, 1], [2, 3]])
    b = Hypergraph.of(4, 2, [[3, 2], [1, 0]])
    assert digest(a) == digest(b)
    assert digest(a) != digest(Hypergraph.of(4, 2, [[0, 1]]))


def test_canonical_text_is_compact_and_sorted():
    assert canonical_text({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'


def test_weights_document():
    doc = weights_to_dict({(0, 1, 2): Fraction(1, 5)})
    assert doc == {"weights": [[[0, 1, 2], 1, 5]]}
    assert weights_from_dict(doc) == {(0, 1, 2): Fraction(1, 5)}


def test_malformed_documents(tmp_path: Path):
    with pytest.raises(InvalidInputError):
        instance_from_dict({"n": 3})
    with pytest.raises(InvalidInputError):
        certificate_kind({"edges": []})
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    with pytest.raises(InvalidInputError):
        load_json(bad)
    with pytest.raises(InvalidInputError):
        load_json(tmp_path / "missing.json")
