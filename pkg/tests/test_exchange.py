"""Tests for decompforge.core.exchange"""

from decompforge.core.exchange import ExchangeSearch, FixedPool, FreePool
from decompforge.core.graphs import adjacency
from decompforge.core.hypergraph import Hypergraph, TriangleDecomposition, triangle_edges
from decompforge.core.rng import derive_rng
from decompforge.core.verify import verify_triangle_decomposition


def test_exact_decomposition_of_k7():
    G = Hypergraph.complete(7)
    result = ExchangeSearch(G.sorted_edges(), adjacency(G)).run()
    assert result is not None
    assert not result.released
    assert verify_triangle_decomposition(G, TriangleDecomposition.of(result.placed)).accepted


def test_k5_has_no_decomposition():
    G = Hypergraph.complete(5)
    assert ExchangeSearch(G.sorted_edges(), adjacency(G)).run() is None


def test_budget_exhaustion_is_flagged():
    G = Hypergraph.complete(9)
    search = ExchangeSearch(G.sorted_edges(), adjacency(G), budget=1)
    assert search.run() is None
    assert search.exhausted


def test_release_from_fixed_pool():
    # the only triangles are (0,1,2), (0,1,3), (1,2,4), (0,2,5); covering the spokes forces (0,1,2) out
    used = [(0, 1, 2)]
    placed = [(0, 1, 3), (1, 2, 4), (0, 2, 5)]
    G = Hypergraph.graph(6, {e for t in used + placed for e in triangle_edges(t)})
    required = sorted({e for t in placed for e in triangle_edges(t)} - set(triangle_edges(used[0])))
    result = ExchangeSearch(required, adjacency(G), pool=FixedPool(used)).run()
    assert result is not None
    assert result.released == ((0, 1, 2),)
    assert sorted(result.placed) == sorted(placed)


def test_free_pool_respects_claimed_edges():
    G = Hypergraph.complete(5)
    pool = FreePool(adjacency(G), limit=2, rng=derive_rng(1, "pool"))
    out = pool.releases((0, 1), claimed={(0, 2), (1, 3)})
    assert out == [(0, 1, 4)]


def test_spare_edge_is_used_without_being_required():
    G = Hypergraph.complete(3)
    assert ExchangeSearch([(0, 1), (0, 2)], adjacency(G)).run() is None
    result = ExchangeSearch([(0, 1), (0, 2)], adjacency(G), spare=[(1, 2)]).run()
    assert result is not None
    assert result.placed == ((0, 1, 2),)
    assert result.spare == frozenset()


def test_released_optional_edges_return_to_spare():
    G = Hypergraph.graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    search = ExchangeSearch(
        [(0, 1), (0, 2)],
        adjacency(G),
        pool=FixedPool([(1, 2, 3)]),
        optional=lambda e: e in {(1, 3), (2, 3)},
    )
    result = search.run()
    assert result is not None
    assert result.placed == ((0, 1, 2),)
    assert result.released == ((1, 2, 3),)
    assert result.spare == frozenset({(1, 3), (2, 3)})
