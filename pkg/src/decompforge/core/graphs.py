"""Graph-specific helpers shared by the triangle pipelines, backed by networkx."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from itertools import takewhile

import networkx as nx

from decompforge.core.errors import InvalidInstanceError
from decompforge.core.hypergraph import GraphEdge, Hypergraph, Triangle, pair, triangle_edges


def require_graph(G: Hypergraph) -> None:
    if G.r != 2:
        raise InvalidInstanceError(f"expected a graph (r=2), got uniformity {G.r}")


def nx_graph(n: int, edges: Iterable[tuple[int, ...]]) -> nx.Graph:
    """An ``nx.Graph`` on vertices ``0..n-1``."""
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from((e[0], e[1]) for e in edges)
    return g


def to_networkx(G: Hypergraph) -> nx.Graph:
    require_graph(G)
    return nx_graph(G.n, G.edges)


def adjacency(G: Hypergraph) -> list[set[int]]:
    g = to_networkx(G)
    return [set(g.adj[v]) for v in range(G.n)]


def adjacency_of_edges(n: int, edges: Iterable[GraphEdge]) -> list[set[int]]:
    g = nx_graph(n, edges)
    return [set(g.adj[v]) for v in range(n)]


def triangles_of(G: Hypergraph) -> list[Triangle]:
    """All triangles of a graph in lexicographic order."""
    return triangles_in(G.n, G.edges)


def triangles_in(n: int, edges: Iterable[tuple[int, ...]]) -> list[Triangle]:
    cliques = nx.enumerate_all_cliques(nx_graph(n, edges))
    small = takewhile(lambda c: len(c) <= 3, cliques)
    return sorted((a, b, c) for a, b, c in (sorted(q) for q in small if len(q) == 3))


def triangle_degrees(G: Hypergraph, triangles: Iterable[Triangle] | None = None) -> dict[GraphEdge, int]:
    """Number of (given) triangles through each edge of ``G``; edges in none map to 0."""
    counts: dict[GraphEdge, int] = {(e[0], e[1]): 0 for e in G.edges}
    for t in triangles if triangles is not None else triangles_of(G):
        for e in triangle_edges(t):
            if e in counts:
                counts[e] += 1
    return counts


def complete_graph_edges(vertices: Iterable[int]) -> set[GraphEdge]:
    return {pair(u, v) for u, v in nx.complete_graph(sorted(vertices)).edges}


def graph_from_edges(n: int, edges: Iterable[GraphEdge]) -> Hypergraph:
    return Hypergraph(n=n, r=2, edges=frozenset(pair(u, v) for u, v in edges))


@dataclass(frozen=True, slots=True)
class TriangleAuxiliary:
    """The 3-graph on the edges of ``G`` whose hyperedges are triangles.

    Its perfect matchings are exactly the triangle decompositions of ``G``.
    """

    hypergraph: Hypergraph
    edge_index: dict[GraphEdge, int]
    edge_list: list[GraphEdge]

    def triangle_of(self, hyperedge: tuple[int, ...]) -> Triangle:
        vertices = {v for i in hyperedge for v in self.edge_list[i]}
        a, b, c = sorted(vertices)
        return (a, b, c)

    def hyperedge_of(self, t: Triangle) -> tuple[int, ...]:
        return tuple(sorted(self.edge_index[e] for e in triangle_edges(t)))


def triangle_auxiliary(G: Hypergraph, triangles: Iterable[Triangle] | None = None) -> TriangleAuxiliary:
    require_graph(G)
    edge_list = G.sorted_edges()
    edge_index = {(e[0], e[1]): i for i, e in enumerate(edge_list)}
    hyperedges = [
        tuple(sorted(edge_index[e] for e in triangle_edges(t)))
        for t in (triangles if triangles is not None else triangles_of(G))
    ]
    aux = Hypergraph(n=len(edge_list), r=3, edges=frozenset(hyperedges))
    return TriangleAuxiliary(
        hypergraph=aux,
        edge_index=edge_index,
        edge_list=[(e[0], e[1]) for e in edge_list],
    )
