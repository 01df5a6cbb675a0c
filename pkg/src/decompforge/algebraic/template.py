"""The template: every triangle of ``G`` whose three labels sum to zero.

Two labels fix the third, so distinct template triangles never share an edge.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Any

from decompforge.algebraic.labeling import Labeling
from decompforge.core.errors import ImpossibleStateError, InvalidInputError
from decompforge.core.graphs import adjacency, adjacency_of_edges
from decompforge.core.hypergraph import GraphEdge, Hypergraph, Triangle, triangle_edges, triple
from decompforge.core.octahedra import Octahedron, flip

__all__ = ["Octahedron", "Template", "flip", "template"]


@dataclass(frozen=True, slots=True)
class Template:
    labeling: Labeling
    triangles: tuple[Triangle, ...]
    _by_edge: dict[GraphEdge, Triangle] = dataclasses.field(init=False, repr=False, compare=False)
    _adj: list[set[int]] = dataclasses.field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        by_edge: dict[GraphEdge, Triangle] = {}
        for t in self.triangles:
            for e in triangle_edges(t):
                if e in by_edge:
                    raise ImpossibleStateError(f"template triangles {by_edge[e]} and {t} share edge {e}")
                by_edge[e] = t
        object.__setattr__(self, "_by_edge", by_edge)
        object.__setattr__(self, "_adj", adjacency_of_edges(self.labeling.n, by_edge))

    def edges(self) -> frozenset[GraphEdge]:
        """Edge set of ``G*``, the union of the template."""
        return frozenset(self._by_edge)

    def graph(self) -> Hypergraph:
        return Hypergraph.graph(self.labeling.n, self._by_edge)

    def adjacency(self) -> list[set[int]]:
        return self._adj

    def triangle_through(self, e: GraphEdge) -> Triangle | None:
        return self._by_edge.get(e)

    def __contains__(self, t: object) -> bool:
        return isinstance(t, tuple) and len(t) == 3 and self._by_edge.get((t[0], t[1])) == t

    def to_dict(self) -> dict[str, Any]:
        return {"labeling": self.labeling.to_dict(), "triangles": [list(t) for t in self.triangles]}


def template(G: Hypergraph, L: Labeling) -> Template:
    """Zero-sum triangles of ``G`` under ``L``."""
    if L.n < G.n:
        raise InvalidInputError(f"labeling covers {L.n} vertices, graph has {G.n}")
    adj = adjacency(G)
    found: set[Triangle] = set()
    for u, v in G.edges:
        w = L.vertex_of(L.label(u) ^ L.label(v))
        if w is not None and w < G.n and w in adj[u] and w in adj[v]:
            found.add(triple(u, v, w))
    return Template(labeling=L, triangles=tuple(sorted(found)))
