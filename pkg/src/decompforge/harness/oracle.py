"""Exhaustive oracle for triangle decompositions of small graphs."""

from __future__ import annotations

import logging

from decompforge.barriers.constructions import is_tridivisible
from decompforge.core.errors import TooLargeError
from decompforge.core.exchange import ExchangeSearch
from decompforge.core.graphs import adjacency, require_graph
from decompforge.core.hypergraph import Hypergraph, TriangleDecomposition

logger = logging.getLogger(__name__)


def exact_triangle_decomposition(G: Hypergraph, max_vertices: int = 20) -> TriangleDecomposition | None:
    """A triangle decomposition of ``G`` or ``None`` if none exists.

    Complete backtracking over the edges (fewest covering triangles first, lexicographic
    within a tier); a non-tridivisible graph is answered without searching.

    Raises:
        TooLargeError: if ``G`` has more than ``max_vertices`` vertices.
    """
    require_graph(G)
    if G.n > max_vertices:
        raise TooLargeError(f"exact triangle decomposition is limited to {max_vertices} vertices, got {G.n}")
    if not is_tridivisible(G):
        return None
    search = ExchangeSearch(((e[0], e[1]) for e in G.edges), adjacency(G))
    found = search.run()
    logger.debug("[oracle] n=%d m=%d nodes=%d found=%s", G.n, G.m, search.nodes, found is not None)
    if found is None:
        return None
    return TriangleDecomposition.of(found.placed)
