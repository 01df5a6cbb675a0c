"""Exclusive absorbers for leaves on the last vortex level."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from typing import Any

from decompforge.barriers.constructions import is_tridivisible
from decompforge.core.errors import ImpossibleStateError, InvalidInputError
from decompforge.core.exchange import ExchangeSearch, FreePool
from decompforge.core.graphs import adjacency, complete_graph_edges, graph_from_edges
from decompforge.core.hypergraph import GraphEdge, Hypergraph, Triangle, pair, triangle_edges
from decompforge.core.rng import derive_rng

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class ExclusiveAbsorber:
    """Triangles ``A_S`` set aside for ``S`` and a decomposition ``B_S`` of ``S + A_S``.

    Swapping ``A_S`` for ``B_S`` in a decomposition that contains ``A_S`` absorbs ``S``.
    """

    S: frozenset[GraphEdge]
    A: tuple[Triangle, ...]
    B: tuple[Triangle, ...]

    def __post_init__(self) -> None:
        a_edges = [e for t in self.A for e in triangle_edges(t)]
        b_edges = [e for t in self.B for e in triangle_edges(t)]
        if len(set(a_edges)) != len(a_edges) or set(a_edges) & self.S:
            raise ImpossibleStateError("absorber triangles overlap each other or the absorbed graph")
        if len(set(b_edges)) != len(b_edges) or set(b_edges) != self.S | set(a_edges):
            raise ImpossibleStateError("absorber decomposition does not cover S and A exactly once")

    def edges(self) -> set[GraphEdge]:
        return {e for t in self.A for e in triangle_edges(t)}

    def to_dict(self) -> dict[str, Any]:
        return {
            "S": [list(e) for e in sorted(self.S)],
            "A": [list(t) for t in self.A],
            "B": [list(t) for t in self.B],
        }


def exclusive_absorber(
    S: Hypergraph,
    host: Hypergraph,
    forbidden: Iterable[GraphEdge] = (),
    budget: int | None = None,
    seed: int = 0,
) -> ExclusiveAbsorber | None:
    """Search ``host`` for an exclusive absorber of ``S`` avoiding ``forbidden`` edges.

    Returns ``None`` when the search space (or the node budget) is exhausted.

    Raises:
        InvalidInputError: if ``S`` is not tridivisible or not contained in ``host``.
    """
    if not is_tridivisible(S):
        raise InvalidInputError("only tridivisible graphs have triangle decompositions to absorb into")
    if not S.edges <= host.edges:
        raise InvalidInputError("the absorbed graph must be a subgraph of the host")
    adj = adjacency(host)
    rng = derive_rng(seed, "exclusive-absorber")
    search = ExchangeSearch(
        (pair(*e) for e in S.edges),
        adj,
        pool=FreePool(adj, rng=rng),
        claimed=forbidden,
        budget=budget,
        rng=rng,
    )
    found = search.run()
    if found is None:
        logger.debug("[iterative][absorber] none for %d edges (nodes=%d)", S.m, search.nodes)
        return None
    return ExclusiveAbsorber(S=frozenset(pair(*e) for e in S.edges), A=tuple(sorted(found.released)), B=found.placed)


def tridivisible_subgraphs(vertices: Iterable[int], host: Hypergraph) -> Iterator[frozenset[GraphEdge]]:
    """Every nonempty tridivisible subgraph of ``host`` on the given vertices."""
    vs = sorted(vertices)
    pool = sorted(e for e in complete_graph_edges(vs) if e in host.edges)
    for mask in range(1, 1 << len(pool)):
        chosen = [pool[i] for i in range(len(pool)) if mask >> i & 1]
        if len(chosen) % 3:
            continue
        degree = dict.fromkeys(vs, 0)
        for u, v in chosen:
            degree[u] += 1
            degree[v] += 1
        if all(d % 2 == 0 for d in degree.values()):
            yield frozenset(chosen)


def reserve_absorbers(
    host: Hypergraph, last: Iterable[int], budget: int | None, seed: int
) -> dict[frozenset[GraphEdge], ExclusiveAbsorber] | None:
    """Pairwise edge-disjoint absorbers for every tridivisible subgraph on ``last``.

    Each ``A_S`` avoids the complete graph on ``last``. Returns ``None`` as soon as one
    subgraph has no absorber left.
    """
    vs = sorted(last)
    forbidden: set[GraphEdge] = set(complete_graph_edges(vs))
    absorbers: dict[frozenset[GraphEdge], ExclusiveAbsorber] = {}
    for k, S in enumerate(tridivisible_subgraphs(vs, host)):
        graph = graph_from_edges(host.n, S)
        found = exclusive_absorber(graph, host, forbidden - S, budget=budget, seed=seed + k)
        if found is None:
            logger.info("[iterative][absorber] no exclusive absorber for %s", sorted(S))
            return None
        forbidden |= found.edges()
        absorbers[S] = found
    logger.info("[iterative][absorber] reserved %d exclusive absorbers on %d vertices", len(absorbers), len(vs))
    return absorbers
