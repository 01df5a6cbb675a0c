"""One cover-down step: cover every edge that leaves ``V_1`` using as little of ``G[V_1]`` as possible.

The step reserves a sparse random set ``H`` of cross edges, runs the nibble on
``G* = G - G[V_1] - H`` and then repairs the leave in two greedy passes and an exchange:

* every uncovered edge inside ``V*`` becomes a triangle through a vertex of ``V_1``
  whose two cross edges are still uncovered, edges of ``H`` first;
* every vertex ``x`` of ``V*`` pairs up its uncovered cross edges along a perfect
  matching of the unused edges of ``G[V_1]``;
* whatever the passes could not close is covered by an exchange search that may
  release triangles placed so far and spend further unused edges of ``G[V_1]``.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Any

import networkx as nx
import numpy as np

from decompforge.barriers.constructions import is_tridivisible
from decompforge.config import CoverDownParams, NibbleParams
from decompforge.core.errors import Failure, ImpossibleStateError, InvalidInstanceError, StageFailure
from decompforge.core.exchange import ExchangeSearch, FixedPool
from decompforge.core.graphs import adjacency, graph_from_edges, triangle_auxiliary, triangles_in
from decompforge.core.hypergraph import GraphEdge, Hypergraph, Triangle, pair, triangle_edges, triple
from decompforge.core.rng import derive_rng, derive_seed
from decompforge.iterative.boost import boost_triangles
from decompforge.nibble.processes import rodl_nibble
from decompforge.relaxations.simplex import Infeasible

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class CoverDownResult:
    """Triangles placed by a cover-down step and the edges left inside ``V_1``."""

    used: tuple[Triangle, ...]
    residual: Hypergraph
    stats: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "used": [list(t) for t in self.used],
            "residual": [list(e) for e in self.residual.sorted_edges()],
            "stats": dict(self.stats),
        }


def _selection_weights(
    G_star: Hypergraph, triangles: list[Triangle], prm: CoverDownParams
) -> dict[Triangle, Any] | None:
    if G_star.m > prm.boost_max_edges:
        logger.info("[iterative][boost] %d edges above boost_max_edges, using uniform weights", G_star.m)
        return None
    boosted = boost_triangles(G_star, triangles)
    if isinstance(boosted, Infeasible):
        return None
    return dict(boosted.weights)


def _nibble(G_star: Hypergraph, prm: CoverDownParams, seed: int) -> tuple[list[Triangle], bool]:
    triangles = triangles_in(G_star.n, G_star.edges)
    if not triangles:
        raise StageFailure.at("nibble", "the graph left for the nibble has no triangles", edges=G_star.m)
    weights = _selection_weights(G_star, triangles, prm)
    aux = triangle_auxiliary(G_star, triangles)
    aux_weights = None
    if weights is not None:
        aux_weights = {aux.hyperedge_of(t): w for t, w in weights.items()}
    result = rodl_nibble(aux.hypergraph, NibbleParams(seed=derive_seed(seed, "cover-down-nibble")), aux_weights)
    return [aux.triangle_of(e) for e in result.matching.sorted_edges()], weights is not None


def _first_greedy(
    uncovered: set[GraphEdge],
    reserved: set[GraphEdge],
    inside_star: Iterable[GraphEdge],
    V1: list[int],
    adj: list[set[int]],
    rng: np.random.Generator,
) -> tuple[list[Triangle], list[GraphEdge]]:
    placed: list[Triangle] = []
    deferred: list[GraphEdge] = []
    for u, v in sorted(inside_star):
        if (u, v) not in uncovered:
            continue
        common = adj[u] & adj[v]
        open_ = [w for w in V1 if w in common and pair(u, w) in uncovered and pair(v, w) in uncovered]
        candidates = [w for w in open_ if pair(u, w) in reserved and pair(v, w) in reserved] or open_
        if not candidates:
            deferred.append((u, v))
            continue
        w = candidates[int(rng.integers(len(candidates)))]
        t = triple(u, v, w)
        uncovered.difference_update(triangle_edges(t))
        placed.append(t)
    return placed, deferred


def _disjoint_perfect_matchings(available: nx.Graph, nodes: list[int], limit: int) -> list[list[GraphEdge]]:
    graph = available.subgraph(nodes).copy()
    found: list[list[GraphEdge]] = []
    while len(found) < limit:
        matching = nx.max_weight_matching(graph, maxcardinality=True)
        if 2 * len(matching) < len(nodes):
            break
        edges = sorted(pair(a, b) for a, b in matching)
        found.append(edges)
        graph.remove_edges_from(edges)
    return found


def _second_greedy(
    uncovered: set[GraphEdge],
    star: list[int],
    V1: set[int],
    inside: set[GraphEdge],
    prm: CoverDownParams,
    rng: np.random.Generator,
) -> tuple[list[Triangle], int, list[int]]:
    available = nx.Graph()
    available.add_nodes_from(V1)
    available.add_edges_from(inside)
    placed: list[Triangle] = []
    skipped: list[int] = []
    extracted = 0
    for x in star:
        links = sorted(w for w in V1 if pair(x, w) in uncovered)
        if not links:
            continue
        limit = max(prm.min_matchings, len(links))
        options = [] if len(links) % 2 else _disjoint_perfect_matchings(available, links, limit)
        if not options:
            skipped.append(x)
            continue
        extracted += len(options)
        chosen = options[int(rng.integers(len(options)))]
        for a, b in chosen:
            t = triple(x, a, b)
            uncovered.difference_update(triangle_edges(t))
            available.remove_edge(a, b)
            placed.append(t)
    return placed, extracted, skipped


def _repair(
    uncovered: set[GraphEdge],
    placed: list[Triangle],
    inside: set[GraphEdge],
    adj: list[set[int]],
    prm: CoverDownParams,
    seed: int,
) -> tuple[list[Triangle], dict[str, int]]:
    """Cover what the greedy passes left by releasing placed triangles and spending unused edges of ``G[V_1]``."""
    if not uncovered:
        return placed, {"repair_nodes": 0, "repair_released": 0}
    spent = {e for t in placed for e in triangle_edges(t)}
    search = ExchangeSearch(
        uncovered,
        adj,
        pool=FixedPool(placed),
        spare=inside - spent,
        optional=lambda e: e in inside,
        budget=prm.repair_budget,
        rng=derive_rng(seed, "repair"),
    )
    found = search.run()
    if found is None:
        raise StageFailure.at(
            "repair",
            "no exchange covers the edges the greedy passes left",
            witness=min(uncovered),
            left=len(uncovered),
            nodes=search.nodes,
            exhausted=search.exhausted,
        )
    released = set(found.released)
    kept = [t for t in placed if t not in released]
    return kept + list(found.placed), {"repair_nodes": found.nodes, "repair_released": len(released)}


def _cover_down(G: Hypergraph, V1: frozenset[int], prm: CoverDownParams, seed: int) -> CoverDownResult:
    if not is_tridivisible(G):
        raise InvalidInstanceError("cover-down needs a tridivisible graph")
    adj = adjacency(G)
    inside: set[GraphEdge] = {(e[0], e[1]) for e in G.edges if e[0] in V1 and e[1] in V1}
    cross: list[GraphEdge] = sorted((e[0], e[1]) for e in G.edges if (e[0] in V1) != (e[1] in V1))
    inside_star: set[GraphEdge] = {(e[0], e[1]) for e in G.edges if e[0] not in V1 and e[1] not in V1}
    if not cross and not inside_star:
        return CoverDownResult(used=(), residual=graph_from_edges(G.n, inside), stats={"reserved": 0})

    rng = derive_rng(seed, "cover-down")
    reserved = {cross[int(i)] for i in np.flatnonzero(rng.random(len(cross)) < prm.p)}
    G_star = graph_from_edges(G.n, (set(cross) - reserved) | inside_star)

    used, boosted = _nibble(G_star, prm, seed) if G_star.m else ([], False)
    uncovered: set[GraphEdge] = {(e[0], e[1]) for e in G.edges if (e[0], e[1]) not in inside}
    for t in used:
        uncovered.difference_update(triangle_edges(t))
    nibble_leave = len(uncovered) - len(reserved)

    first, deferred = _first_greedy(uncovered, reserved, inside_star, sorted(V1), adj, derive_rng(seed, "first-greedy"))
    star = sorted(v for v in range(G.n) if v not in V1)
    second, extracted, skipped = _second_greedy(
        uncovered, star, set(V1), inside, prm, derive_rng(seed, "second-greedy")
    )
    left = len(uncovered)
    placed, repaired = _repair(uncovered, used + first + second, inside, adj, prm, seed)

    covered = [e for t in placed for e in triangle_edges(t)]
    outside = {e for e in covered if e not in inside}
    if len(set(covered)) != len(covered) or outside != {(e[0], e[1]) for e in G.edges} - inside:
        raise ImpossibleStateError("cover-down did not cover every edge outside V1")
    consumed = {e for e in covered if e in inside}
    residual = graph_from_edges(G.n, inside - consumed)
    coverage = len(consumed) / len(inside) if inside else 0.0
    stats = {
        "reserved": len(reserved),
        "nibble_triangles": len(used),
        "nibble_leave": nibble_leave,
        "boosted": boosted,
        "first_greedy": len(first),
        "deferred": len(deferred),
        "second_greedy": len(second),
        "skipped": len(skipped),
        "matchings_extracted": extracted,
        "repair_required": left,
        **repaired,
        "inside_coverage": round(coverage, 4),
        "coverage_target": round(prm.p ** (1 / 3), 4),
        "residual_edges": residual.m,
    }
    if coverage > prm.p ** (1 / 3):
        logger.debug("[iterative][cover-down] inside coverage %.3f above p^(1/3)=%.3f", coverage, prm.p ** (1 / 3))
    logger.debug("[iterative][cover-down] |V1|=%d %s", len(V1), stats)
    return CoverDownResult(used=tuple(placed), residual=residual, stats=stats)


def cover_down(
    G: Hypergraph, V1: Iterable[int], prm: CoverDownParams | None = None, seed: int = 0
) -> CoverDownResult | Failure:
    """Cover every edge of ``G`` not inside ``V1`` exactly once by edge-disjoint triangles.

    Returns:
        The placed triangles, the unused edges inside ``V1`` and per-stage counts, or the
        :class:`Failure` of the stage that ran out of options.

    Raises:
        InvalidInstanceError: if ``G`` is not tridivisible.
    """
    try:
        return _cover_down(G, frozenset(V1), prm or CoverDownParams(), seed)
    except StageFailure as exc:
        logger.info("[iterative][cover-down][seed=%s] %s", seed, exc)
        return exc.failure
