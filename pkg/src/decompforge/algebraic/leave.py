"""Covering the leave of the nibble with triangles that borrow template edges.

The greedy cover takes two template edges per leave edge, each from a different
template triangle. When it runs out of choices, :func:`exchange_leave` searches for a
cover that releases template triangles instead, and hands back the matching hole.
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Any

from decompforge.algebraic.hole import Hole
from decompforge.algebraic.template import Template
from decompforge.core.errors import Failure, ImpossibleStateError, InvalidInputError
from decompforge.core.exchange import ExchangeSearch, FixedPool
from decompforge.core.graphs import adjacency
from decompforge.core.hypergraph import GraphEdge, Hypergraph, Triangle, pair, triangle_edges, triple
from decompforge.core.rng import derive_rng

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class LeaveCover:
    """Triangles ``M^c`` through the leave; their edges in ``G*`` form the spill."""

    triangles: tuple[Triangle, ...]
    spill: frozenset[GraphEdge]

    def max_spill_degree(self) -> int:
        degree: Counter[int] = Counter(v for e in self.spill for v in e)
        return max(degree.values(), default=0)

    def to_dict(self) -> dict[str, Any]:
        return {"triangles": [list(t) for t in self.triangles], "spill": [list(e) for e in sorted(self.spill)]}


@dataclass(frozen=True, slots=True)
class LeaveExchange:
    cover: LeaveCover
    hole: Hole
    nodes: int


def _leave_edges(leave: Iterable[GraphEdge], T: Template) -> list[GraphEdge]:
    edges = sorted(pair(*e) for e in leave)
    gstar = T.edges()
    clash = [e for e in edges if e in gstar]
    if clash:
        raise InvalidInputError(f"leave edge {clash[0]} lies in the template graph")
    return edges


def cover_leave(leave: Iterable[GraphEdge], T: Template, seed: int) -> LeaveCover | Failure:
    """Cover each leave edge ``uv`` by a triangle ``uvw`` whose other edges lie in ``G*``.

    Leave edges are handled in canonical order and ``w`` is drawn uniformly among the
    legal choices: both spill edges unused, and neither in a template triangle that
    already holds a spill edge.

    Raises:
        InvalidInputError: if a leave edge lies in ``G*``.
    """
    edges = _leave_edges(leave, T)
    adj = T.adjacency()
    rng = derive_rng(seed, "cover-leave")
    spill: set[GraphEdge] = set()
    hit: set[Triangle] = set()
    placed: list[Triangle] = []
    for u, v in edges:
        options: list[int] = []
        for w in sorted(adj[u] & adj[v]):
            a, b = pair(u, w), pair(v, w)
            ta, tb = T.triangle_through(a), T.triangle_through(b)
            if a in spill or b in spill or ta in hit or tb in hit or ta == tb:
                continue
            options.append(w)
        if not options:
            return Failure(
                stage="cover_leave",
                reason="no legal triangle left for this leave edge",
                witness=(u, v),
                diagnostics={"covered": len(placed), "leave": len(edges), "template": len(T.triangles)},
            )
        w = options[int(rng.integers(len(options)))]
        a, b = pair(u, w), pair(v, w)
        spill.update((a, b))
        hit.update(t for t in (T.triangle_through(a), T.triangle_through(b)) if t is not None)
        placed.append(triple(u, v, w))
    result = LeaveCover(triangles=tuple(placed), spill=frozenset(spill))
    logger.debug("[algebraic][cover-leave] %d triangles, spill max degree %d", len(placed), result.max_spill_degree())
    return result


def exchange_leave(
    leave: Iterable[GraphEdge],
    T: Template,
    G: Hypergraph,
    taken: Iterable[Triangle] = (),
    budget: int | None = None,
    seed: int = 0,
) -> LeaveExchange | Failure:
    """Cover the leave inside ``G`` by releasing template triangles.

    A template edge becomes usable only by releasing its template triangle, whose other
    edges must then be covered as well; edges of the ``taken`` triangles are never used.
    Placed triangles through a leave edge form the cover. The others lie inside ``G*``
    and, with the released triangles, make up a hole that frees exactly the spill. A
    cover triangle may hold two leave edges, and several spill edges may share a
    template triangle.

    Raises:
        InvalidInputError: if a leave edge lies in ``G*``.
    """
    edges = _leave_edges(leave, T)
    search = ExchangeSearch(
        edges,
        adjacency(G),
        pool=FixedPool(T.triangles),
        allowed=lambda t: t not in T,
        claimed=(e for t in taken for e in triangle_edges(t)),
        budget=budget,
        rng=derive_rng(seed, "leave-exchange"),
    )
    found = search.run()
    if found is None:
        return Failure(
            stage="cover_leave",
            reason="no exchange over the template covers the leave",
            witness=edges[0] if edges else None,
            diagnostics={"nodes": search.nodes, "exhausted": search.exhausted, "leave": len(edges)},
        )
    leave_set = set(edges)
    cover = tuple(t for t in found.placed if any(e in leave_set for e in triangle_edges(t)))
    spill = frozenset(e for t in cover for e in triangle_edges(t) if e not in leave_set)
    inner = frozenset(t for t in found.placed if t not in cover)
    hole = Hole(outer=frozenset(found.released), inner=inner, via="leave_exchange")
    if not hole.holds_for(spill):
        raise ImpossibleStateError("exchanged leave cover does not balance against the released template")
    logger.info(
        "[algebraic][cover-leave] exchange covered %d leave edges with %d triangles, released %d (nodes=%d)",
        len(edges),
        len(cover),
        len(found.released),
        found.nodes,
    )
    return LeaveExchange(cover=LeaveCover(triangles=cover, spill=spill), hole=hole, nodes=found.nodes)
