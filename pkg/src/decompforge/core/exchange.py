"""Depth-first exchange search for triangle repairs.

Given required edges ``R`` that must be covered, the search places edge-disjoint
triangles ``B`` and may *release* triangles from a pool ``A``: a released triangle's
edges become available and its remaining edges join the requirement. On success

    union(B) == R  +  union(A)        (as edge multisets)

which is the common shape of an exclusive absorber, of absorbing a leave into
triangles already used, and of the hole of the algebraic construction. Spare edges may
be used once but need not be covered; they take no part in the identity. With an empty pool
and no budget the search is complete, which makes it an exact decomposition oracle.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from typing import Protocol

import numpy as np

from decompforge.core.hypergraph import GraphEdge, Triangle, pair, triangle_edges, triple

logger = logging.getLogger(__name__)

Option = tuple[Triangle, Triangle | None, Triangle | None]


class _BudgetExhausted(Exception):
    pass


class TrianglePool(Protocol):
    def releases(self, edge: GraphEdge, claimed: set[GraphEdge]) -> list[Triangle]:
        """Pool triangles through ``edge`` whose other two edges are still unclaimed."""
        ...


class FixedPool:
    """A fixed family of pairwise edge-disjoint triangles (e.g. triangles already used)."""

    def __init__(self, triangles: Iterable[Triangle]) -> None:
        self._by_edge: dict[GraphEdge, Triangle] = {}
        for t in triangles:
            for e in triangle_edges(t):
                self._by_edge[e] = t

    def releases(self, edge: GraphEdge, claimed: set[GraphEdge]) -> list[Triangle]:
        t = self._by_edge.get(edge)
        if t is None or any(e in claimed for e in triangle_edges(t) if e != edge):
            return []
        return [t]


class FreePool:
    """Any triangle of a host graph, capped at ``limit`` candidates per edge."""

    def __init__(self, adj: Sequence[set[int]], limit: int = 4, rng: np.random.Generator | None = None) -> None:
        self._adj = adj
        self._limit = limit
        self._rng = rng

    def releases(self, edge: GraphEdge, claimed: set[GraphEdge]) -> list[Triangle]:
        a, b = edge
        xs = sorted(self._adj[a] & self._adj[b])
        if self._rng is not None and len(xs) > 1:
            xs = [xs[i] for i in self._rng.permutation(len(xs))]
        out: list[Triangle] = []
        for x in xs:
            if pair(a, x) in claimed or pair(b, x) in claimed:
                continue
            out.append(triple(a, b, x))
            if len(out) >= self._limit:
                break
        return out


@dataclass(frozen=True, slots=True)
class ExchangeResult:
    placed: tuple[Triangle, ...]
    released: tuple[Triangle, ...]
    nodes: int
    spare: frozenset[GraphEdge] = frozenset()


class ExchangeSearch:
    """Fewest-options-first backtracking over the required edges.

    Args:
        required: Edges that must end up covered exactly once.
        adj: Adjacency of the graph the placed triangles must live in.
        pool: Releasable triangles; ``None`` forbids releases.
        allowed: Extra predicate a placed triangle must satisfy.
        claimed: Edges that may never be used (already covered elsewhere or reserved).
        budget: Maximum number of explored options; ``None`` searches exhaustively.
        max_released: Cap on the number of released triangles.
        spare: Edges that may be used at most once without being required.
        optional: Edges a released triangle hands back as spare instead of requiring them.
        rng: Shuffles options within a tier; ``None`` keeps lexicographic order.
    """

    def __init__(
        self,
        required: Iterable[GraphEdge],
        adj: Sequence[set[int]],
        *,
        pool: TrianglePool | None = None,
        allowed: Callable[[Triangle], bool] | None = None,
        claimed: Iterable[GraphEdge] = (),
        budget: int | None = None,
        max_released: int | None = None,
        spare: Iterable[GraphEdge] = (),
        optional: Callable[[GraphEdge], bool] | None = None,
        rng: np.random.Generator | None = None,
    ) -> None:
        self._uncovered: set[GraphEdge] = {pair(*e) for e in required}
        self._claimed: set[GraphEdge] = {pair(*e) for e in claimed} | self._uncovered
        self._spare: set[GraphEdge] = {pair(*e) for e in spare} - self._claimed
        self._optional = optional
        self._adj = adj
        self._pool = pool
        self._allowed = allowed
        self._budget = budget
        self._max_released = max_released
        self._rng = rng
        self._placed: list[Triangle] = []
        self._released: list[Triangle] = []
        self.nodes = 0
        self.exhausted = False

    def _usable(self, g: GraphEdge) -> list[Triangle | None]:
        if g in self._uncovered or g in self._spare:
            return [None]
        if g in self._claimed or self._pool is None:
            return []
        if self._max_released is not None and len(self._released) >= self._max_released:
            return []
        return list(self._pool.releases(g, self._claimed))

    def _count(self, e: GraphEdge) -> int:
        u, v = e
        count = 0
        for w in self._adj[u] & self._adj[v]:
            if self._allowed is not None and not self._allowed(triple(u, v, w)):
                continue
            if self._usable(pair(u, w)) and self._usable(pair(v, w)):
                count += 1
        return count

    def _options(self, e: GraphEdge) -> list[Option]:
        u, v = e
        tiers: list[list[Option]] = [[], [], []]
        for w in sorted(self._adj[u] & self._adj[v]):
            t = triple(u, v, w)
            if self._allowed is not None and not self._allowed(t):
                continue
            first = self._usable(pair(u, w))
            if not first:
                continue
            second = self._usable(pair(v, w))
            for p1 in first:
                for p2 in second:
                    if p1 is not None and p2 is not None and set(triangle_edges(p1)) & set(triangle_edges(p2)):
                        continue
                    tiers[(p1 is not None) + (p2 is not None)].append((t, p1, p2))
        if self._rng is not None:
            tiers = [[tier[i] for i in self._rng.permutation(len(tier))] for tier in tiers]
        return [opt for tier in tiers for opt in tier]

    def _choose_edge(self) -> GraphEdge | None:
        best: tuple[int, GraphEdge] | None = None
        for e in self._uncovered:
            key = (self._count(e), e)
            if best is None or key < best:
                best = key
                if key[0] == 0:
                    break
        assert best is not None
        return None if best[0] == 0 else best[1]

    def _solve(self) -> bool:
        if not self._uncovered:
            return True
        e = self._choose_edge()
        if e is None:
            return False
        for t, p1, p2 in self._options(e):
            self.nodes += 1
            if self._budget is not None and self.nodes > self._budget:
                raise _BudgetExhausted
            released = [p for p in (p1, p2) if p is not None]
            new_claimed = [h for p in released for h in triangle_edges(p) if h not in self._claimed]
            self._claimed.update(new_claimed)
            returned = [
                h
                for p in released
                for h in triangle_edges(p)
                if self._optional is not None and self._optional(h) and h not in self._spare
            ]
            self._spare.update(returned)
            new_uncovered = [
                h for p in released for h in triangle_edges(p) if h not in self._uncovered and h not in self._spare
            ]
            self._uncovered.update(new_uncovered)
            removed = [h for h in triangle_edges(t) if h in self._uncovered]
            self._uncovered.difference_update(removed)
            taken = [h for h in triangle_edges(t) if h in self._spare]
            self._spare.difference_update(taken)
            taken_claimed = [h for h in taken if h not in self._claimed]
            self._claimed.update(taken_claimed)
            self._placed.append(t)
            self._released.extend(released)
            if self._solve():
                return True
            del self._released[len(self._released) - len(released) :]
            self._placed.pop()
            self._claimed.difference_update(taken_claimed)
            self._spare.update(taken)
            self._uncovered.update(removed)
            self._uncovered.difference_update(new_uncovered)
            self._spare.difference_update(returned)
            self._claimed.difference_update(new_claimed)
        return False

    def run(self) -> ExchangeResult | None:
        try:
            found = self._solve()
        except _BudgetExhausted:
            self.exhausted = True
            logger.debug("[exchange] budget of %s nodes exhausted", self._budget)
            return None
        if not found:
            return None
        return ExchangeResult(
            placed=tuple(self._placed),
            released=tuple(self._released),
            nodes=self.nodes,
            spare=frozenset(self._spare),
        )
