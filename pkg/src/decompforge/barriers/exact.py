"""Exhaustive matching oracles for small hypergraphs."""

from __future__ import annotations

import logging

from decompforge.core.errors import TooLargeError
from decompforge.core.hypergraph import Edge, Hypergraph, Matching

logger = logging.getLogger(__name__)


class MatchingBranchAndBound:
    """Maximum matching by branching on the lowest undecided vertex.

    Each vertex is either matched by an edge whose smallest vertex it is, or skipped for
    good. A branch is cut when even matching every remaining vertex could not beat the
    best matching found so far.
    """

    def __init__(self, H: Hypergraph) -> None:
        self.H = H
        self._by_min: list[list[Edge]] = [[] for _ in range(H.n)]
        for e in H.sorted_edges():
            self._by_min[e[0]].append(e)
        self._covered = [False] * H.n
        self._current: list[Edge] = []
        self.best: list[Edge] = []
        self._target = H.n // H.r if H.r else 0
        self.nodes = 0

    def _branch(self, v: int) -> bool:
        self.nodes += 1
        n, r = self.H.n, self.H.r
        while v < n and self._covered[v]:
            v += 1
        remaining = sum(1 for u in range(v, n) if not self._covered[u])
        if len(self._current) + remaining // r <= len(self.best):
            return False
        if v >= n:
            self.best = list(self._current)
            return len(self.best) == self._target
        for e in self._by_min[v]:
            if any(self._covered[u] for u in e):
                continue
            for u in e:
                self._covered[u] = True
            self._current.append(e)
            done = self._branch(v + 1)
            self._current.pop()
            for u in e:
                self._covered[u] = False
            if done:
                return True
        if len(self._current) > len(self.best):
            self.best = list(self._current)
            if len(self.best) == self._target:
                return True
        return self._branch(v + 1)

    def run(self) -> Matching:
        if self.H.m:
            self._branch(0)
        return Matching.of(self.best)


def exact_max_matching(H: Hypergraph, max_vertices: int = 15) -> Matching:
    """Maximum matching with lexicographic tie-break among equally large ones found first."""
    if H.n > max_vertices:
        raise TooLargeError(f"exact matching is limited to {max_vertices} vertices, got {H.n}")
    search = MatchingBranchAndBound(H)
    result = search.run()
    logger.debug("[barriers][exact] n=%d m=%d size=%d nodes=%d", H.n, H.m, result.size, search.nodes)
    return result


def count_perfect_matchings(H: Hypergraph) -> int:
    """Number of perfect matchings; the lowest uncovered vertex must be matched at every step."""
    if H.r == 0 or H.n % H.r:
        return 0
    incident: list[list[Edge]] = [[] for _ in range(H.n)]
    for e in H.sorted_edges():
        incident[e[0]].append(e)
    covered = [False] * H.n

    def count(v: int) -> int:
        while v < H.n and covered[v]:
            v += 1
        if v == H.n:
            return 1
        total = 0
        for e in incident[v]:
            if any(covered[u] for u in e):
                continue
            for u in e:
                covered[u] = True
            total += count(v + 1)
            for u in e:
                covered[u] = False
        return total

    return count(0)
