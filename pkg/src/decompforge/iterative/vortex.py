"""Nested random vertex sets that the iterative pipeline pushes the graph down."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

from decompforge.core.errors import InvalidInputError
from decompforge.core.graphs import adjacency
from decompforge.core.hypergraph import Hypergraph
from decompforge.core.rng import derive_rng

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class LevelStats:
    """Triangle-degree spread of ``G[V_i]``: how far each level is from triangle-regular."""

    size: int
    edges: int
    min_triangle_degree: int
    max_triangle_degree: int
    mean_triangle_degree: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "size": self.size,
            "edges": self.edges,
            "min_triangle_degree": self.min_triangle_degree,
            "max_triangle_degree": self.max_triangle_degree,
            "mean_triangle_degree": round(self.mean_triangle_degree, 4),
        }


@dataclass(frozen=True, slots=True)
class Vortex:
    levels: tuple[frozenset[int], ...]
    theta: float
    stats: tuple[LevelStats, ...]

    @property
    def tau(self) -> int:
        return len(self.levels) - 1

    @property
    def last(self) -> frozenset[int]:
        return self.levels[-1]

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.levels)

    def to_dict(self) -> dict[str, Any]:
        return {"theta": self.theta, "sizes": list(self.sizes()), "levels": [s.to_dict() for s in self.stats]}


def level_stats(G: Hypergraph, level: frozenset[int]) -> LevelStats:
    adj = adjacency(G)
    degrees: list[int] = []
    for u, v in G.edges:
        if u in level and v in level:
            degrees.append(len(adj[u] & adj[v] & level))
    if not degrees:
        return LevelStats(len(level), 0, 0, 0, 0.0)
    return LevelStats(len(level), len(degrees), min(degrees), max(degrees), sum(degrees) / len(degrees))


def build_vortex(G: Hypergraph, theta: float, tau_cap: int = 16, seed: int = 0) -> Vortex:
    """Random nested sets ``V_0 = V(G) ⊋ V_1 ⊋ ... ⊋ V_tau`` with ``|V_i| = round(theta |V_{i-1}|)``.

    Shrinking stops at the first level with at most ``tau_cap`` vertices.

    Raises:
        InvalidInputError: if ``theta`` is not in ``(0, 1)`` or a level fails to shrink.
    """
    if not 0 < theta < 1:
        raise InvalidInputError(f"theta must lie in (0, 1), got {theta}")
    levels = [frozenset(range(G.n))]
    while len(levels[-1]) > tau_cap:
        current = sorted(levels[-1])
        size = int(theta * len(current) + 0.5)
        if size >= len(current):
            raise InvalidInputError(f"theta={theta} does not shrink a level of {len(current)} vertices")
        rng = derive_rng(seed, "vortex", len(levels))
        picks = rng.choice(len(current), size=size, replace=False)
        levels.append(frozenset(current[int(i)] for i in picks))
    stats = tuple(level_stats(G, level) for level in levels)
    logger.info("[iterative][vortex] sizes=%s", [len(level) for level in levels])
    return Vortex(levels=tuple(levels), theta=theta, stats=stats)
