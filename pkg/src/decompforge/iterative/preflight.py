"""Extendability diagnostics checked before the iterative pipeline runs. Warning-only."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

from decompforge.core.graphs import adjacency
from decompforge.core.hypergraph import GraphEdge, Hypergraph

logger = logging.getLogger(__name__)

# Desk-scale thresholds, as fractions of n^3 (K5 copies) and n (common neighbours).
K5_FRACTION = 0.001
COMMON_FRACTION = 0.1


@dataclass(frozen=True, slots=True)
class PreflightReport:
    min_k5: int
    min_common: int
    k5_threshold: float
    common_threshold: float
    weak_edges: tuple[GraphEdge, ...] = ()
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.warnings

    def to_dict(self) -> dict[str, Any]:
        return {
            "min_k5": self.min_k5,
            "min_common": self.min_common,
            "k5_threshold": self.k5_threshold,
            "common_threshold": self.common_threshold,
            "weak_edges": [list(e) for e in self.weak_edges],
            "warnings": list(self.warnings),
        }


def _k5_through(adj: list[set[int]], u: int, v: int) -> int:
    """Copies of K5 containing ``uv``: triangles inside the common neighbourhood."""
    common = sorted(adj[u] & adj[v])
    count = 0
    for i, a in enumerate(common):
        later = [b for b in common[i + 1 :] if b in adj[a]]
        for j, b in enumerate(later):
            count += sum(1 for c in later[j + 1 :] if c in adj[b])
    return count


def preflight(G: Hypergraph) -> PreflightReport:
    """Minimum K5 count and common-neighbour count over the edges of ``G``."""
    adj = adjacency(G)
    k5_threshold = K5_FRACTION * G.n**3
    common_threshold = COMMON_FRACTION * G.n
    k5s: list[int] = []
    commons: list[int] = []
    weak: list[GraphEdge] = []
    for u, v in G.sorted_edges():
        k5s.append(_k5_through(adj, u, v))
        commons.append(len(adj[u] & adj[v]))
        if k5s[-1] < k5_threshold or commons[-1] < common_threshold:
            weak.append((u, v))
    min_k5 = min(k5s, default=0)
    min_common = min(commons, default=0)
    warnings: list[str] = []
    if weak:
        warnings.append(f"{len(weak)} edges lie in fewer than {k5_threshold:.1f} K5 copies or lack common neighbours")
        logger.warning("[iterative][preflight] %s", warnings[-1])
    return PreflightReport(
        min_k5=min_k5,
        min_common=min_common,
        k5_threshold=k5_threshold,
        common_threshold=common_threshold,
        weak_edges=tuple(weak),
        warnings=warnings,
    )
