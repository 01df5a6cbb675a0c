"""Holes in the template: template triangles ``M^o`` and triangles ``M^i`` with
``union(M^o) == S + union(M^i)`` as edge multisets.

Removing ``M^o`` from the template and adding ``M^i`` leaves exactly the edges of ``S``
uncovered, which the leave cover already uses.
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import Any, Literal

from decompforge.algebraic.template import Template
from decompforge.core.errors import InvalidInputError
from decompforge.core.exchange import ExchangeSearch, FixedPool
from decompforge.core.hypergraph import GraphEdge, Triangle, pair, triangle_edges
from decompforge.core.rng import derive_rng

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Hole:
    outer: frozenset[Triangle]
    inner: frozenset[Triangle]
    via: Literal["signed", "hole_search", "leave_exchange"]

    def holds_for(self, S: Iterable[GraphEdge]) -> bool:
        outer = Counter(e for t in self.outer for e in triangle_edges(t))
        inner = Counter(e for t in self.inner for e in triangle_edges(t))
        return outer == inner + Counter(pair(*e) for e in S)

    def to_dict(self) -> dict[str, Any]:
        return {
            "outer": [list(t) for t in sorted(self.outer)],
            "inner": [list(t) for t in sorted(self.inner)],
            "via": self.via,
        }


def extract_hole(weights: Mapping[Triangle, int], T: Template, S: Iterable[GraphEdge]) -> Hole | None:
    """Read a hole off a weighting whose positive side is template-only.

    Requires every weight in ``{-1, +1}``, positive triangles in the template and
    negative triangles pairwise edge-disjoint; ``None`` otherwise.
    """
    if any(abs(w) != 1 for w in weights.values()):
        return None
    outer = frozenset(t for t, w in weights.items() if w > 0)
    inner = frozenset(t for t, w in weights.items() if w < 0)
    if not all(t in T for t in outer):
        return None
    inner_edges = [e for t in inner for e in triangle_edges(t)]
    if len(inner_edges) != len(set(inner_edges)):
        return None
    hole = Hole(outer=outer, inner=inner, via="signed")
    return hole if hole.holds_for(S) else None


def find_hole(S: Iterable[GraphEdge], T: Template, budget: int | None, seed: int) -> Hole | None:
    """Search for a hole directly.

    The template triangles through ``S`` are opened; the rest of their edges must be
    covered by non-template triangles of ``G*``, which may open further template triangles.

    Raises:
        InvalidInputError: if an edge of ``S`` is not in ``G*``.
    """
    target = {pair(*e) for e in S}
    opened: set[Triangle] = set()
    for e in sorted(target):
        t = T.triangle_through(e)
        if t is None:
            raise InvalidInputError(f"edge {e} is not in G*")
        opened.add(t)
    if not opened:
        return Hole(outer=frozenset(), inner=frozenset(), via="hole_search")
    required = {e for t in opened for e in triangle_edges(t)} - target
    search = ExchangeSearch(
        required,
        T.adjacency(),
        pool=FixedPool(t for t in T.triangles if t not in opened),
        allowed=lambda t: t not in T,
        claimed=target,
        budget=budget,
        rng=derive_rng(seed, "hole-search"),
    )
    found = search.run()
    if found is None:
        logger.info("[algebraic][hole] no hole through %d template triangles (nodes=%d)", len(opened), search.nodes)
        return None
    return Hole(outer=frozenset(opened | set(found.released)), inner=frozenset(found.placed), via="hole_search")
