"""Regularity boosting: fractional triangle decompositions read as selection weights."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence

from decompforge.core.errors import InvalidInputError
from decompforge.core.hypergraph import Hypergraph
from decompforge.relaxations.fractional import FractionalSolution, fractional_triangle_decomposition
from decompforge.relaxations.simplex import Infeasible

logger = logging.getLogger(__name__)


def boost_triangles(
    G: Hypergraph, T: Iterable[Sequence[int]], cancel: object | None = None
) -> FractionalSolution | Infeasible:
    """Weights on ``T`` giving every edge of ``G`` weighted triangle-degree exactly 1."""
    support = list(T)
    if not support:
        raise InvalidInputError("cannot boost an empty triangle family")
    result = fractional_triangle_decomposition(G, support=support, cancel=cancel)
    if isinstance(result, Infeasible):
        logger.warning("[iterative][boost] no perfect fractional decomposition on %d triangles", len(support))
    return result
