"""Fractional perfect matchings and fractional triangle decompositions."""

from __future__ import annotations

import logging
from collections.abc import Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from decompforge.core.codec import weights_to_dict
from decompforge.core.errors import InvalidInputError
from decompforge.core.graphs import require_graph, triangles_of
from decompforge.core.hypergraph import Edge, GraphEdge, Hypergraph, canonical, triangle_edges
from decompforge.relaxations.simplex import Infeasible, solve_feasibility

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class FractionalSolution:
    """Non-negative exact weights on edges (matchings) or triangles (decompositions)."""

    weights: dict[Edge, Fraction] = field(default_factory=dict)

    def support(self) -> list[Edge]:
        return sorted(e for e, w in self.weights.items() if w)

    def vertex_sums(self) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for e, w in self.weights.items():
            for v in e:
                out[v] = out.get(v, Fraction(0)) + w
        return out

    def edge_sums(self) -> dict[GraphEdge, Fraction]:
        out: dict[GraphEdge, Fraction] = {}
        for t, w in self.weights.items():
            for e in triangle_edges(t):
                out[e] = out.get(e, Fraction(0)) + w
        return out

    def to_dict(self) -> dict[str, Any]:
        return weights_to_dict(self.weights)


def _solve(
    constraints: Sequence[Hashable],
    columns: Sequence[Edge],
    incidence: Mapping[Hashable, list[int]],
    cancel: object | None,
) -> FractionalSolution | Infeasible:
    """Every constraint sums to exactly 1 over its incident columns."""
    for key in constraints:
        if not incidence.get(key):
            return Infeasible(certificate={key: Fraction(1)}, reason=f"constraint {key} has no incident column")
    degrees = {len(incidence[key]) for key in constraints}
    if len(degrees) == 1:
        (d,) = degrees
        # Every constraint sees exactly d columns, so weight 1/d everywhere is exact.
        return FractionalSolution(weights={column: Fraction(1, d) for column in columns})
    rows = [{j: 1 for j in incidence[key]} for key in constraints]
    result = solve_feasibility(rows, [1] * len(rows), len(columns), cancel=cancel)
    if isinstance(result, Infeasible):
        return Infeasible(certificate={constraints[i]: y for i, y in result.certificate.items()}, reason=result.reason)
    return FractionalSolution(weights={columns[j]: value for j, value in result.items()})


def fractional_pm(H: Hypergraph, cancel: object | None = None) -> FractionalSolution | Infeasible:
    """Edge weights with total exactly 1 at every vertex, or a certified infeasibility."""
    columns = H.sorted_edges()
    incidence: dict[Hashable, list[int]] = {v: [] for v in range(H.n)}
    for j, e in enumerate(columns):
        for v in e:
            incidence[v].append(j)
    result = _solve(list(range(H.n)), columns, incidence, cancel)
    logger.info(
        "[relaxations][pm] n=%d m=%d -> %s", H.n, H.m, "infeasible" if isinstance(result, Infeasible) else "feasible"
    )
    return result


def fractional_triangle_decomposition(
    G: Hypergraph,
    support: Iterable[Sequence[int]] | None = None,
    cancel: object | None = None,
) -> FractionalSolution | Infeasible:
    """Triangle weights with total exactly 1 on every edge of ``G``.

    Args:
        G: Host graph.
        support: Restrict the weights to these triangles (all triangles of ``G`` by default).
        cancel: Optional cancellation token forwarded to the simplex.

    Raises:
        InvalidInputError: if a support triangle is not a triangle of ``G``.
    """
    require_graph(G)
    if support is None:
        columns: list[Edge] = list(triangles_of(G))
    else:
        columns = sorted({canonical(t) for t in support})
        for t in columns:
            if len(t) != 3 or not all(e in G.edges for e in triangle_edges(t)):
                raise InvalidInputError(f"support triangle {list(t)} is not a triangle of the host")
    constraints = G.sorted_edges()
    incidence: dict[Hashable, list[int]] = {e: [] for e in constraints}
    for j, t in enumerate(columns):
        for e in triangle_edges(t):
            incidence[e].append(j)
    result = _solve(constraints, columns, incidence, cancel)
    logger.info(
        "[relaxations][triangles] edges=%d support=%d -> %s",
        G.m,
        len(columns),
        "infeasible" if isinstance(result, Infeasible) else "feasible",
    )
    return result

