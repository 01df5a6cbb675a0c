"""Integral triangle decompositions over the integers.

An integral decomposition of ``S`` inside a host graph assigns integer weights (possibly
negative) to host triangles so that every host edge carries total weight 1 if it is in
``S`` and 0 otherwise. Existence is decided exactly by the Smith normal form of the
edge-triangle incidence matrix.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

from decompforge.config import RelaxationSettings
from decompforge.core.errors import CancelledError, InvalidInputError
from decompforge.core.exchange import ExchangeSearch
from decompforge.core.graphs import adjacency, require_graph, triangles_of
from decompforge.core.hypergraph import GraphEdge, Hypergraph, Triangle, triangle_edges
from decompforge.core.intlinalg import SmithSolver
from decompforge.core.octahedra import Octahedron, edge_sums, flip
from decompforge.core.rng import derive_rng

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class IntegralSolution:
    """Integer weights on host triangles; zero weights are never stored."""

    weights: dict[Triangle, int] = field(default_factory=dict)

    def edge_sums(self) -> dict[GraphEdge, int]:
        return {e: s for e, s in edge_sums(self.weights).items() if s}

    def vertex_load(self) -> dict[int, int]:
        """Sum of ``|w_T|`` over the triangles through each vertex."""
        return vertex_load(self.weights)

    def max_load(self) -> int:
        return max(self.vertex_load().values(), default=0)

    def decomposes(self, S: Hypergraph) -> bool:
        return self.edge_sums() == {(e[0], e[1]): 1 for e in S.edges}

    def to_dict(self) -> dict[str, Any]:
        return {"weights": [[list(t), w, 1] for t, w in sorted(self.weights.items())]}


@dataclass(frozen=True, slots=True)
class BoundFailure:
    """No solution within ``bound`` was reached; ``best`` is the lowest-load one seen."""

    best: IntegralSolution
    achieved: int
    bound: int
    iterations: int

    def to_dict(self) -> dict[str, Any]:
        return {"achieved": self.achieved, "bound": self.bound, "iterations": self.iterations, **self.best.to_dict()}


def vertex_load(weights: dict[Triangle, int]) -> dict[int, int]:
    load: dict[int, int] = {}
    for t, w in weights.items():
        for v in t:
            load[v] = load.get(v, 0) + abs(w)
    return load


class TriangleLattice:
    """Integer span of the triangle vectors of a host graph.

    Building it takes one Smith decomposition of the edge-triangle incidence matrix; each
    :meth:`decompose` call is then two matrix-vector products, which keeps exhaustive
    sweeps over many ``S`` cheap.

    Args:
        host: The graph whose triangles span the lattice.
        cancel: Optional token with ``is_set()``, polled around the decomposition.
    """

    def __init__(self, host: Hypergraph, cancel: object | None = None) -> None:
        require_graph(host)
        self.host = host
        self._index = {(e[0], e[1]): i for i, e in enumerate(host.sorted_edges())}
        self._triangles = triangles_of(host)
        _check_cancel(cancel, host)
        columns = [{self._index[e]: 1 for e in triangle_edges(t)} for t in self._triangles]
        self._solver = SmithSolver(columns, host.m)
        _check_cancel(cancel, host)
        logger.debug("[relaxations][lattice] host edges=%d rank=%d", host.m, self.rank)

    @property
    def rank(self) -> int:
        return self._solver.rank

    def decompose(self, S: Hypergraph) -> IntegralSolution | None:
        require_graph(S)
        missing = [e for e in S.edges if (e[0], e[1]) not in self._index]
        if missing:
            raise InvalidInputError(f"edge {list(min(missing))} of S is not in the host")
        x = self._solver.solve({self._index[(e[0], e[1])]: 1 for e in S.edges})
        if x is None:
            return None
        return IntegralSolution(weights={t: w for t, w in zip(self._triangles, x, strict=True) if w})


def _check_cancel(cancel: object | None, host: Hypergraph) -> None:
    is_set = getattr(cancel, "is_set", None)
    if is_set is not None and is_set():
        raise CancelledError(f"triangle lattice of a host with {host.m} edges cancelled")


@lru_cache(maxsize=8)
def _complete_lattice(n: int) -> TriangleLattice:
    return TriangleLattice(Hypergraph.complete(n))


def _lattice_for(S: Hypergraph, host: Hypergraph | None, cancel: object | None) -> TriangleLattice:
    if host is None:
        _check_cancel(cancel, S)
        return _complete_lattice(S.n)
    return TriangleLattice(_host_for(S, host), cancel=cancel)


def _host_for(S: Hypergraph, host: Hypergraph) -> Hypergraph:
    require_graph(host)
    if host.n < S.n:
        raise InvalidInputError(f"host has {host.n} vertices, S needs {S.n}")
    return host


def integral_triangle_decomposition(
    S: Hypergraph,
    host: Hypergraph | None = None,
    cancel: object | None = None,
) -> IntegralSolution | None:
    """Integer triangle weights over ``host`` (``K_n`` by default) summing to the indicator of ``S``.

    Returns ``None`` exactly when no integer solution exists.
    """
    require_graph(S)
    solution = _lattice_for(S, host, cancel).decompose(S)
    logger.info(
        "[relaxations][integral] |S|=%d -> %s", S.m, "none" if solution is None else f"{len(solution.weights)} triangles"
    )
    return solution


def _cost(weights: dict[Triangle, int]) -> tuple[int, int]:
    load = vertex_load(weights)
    return max(load.values(), default=0), sum(abs(w) for w in weights.values())


def reduce_weights(
    weights: dict[Triangle, int],
    adj: list[set[int]],
    bound: int,
    iterations: int,
    seed: int,
) -> tuple[dict[Triangle, int], int]:
    """Hill-climb with octahedron flips towards per-vertex load at most ``bound``.

    Each step picks a weighted triangle ``xyz`` at a most loaded vertex, completes it to
    an octahedron ``{x,x'}, {y,y'}, {z,z'}`` inside the host, and flips so that ``|w_xyz|``
    drops. A flip is kept only if it lowers ``(max load, total absolute weight)``.
    Returns the best weighting and the number of flips applied.
    """
    rng = derive_rng(seed, "reduce-weights")
    n = len(adj)
    current = dict(weights)
    cost = _cost(current)
    flips = 0
    for _ in range(iterations):
        if cost[0] <= bound or not current:
            break
        load = vertex_load(current)
        top = max(load.values())
        v = min(u for u, x in load.items() if x == top)
        candidates = sorted(t for t in current if v in t)
        t = candidates[int(rng.integers(len(candidates)))]
        x, y, z = t
        others = [u for u in range(n) if u not in t]
        if len(others) < 3:
            break
        picks = rng.choice(len(others), size=3, replace=False)
        parts = ((x, others[int(picks[0])]), (y, others[int(picks[1])]), (z, others[int(picks[2])]))
        O = Octahedron.of(parts)
        if not O.fits(adj):
            continue
        direction = -1 if current[t] > 0 else 1
        candidate = flip(current, O, direction)
        new_cost = _cost(candidate)
        if new_cost < cost:
            current, cost = candidate, new_cost
            flips += 1
    return current, flips


def bounded_integral_decomposition(
    S: Hypergraph,
    bound: int,
    host: Hypergraph | None = None,
    settings: RelaxationSettings | None = None,
    seed: int = 0,
    cancel: object | None = None,
) -> IntegralSolution | BoundFailure | None:
    """Integral decomposition of ``S`` with every vertex load at most ``bound``.

    A 0/1 decomposition of ``S`` itself is tried first (node-budgeted); failing that,
    the lattice solution is improved by :func:`reduce_weights`.

    Returns:
        The solution, ``None`` if no integral decomposition exists at all, or a
        :class:`BoundFailure` carrying the best load reached.
    """
    settings = settings or RelaxationSettings()
    if bound < 0:
        raise InvalidInputError(f"bound must be non-negative, got {bound}")
    lattice = _lattice_for(S, host, cancel)
    host = lattice.host
    initial = lattice.decompose(S)
    if initial is None:
        return None
    if initial.max_load() <= bound:
        return initial
    adj = adjacency(host)
    search = ExchangeSearch(((e[0], e[1]) for e in S.edges), adj, budget=settings.exact_budget)
    found = search.run()
    if found is not None:
        exact = IntegralSolution(weights=dict.fromkeys(found.placed, 1))
        if exact.max_load() <= bound:
            logger.info("[relaxations][bounded] 0/1 decomposition after %d nodes", found.nodes)
            return exact
    weights, flips = reduce_weights(dict(initial.weights), adj, bound, settings.bounded_iterations, seed)
    best = IntegralSolution(weights=weights)
    achieved = best.max_load()
    logger.info("[relaxations][bounded] bound=%d achieved=%d flips=%d", bound, achieved, flips)
    if achieved <= bound:
        return best
    return BoundFailure(best=best, achieved=achieved, bound=bound, iterations=settings.bounded_iterations)

