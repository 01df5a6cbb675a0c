"""Signed triangle decompositions of the spill inside ``G*``.

Starting from any integral decomposition over the host, octahedron flips cancel pairs
of opposite-sign triangles on a common edge until every weighted triangle lies in
``G*``, has weight ``+1`` or ``-1``, and no edge carries two triangles of one sign.
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

import numpy as np

from decompforge.algebraic.template import Template
from decompforge.config import AlgebraicSettings, RelaxationSettings
from decompforge.core.errors import Failure, ImpossibleStateError, InvalidInputError
from decompforge.core.exchange import ExchangeSearch
from decompforge.core.graphs import require_graph
from decompforge.core.hypergraph import GraphEdge, Hypergraph, Triangle, pair, triangle_edges, triple
from decompforge.core.octahedra import FlipAudit, Octahedron, Weighting, edge_sums, flip
from decompforge.core.rng import derive_rng
from decompforge.relaxations.integral import BoundFailure, bounded_integral_decomposition, integral_triangle_decomposition

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class SignedDecomposition:
    """Triangles of weight ``+1`` and ``-1`` whose edge sums are the indicator of ``S``."""

    plus: frozenset[Triangle]
    minus: frozenset[Triangle]
    S: frozenset[GraphEdge]
    flips: int = 0

    def __post_init__(self) -> None:
        if self.plus & self.minus:
            raise ImpossibleStateError("a triangle carries both signs")
        if {e: s for e, s in edge_sums(self.weights()).items() if s} != dict.fromkeys(self.S, 1):
            raise ImpossibleStateError("signed edge sums differ from the indicator of S")

    def weights(self) -> Weighting:
        return {**dict.fromkeys(self.plus, 1), **dict.fromkeys(self.minus, -1)}

    def to_dict(self) -> dict[str, Any]:
        return {
            "plus": [list(t) for t in sorted(self.plus)],
            "minus": [list(t) for t in sorted(self.minus)],
            "S": [list(e) for e in sorted(self.S)],
            "flips": self.flips,
        }


def _sign_counts(weights: Mapping[Triangle, int]) -> tuple[Counter[GraphEdge], Counter[GraphEdge]]:
    plus: Counter[GraphEdge] = Counter()
    minus: Counter[GraphEdge] = Counter()
    for t, w in weights.items():
        for e in triangle_edges(t):
            (plus if w > 0 else minus)[e] += abs(w)
    return plus, minus


def _illegal(t: Triangle, gstar: frozenset[GraphEdge]) -> bool:
    return any(e not in gstar for e in triangle_edges(t))


def _cost(weights: Mapping[Triangle, int], gstar: frozenset[GraphEdge]) -> tuple[int, int, int]:
    """(weight on triangles outside ``G*``, excess same-sign weight per edge, total weight)."""
    plus, minus = _sign_counts(weights)
    illegal = sum(abs(w) for t, w in weights.items() if _illegal(t, gstar))
    clash = sum(c - 1 for c in plus.values() if c > 1) + sum(c - 1 for c in minus.values() if c > 1)
    return illegal, clash, sum(abs(w) for w in weights.values())


def _bad(weights: Mapping[Triangle, int], gstar: frozenset[GraphEdge]) -> list[Triangle]:
    plus, minus = _sign_counts(weights)
    out = []
    for t, w in sorted(weights.items()):
        counts = plus if w > 0 else minus
        if abs(w) > 1 or _illegal(t, gstar) or any(counts[e] > 1 for e in triangle_edges(t)):
            out.append(t)
    return out


def _partner(candidates: set[int], exclude: set[int], rng: np.random.Generator, n: int) -> int | None:
    pool = sorted(candidates - exclude) or [v for v in range(n) if v not in exclude]
    if not pool:
        return None
    return pool[int(rng.integers(len(pool)))]


def _propose(
    t: Triangle,
    weights: Mapping[Triangle, int],
    adj: list[set[int]],
    rng: np.random.Generator,
) -> Octahedron | None:
    """An octahedron through ``t`` whose flip lowers ``|w_t|``.

    When ``t`` shares an edge ``ab`` with a triangle ``abw`` of opposite sign the pair is
    cancelled through parts ``{c, w}, {a, a'}, {b, b'}``; otherwise a random octahedron
    ``{x,x'}, {y,y'}, {z,z'}`` is used. Partners are drawn from ``G*`` neighbourhoods
    when any qualify.
    """
    n = len(adj)
    sign = 1 if weights[t] > 0 else -1
    order = [int(i) for i in rng.permutation(3)]
    for i in order:
        a, b = (v for j, v in enumerate(t) if j != i)
        c = t[i]
        opposite = [w for w in range(n) if w not in t and weights.get(triple(a, b, w), 0) * sign < 0]
        if not opposite:
            continue
        w = opposite[int(rng.integers(len(opposite)))]
        ap = _partner(adj[w] & adj[b] & adj[c], {a, b, c, w}, rng, n)
        if ap is None:
            continue
        bp = _partner(adj[w] & adj[a] & adj[c] & adj[ap], {a, b, c, w, ap}, rng, n)
        if bp is None:
            continue
        return Octahedron.of(((c, w), (a, ap), (b, bp)))
    x, y, z = t
    xp = _partner(adj[y] & adj[z], set(t), rng, n)
    if xp is None:
        return None
    yp = _partner(adj[x] & adj[z] & adj[xp], {*t, xp}, rng, n)
    if yp is None:
        return None
    zp = _partner(adj[x] & adj[y] & adj[xp] & adj[yp], {*t, xp, yp}, rng, n)
    if zp is None:
        return None
    return Octahedron.of(((x, xp), (y, yp), (z, zp)))


def _eliminate(
    weights: Weighting, T: Template, iterations: int, seed: int, audit: FlipAudit | None = None
) -> tuple[Weighting, int, tuple[int, int, int]]:
    gstar = T.edges()
    adj = T.adjacency()
    rng = derive_rng(seed, "signed-eliminate")
    current = dict(weights)
    cost = _cost(current, gstar)
    flips = 0
    for _ in range(iterations):
        if cost[:2] == (0, 0):
            break
        bad = _bad(current, gstar)
        t = bad[int(rng.integers(len(bad)))]
        O = _propose(t, current, adj, rng)
        if O is None:
            continue
        even, _ = O.groups()
        direction = -1 if (current[t] > 0) == (t in even) else 1
        candidate = flip(current, O, direction, audit)
        new_cost = _cost(candidate, gstar)
        if new_cost < cost:
            current, cost = candidate, new_cost
            flips += 1
    return current, flips, cost


def signed_decomposition(
    S: Hypergraph,
    T: Template,
    host: Hypergraph | None = None,
    settings: AlgebraicSettings | None = None,
    seed: int = 0,
    audit: FlipAudit | None = None,
) -> SignedDecomposition | Failure:
    """Signed decomposition of ``S`` supported on triangles of ``G*``.

    A 0/1 decomposition of ``S`` inside ``G*`` is tried first. Otherwise an integral
    decomposition over ``host`` (``K_n`` by default) is cleaned up by octahedron flips,
    each of which is tallied in ``audit`` when given.

    Raises:
        InvalidInputError: if ``S`` is not contained in ``G*``.
    """
    require_graph(S)
    settings = settings or AlgebraicSettings()
    gstar = T.edges()
    outside = sorted(pair(*e) for e in S.edges if pair(*e) not in gstar)
    if outside:
        raise InvalidInputError(f"edge {outside[0]} of S is not in G*")
    target = frozenset(pair(*e) for e in S.edges)
    if not target:
        return SignedDecomposition(plus=frozenset(), minus=frozenset(), S=target)

    direct = ExchangeSearch(target, T.adjacency(), budget=settings.direct_budget).run()
    if direct is not None:
        return SignedDecomposition(plus=frozenset(direct.placed), minus=frozenset(), S=target)

    if settings.bounded_weight is None:
        initial = integral_triangle_decomposition(S, host)
    else:
        relax = RelaxationSettings(bounded_iterations=settings.bounded_iterations)
        initial = bounded_integral_decomposition(S, settings.bounded_weight, host, relax, seed)
        if isinstance(initial, BoundFailure):
            logger.info("[algebraic][signed] weight bound %d not reached (%d)", initial.bound, initial.achieved)
            initial = initial.best
    if initial is None:
        return Failure(stage="signed", reason="S has no integral triangle decomposition", witness=sorted(target))

    weights, flips, cost = _eliminate(dict(initial.weights), T, settings.bounded_iterations, seed, audit)
    if cost[:2] != (0, 0):
        worst = _bad(weights, gstar)
        return Failure(
            stage="signed",
            reason="could not clear illegal or over-weight triangles",
            witness=worst[0] if worst else None,
            diagnostics={"illegal_weight": cost[0], "excess": cost[1], "flips": flips},
        )
    plus = frozenset(t for t, w in weights.items() if w > 0)
    minus = frozenset(t for t, w in weights.items() if w < 0)
    logger.debug("[algebraic][signed] |S|=%d plus=%d minus=%d flips=%d", len(target), len(plus), len(minus), flips)
    return SignedDecomposition(plus=plus, minus=minus, S=target, flips=flips)
