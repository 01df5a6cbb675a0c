"""Seeded instance generators.

Every generator is a pure function of its parameters and seed, so an instance can be
regenerated from the experiment file instead of being stored.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from collections.abc import Callable
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Literal

import networkx as nx

from decompforge.barriers.constructions import is_tridivisible, parity_barrier
from decompforge.core.designs import DesignParams, steiner_auxiliary
from decompforge.core.errors import Failure, InvalidInputError, InvalidInstanceError
from decompforge.core.graphs import require_graph
from decompforge.core.hypergraph import Edge, GraphEdge, Hypergraph, pair
from decompforge.core.latin import LatinSquare, cyclic_latin_square, latin_to_3graph
from decompforge.core.rng import derive_rng

logger = logging.getLogger(__name__)

# Longest cycle looked at when fixing e(G) mod 3 by deleting a cycle.
CYCLE_LENGTH_BOUND = 8


def _threshold(n: int, fraction: float) -> int:
    if not 0 < fraction <= 1:
        raise InvalidInputError(f"fraction must lie in (0, 1], got {fraction}")
    return math.ceil(fraction * n - 1e-9)


def generate_dense_graph(n: int, min_degree_fraction: float, seed: int) -> Hypergraph:
    """Delete edges of ``K_n`` in random order while the minimum degree stays at least ``fraction * n``.

    If ``fraction * n > n - 1`` no edge can go and ``K_n`` is returned.
    """
    if n < 0:
        raise InvalidInputError(f"vertex count must be non-negative, got {n}")
    need = _threshold(n, min_degree_fraction)
    complete = Hypergraph.complete(n)
    if need > n - 1:
        logger.debug("[generate][dense] fraction %s infeasible for n=%d; returning K_n", min_degree_fraction, n)
        return complete
    edges = complete.sorted_edges()
    order = derive_rng(seed, "dense-graph").permutation(len(edges))
    degree = [n - 1] * n
    keep = set(edges)
    for i in order:
        u, v = edges[int(i)]
        if degree[u] > need and degree[v] > need:
            keep.discard((u, v))
            degree[u] -= 1
            degree[v] -= 1
    return complete.with_edges(keep)


@dataclass(frozen=True, slots=True)
class TridivisibleEdit:
    """Result of :func:`make_tridivisible`: the edited graph and the edits in the order made."""

    graph: Hypergraph
    edits: tuple[tuple[Literal["delete", "add"], GraphEdge], ...]

    def to_dict(self) -> dict[str, Any]:
        return {"edits": [[action, list(e)] for action, e in self.edits], "edges": self.graph.m}


def _fix_parity(edges: set[GraphEdge], n: int, edits: list[tuple[Literal["delete", "add"], GraphEdge]]) -> None:
    degree = Counter(v for e in edges for v in e)
    while True:
        odd = sorted(v for v in range(n) if degree[v] % 2)
        if not odd:
            return
        oddset = set(odd)
        hit = next((e for e in sorted(edges) if e[0] in oddset and e[1] in oddset), None)
        if hit is not None:
            edges.discard(hit)
            edits.append(("delete", hit))
            step = -1
        else:
            # odd vertices are pairwise non-adjacent here
            hit = pair(odd[0], odd[1])
            edges.add(hit)
            edits.append(("add", hit))
            step = 1
        degree[hit[0]] += step
        degree[hit[1]] += step


def _cycle_with_residue(edges: set[GraphEdge], residue: int) -> list[GraphEdge] | None:
    g = nx.Graph()
    g.add_edges_from(sorted(edges))
    for cycle in nx.simple_cycles(g, length_bound=CYCLE_LENGTH_BOUND):
        if len(cycle) >= 3 and len(cycle) % 3 == residue:
            return sorted(pair(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle)))
    return None


def make_tridivisible(G: Hypergraph, budget: int | None = None) -> TridivisibleEdit | Failure:
    """Greedy edge edits making every degree even and ``3 | e(G)``.

    Parity is repaired first by deleting the lexicographically smallest edge between two
    odd vertices (adding one only when no such edge exists). A remaining ``e(G) mod 3``
    is removed by deleting a cycle of matching length, which keeps every degree even.
    The default budget is ``2n`` edits.
    """
    require_graph(G)
    budget = 2 * G.n if budget is None else budget
    edges: set[GraphEdge] = {(e[0], e[1]) for e in G.edges}
    edits: list[tuple[Literal["delete", "add"], GraphEdge]] = []
    _fix_parity(edges, G.n, edits)
    if len(edges) % 3:
        cycle = _cycle_with_residue(edges, len(edges) % 3)
        if cycle is None:
            return Failure(
                stage="make_tridivisible",
                reason=f"no cycle of length {len(edges) % 3} mod 3 to delete",
                diagnostics={"edges": len(edges), "edits": len(edits)},
            )
        edges.difference_update(cycle)
        edits.extend(("delete", e) for e in cycle)
    if len(edits) > budget:
        return Failure(
            stage="make_tridivisible",
            reason=f"{len(edits)} edits exceed the budget of {budget}",
            diagnostics={"edits": len(edits), "budget": budget},
        )
    out = G.with_edges(edges)
    assert is_tridivisible(out)
    logger.debug("[generate][tridivisible] %d edit(s), %d edges left", len(edits), out.m)
    return TridivisibleEdit(graph=out, edits=tuple(edits))


def generate_codegree_3graph(n: int, codegree_fraction: float, seed: int) -> Hypergraph:
    """Delete triples of the complete 3-graph while every pair keeps codegree at least ``fraction * n``.

    Raises:
        InvalidInstanceError: if ``n`` is not divisible by 3.
    """
    if n % 3:
        raise InvalidInstanceError(f"n={n} is not divisible by 3")
    complete = Hypergraph.complete(n, 3)
    need = 0 if codegree_fraction == 0 else _threshold(n, codegree_fraction)
    if need > n - 2:
        return complete
    triples = complete.sorted_edges()
    order = derive_rng(seed, "codegree-3graph").permutation(len(triples))
    codegree: Counter[Edge] = Counter({p: n - 2 for p in combinations(range(n), 2)})
    keep = set(triples)
    for i in order:
        t = triples[int(i)]
        pairs = list(combinations(t, 2))
        if all(codegree[p] > need for p in pairs):
            keep.discard(t)
            for p in pairs:
                codegree[p] -= 1
    return complete.with_edges(keep)


def generate_latin_instance(k: int, seed: int) -> Hypergraph:
    """Tripartite 3-graph of a cyclic Latin square with rows, columns and symbols shuffled."""
    if k < 1:
        raise InvalidInputError(f"order must be positive, got {k}")
    rng = derive_rng(seed, "latin")
    base = cyclic_latin_square(k)
    rows, cols, symbols = (rng.permutation(k) for _ in range(3))
    square = LatinSquare.of(
        [[int(symbols[base.cells[int(rows[i])][int(cols[j])]]) for j in range(k)] for i in range(k)]
    )
    return latin_to_3graph(square)


def generate_steiner_instance(n: int, q: int = 3, r: int = 2) -> Hypergraph:
    """Auxiliary hypergraph whose perfect matchings are the Steiner systems ``S(n, q, r)``."""
    return steiner_auxiliary(DesignParams(n=n, q=q, r=r))


def generate_parity_barrier(n: int, r: int = 3, odd_part: int | None = None) -> Hypergraph:
    H, _, _ = parity_barrier(n, r, odd_part)
    return H


def _complete(n: int, r: int = 2) -> Hypergraph:
    return Hypergraph.complete(n, r)


GENERATORS: dict[str, Callable[..., Hypergraph]] = {
    "complete": _complete,
    "dense": generate_dense_graph,
    "codegree": generate_codegree_3graph,
    "latin": generate_latin_instance,
    "steiner": generate_steiner_instance,
    "parity": generate_parity_barrier,
}


def generate(name: str, **params: Any) -> Hypergraph:
    """Run the generator registered under ``name``.

    Raises:
        InvalidInputError: for an unknown generator or parameters it does not take.
    """
    try:
        fn = GENERATORS[name]
    except KeyError:
        raise InvalidInputError(f"unknown generator {name!r}; choose from {', '.join(sorted(GENERATORS))}") from None
    try:
        return fn(**params)
    except TypeError as exc:
        raise InvalidInputError(f"bad parameters for generator {name!r}: {exc}") from exc
