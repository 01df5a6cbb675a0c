"""Perfect matchings in 3-graphs of large minimum codegree by the absorbing method."""

from __future__ import annotations

import logging
from fractions import Fraction

from decompforge.codegree.absorbers import AbsorberFamily, absorbing_split, sample_absorber_family
from decompforge.config import CodegreeSettings, as_fraction
from decompforge.core.degrees import min_codegree
from decompforge.core.errors import Failure, ImpossibleStateError, InvalidInstanceError
from decompforge.core.hypergraph import Edge, Hypergraph, Matching, triple
from decompforge.core.verify import MatchingReport, verify_perfect_matching
from decompforge.reporter import Reporter, stage_recorder

logger = logging.getLogger(__name__)


def greedy_maximal_matching(H: Hypergraph) -> Matching:
    """Maximal matching taking edges in canonical order."""
    used: set[int] = set()
    chosen: list[Edge] = []
    for e in H.sorted_edges():
        if used.isdisjoint(e):
            used.update(e)
            chosen.append(e)
    return Matching.of(chosen)


def _extend(H: Hypergraph, edges: set[Edge]) -> None:
    used = {v for e in edges for v in e}
    for e in H.sorted_edges():
        if used.isdisjoint(e):
            used.update(e)
            edges.add(e)


def _exchange(
    H: Hypergraph, matching: set[Edge], pairs: list[tuple[int, int]]
) -> tuple[Edge, Edge, Edge] | None:
    """An edge of the matching and two disjoint replacements built from two of ``pairs``."""
    for e in sorted(matching):
        links = [[x for x in e if triple(a, b, x) in H.edges] for a, b in pairs]
        if sum(len(xs) for xs in links) < 4:
            continue
        for i in range(3):
            for j in range(i + 1, 3):
                for x in links[i]:
                    for y in links[j]:
                        if x != y:
                            return e, triple(*pairs[i], x), triple(*pairs[j], y)
    return None


def near_perfect_matching_third(G: Hypergraph) -> Matching:
    """Matching of size at least ``n/3 - 1`` when every pair has codegree at least ``n/3``.

    Starting from a maximal matching, while at least six vertices are uncovered the
    first three disjoint pairs among them are linked into the matching: some matching
    edge ``e`` has four or more pair-vertex links, which lets two pairs each take a
    different vertex of ``e``. Replacing ``e`` by those two edges grows the matching.

    Raises:
        InvalidInstanceError: if ``3`` does not divide ``n`` or the codegree is below ``n/3``.
        ImpossibleStateError: if no exchange edge exists (only possible when the
            codegree precondition is breached).
    """
    if G.r != 3:
        raise InvalidInstanceError(f"expected a 3-graph, got r={G.r}")
    if G.n % 3:
        raise InvalidInstanceError(f"n={G.n} is not divisible by 3")
    if G.n == 0:
        return Matching.of([])
    if 3 * min_codegree(G) < G.n:
        raise InvalidInstanceError(f"minimum codegree {min_codegree(G)} is below n/3 = {Fraction(G.n, 3)}")
    matching = set(greedy_maximal_matching(G).edges)
    steps = 0
    while True:
        covered = {v for e in matching for v in e}
        free = [v for v in range(G.n) if v not in covered]
        if len(free) <= 3:
            break
        pairs = [(free[0], free[1]), (free[2], free[3]), (free[4], free[5])]
        found = _exchange(G, matching, pairs)
        if found is None:
            raise ImpossibleStateError(f"no matching edge with four links to pairs {pairs}")
        e, first, second = found
        before = len(matching)
        matching.discard(e)
        matching.update((first, second))
        _extend(G, matching)
        steps += 1
        if len(matching) <= before or steps > G.n // 3:
            raise ImpossibleStateError("exchange step did not grow the matching")
        logger.debug("[codegree][exchange] step %d: %s -> %s + %s", steps, e, first, second)
    return Matching.of(matching)


def perfect_matching_codegree(
    G: Hypergraph,
    c: float | Fraction | str,
    seed: int,
    settings: CodegreeSettings | None = None,
    reporter: Reporter | None = None,
) -> MatchingReport | Failure:
    """Perfect matching of a 3-graph with minimum codegree at least ``(1/2 + c) n``.

    Reserves an absorber family, finds a near-perfect matching of the rest and absorbs
    the at most three leftover vertices into one absorber.

    Raises:
        InvalidInstanceError: if the codegree or divisibility precondition fails.
    """
    settings = settings or CodegreeSettings()
    density = as_fraction(c)
    if G.r != 3:
        raise InvalidInstanceError(f"expected a 3-graph, got r={G.r}")
    if G.n % 3:
        raise InvalidInstanceError(f"n={G.n} is not divisible by 3")
    delta = min_codegree(G)
    if delta < (Fraction(1, 2) + density) * G.n:
        raise InvalidInstanceError(f"minimum codegree {delta} is below (1/2 + {density}) * {G.n}")

    record = stage_recorder(reporter, "codegree", seed)

    family = sample_absorber_family(G, density, seed, settings, scope=settings.scope, max_size=max(1, G.n // 20))
    if isinstance(family, Failure):
        record("absorbers", "failed", reason=family.reason)
        return family
    record("absorbers", "sampled", size=family.edges.size, certified=family.certified)
    absorbers = family.edges.sorted_edges()
    reserved = family.edges.vertices()
    rest = [v for v in range(G.n) if v not in reserved]
    G_rest, back = G.relabel(rest)
    try:
        near = near_perfect_matching_third(G_rest)
    except (InvalidInstanceError, ImpossibleStateError) as exc:
        record("near_perfect", "failed", reason=str(exc))
        return Failure(stage="near_perfect", reason=str(exc), diagnostics={"absorbers": len(absorbers)})
    matching = {tuple(sorted(back[v] for v in e)) for e in near.edges}
    record("near_perfect", "matched", size=len(matching), leave=len(rest) - 3 * len(matching))

    covered = {v for e in matching for v in e} | reserved
    leftover = tuple(v for v in range(G.n) if v not in covered)
    final = _absorb(G, family, matching, leftover)
    if isinstance(final, Failure):
        record("absorb", "failed", witness=list(leftover))
        return final
    result = Matching.of(final)
    verification = verify_perfect_matching(G, result)
    if not verification.accepted:
        raise ImpossibleStateError(f"assembled matching rejected: {verification.summary()}")
    record("absorb", "verified", size=result.size)
    logger.info("[codegree][seed=%s] perfect matching of size %d", seed, result.size)
    return MatchingReport(
        matching=result,
        verification=verification,
        seed=seed,
        method="codegree",
        stats={"absorbers": len(absorbers), "near_perfect": near.size, "leftover": len(leftover)},
    )


def _absorb(
    G: Hypergraph, family: AbsorberFamily, matching: set[Edge], leftover: tuple[int, ...]
) -> set[Edge] | Failure:
    edges = set(matching) | set(family.edges.edges)
    if not leftover:
        return edges
    if len(leftover) != 3:
        return Failure(stage="absorb", reason=f"{len(leftover)} vertices left over", witness=leftover)
    for e in family.edges.sorted_edges():
        split = absorbing_split(e, leftover, G)
        if split is not None:
            edges.discard(e)
            edges.update(split)
            logger.debug("[codegree][absorb] %s absorbed by %s -> %s", leftover, e, split)
            return edges
    return Failure(stage="absorb", reason="no absorber in the family takes the leftover triple", witness=leftover)
