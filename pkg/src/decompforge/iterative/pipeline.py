"""Triangle decompositions of dense tridivisible graphs by iterative absorption."""

from __future__ import annotations

import logging
from math import floor

from decompforge.barriers.constructions import is_tridivisible
from decompforge.config import IterativeSettings
from decompforge.core.errors import Failure, ImpossibleStateError, InvalidInstanceError, StageFailure
from decompforge.core.exchange import ExchangeSearch, FixedPool
from decompforge.core.graphs import adjacency, require_graph
from decompforge.core.hypergraph import GraphEdge, Hypergraph, Triangle, TriangleDecomposition, triangle_edges
from decompforge.core.retry import run_with_retries
from decompforge.core.rng import derive_rng, derive_seed
from decompforge.core.verify import DecompositionReport, verify_triangle_decomposition
from decompforge.iterative.absorbers import ExclusiveAbsorber, reserve_absorbers
from decompforge.iterative.cover_down import _cover_down
from decompforge.iterative.preflight import preflight
from decompforge.iterative.vortex import build_vortex
from decompforge.reporter import Reporter, StageRecorder, stage_recorder

logger = logging.getLogger(__name__)


def _check_disjoint(triangles: list[Triangle], G: Hypergraph, stage: str) -> None:
    seen: set[GraphEdge] = set()
    for t in triangles:
        for e in triangle_edges(t):
            if e in seen or e not in G.edges:
                raise ImpossibleStateError(f"after {stage}: triangle {t} reuses or leaves the graph at {e}")
            seen.add(e)


def _exact(G: Hypergraph, settings: IterativeSettings, seed: int) -> list[Triangle]:
    search = ExchangeSearch(G.edges, adjacency(G), budget=settings.search_budget, rng=derive_rng(seed, "exact"))
    found = search.run()
    if found is None:
        reason = "search budget exhausted" if search.exhausted else "no triangle decomposition exists"
        raise StageFailure.at("exact", reason, nodes=search.nodes)
    return list(found.placed)


def _absorb_lazily(
    G: Hypergraph, used: list[Triangle], leave: set[GraphEdge], settings: IterativeSettings, seed: int
) -> list[Triangle]:
    search = ExchangeSearch(
        leave,
        adjacency(G),
        pool=FixedPool(used),
        budget=settings.search_budget,
        rng=derive_rng(seed, "absorb"),
    )
    found = search.run()
    if found is None:
        raise StageFailure.at("absorb", "leave could not be absorbed into used triangles", witness=sorted(leave))
    released = set(found.released)
    return [t for t in used if t not in released] + list(found.placed)


def _absorb_eagerly(
    used: list[Triangle], leave: set[GraphEdge], absorbers: dict[frozenset[GraphEdge], ExclusiveAbsorber]
) -> list[Triangle]:
    final = list(used)
    target = frozenset(leave)
    if target and target not in absorbers:
        raise ImpossibleStateError(f"leave {sorted(leave)} has no reserved absorber")
    for S, absorber in absorbers.items():
        final.extend(absorber.B if S == target else absorber.A)
    return final


def triangle_decompose_iterative(
    G: Hypergraph,
    settings: IterativeSettings | None = None,
    seed: int = 0,
    reporter: Reporter | None = None,
) -> DecompositionReport | Failure:
    """Push ``G`` down a random vortex, then absorb the leave on its last level.

    Graphs with at most ``tau_cap`` vertices have no vortex and are decomposed by the
    exact search directly.

    Raises:
        InvalidInstanceError: if ``G`` is not tridivisible or its minimum degree is too low.
    """
    require_graph(G)
    settings = settings or IterativeSettings()
    if not is_tridivisible(G):
        raise InvalidInstanceError("graph is not tridivisible")
    need = floor(settings.min_degree_fraction * G.n)
    if G.n and min(G.degrees()) < need:
        raise InvalidInstanceError(f"minimum degree {min(G.degrees())} is below {need}")

    record = stage_recorder(reporter, "iterative", seed)

    check = preflight(G)
    record("preflight", "ok" if check.ok else "warned", min_k5=check.min_k5, min_common=check.min_common)

    def attempt(attempt_seed: int, attempt_no: int) -> DecompositionReport:
        stats: dict[str, object] = {"attempt": attempt_no + 1}
        if G.n <= settings.tau_cap:
            final = _exact(G, settings, attempt_seed)
            stats["route"] = "exact"
            record("exact", "solved", triangles=len(final))
        else:
            final = _descend(G, settings, attempt_seed, stats, record)
        decomposition = TriangleDecomposition.of(final)
        verification = verify_triangle_decomposition(G, decomposition)
        if not verification.accepted:
            raise ImpossibleStateError(f"assembled decomposition rejected: {verification.summary()}")
        logger.info("[iterative][seed=%s] %d triangles after %d attempt(s)", seed, len(decomposition), attempt_no + 1)
        return DecompositionReport(
            decomposition=decomposition,
            verification=verification,
            seed=seed,
            method="iterative",
            stats=stats,
            params=settings.model_dump(),
        )

    result = run_with_retries(attempt, settings.retries, seed, "iterative")
    if isinstance(result, Failure):
        record(result.stage, "failed", reason=result.reason)
    return result


def _descend(
    G: Hypergraph,
    settings: IterativeSettings,
    seed: int,
    stats: dict[str, object],
    record: StageRecorder,
) -> list[Triangle]:
    vortex = build_vortex(G, settings.theta, settings.tau_cap, seed)
    stats["vortex"] = list(vortex.sizes())
    record("vortex", "built", sizes=list(vortex.sizes()))

    absorbers: dict[frozenset[GraphEdge], ExclusiveAbsorber] | None = None
    current = G
    if len(vortex.last) <= settings.eager_absorber_vertices:
        absorbers = reserve_absorbers(G, vortex.last, settings.absorber_budget, derive_seed(seed, "absorbers"))
        if absorbers is None:
            record("absorbers", "lazy_fallback", last=len(vortex.last))
        else:
            reserved = [e for a in absorbers.values() for e in a.edges()]
            current = G.without(reserved)
            record("absorbers", "reserved", count=len(absorbers), edges=len(reserved))

    used: list[Triangle] = []
    levels: list[dict[str, object]] = []
    for i in range(1, len(vortex.levels)):
        step = _cover_down(current, vortex.levels[i], settings, derive_seed(seed, "cover-down", i))
        used.extend(step.used)
        _check_disjoint(used, G, f"cover-down {i}")
        current = step.residual
        levels.append(step.stats)
        record("cover_down", "covered", level=i, used=len(step.used), residual=step.residual.m)
    stats["levels"] = levels

    leave = {(e[0], e[1]) for e in current.edges}
    stats["leave"] = len(leave)
    if absorbers is not None:
        stats["route"] = "eager"
        final = _absorb_eagerly(used, leave, absorbers)
    else:
        stats["route"] = "lazy"
        final = _absorb_lazily(G, used, leave, settings, seed) if leave else used
    record("absorb", "absorbed", route=stats["route"], leave=len(leave))
    return final
