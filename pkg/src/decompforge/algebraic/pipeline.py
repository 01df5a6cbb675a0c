"""Triangle decompositions by a randomised algebraic template.

``M = N + M^c + (T - M^o) + M^i``: the nibble ``N`` covers most of ``G - G*``, the leave
cover ``M^c`` borrows a spill ``S`` from ``G*``, and a hole ``(M^o, M^i)`` in the template
frees exactly the spill.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable

from decompforge.algebraic.cascade import cascade_absorb
from decompforge.algebraic.hole import Hole, extract_hole, find_hole
from decompforge.algebraic.labeling import compact_degree, random_labeling
from decompforge.algebraic.leave import LeaveCover, cover_leave, exchange_leave
from decompforge.algebraic.signed import signed_decomposition
from decompforge.algebraic.template import Template, template
from decompforge.barriers.constructions import is_tridivisible
from decompforge.config import AlgebraicSettings, NibbleParams
from decompforge.core.errors import Failure, ImpossibleStateError, InvalidInstanceError, StageFailure
from decompforge.core.graphs import graph_from_edges, require_graph, triangle_auxiliary, triangles_in
from decompforge.core.hypergraph import GraphEdge, Hypergraph, Triangle, TriangleDecomposition, triangle_edges
from decompforge.core.octahedra import FlipAudit, Weighting, edge_sums
from decompforge.core.retry import run_with_retries
from decompforge.core.rng import derive_seed
from decompforge.core.verify import DecompositionReport, verify_triangle_decomposition
from decompforge.iterative.preflight import preflight
from decompforge.nibble.processes import rodl_nibble
from decompforge.reporter import Reporter, StageRecorder, stage_recorder

logger = logging.getLogger(__name__)


def _nibble_outside(G: Hypergraph, T: Template, seed: int) -> tuple[list[Triangle], set[GraphEdge]]:
    gstar = T.edges()
    rest = graph_from_edges(G.n, ((e[0], e[1]) for e in G.edges if (e[0], e[1]) not in gstar))
    triangles = triangles_in(rest.n, rest.edges)
    if not triangles:
        return [], {(e[0], e[1]) for e in rest.edges}
    aux = triangle_auxiliary(rest, triangles)
    result = rodl_nibble(aux.hypergraph, NibbleParams(seed=derive_seed(seed, "algebraic-nibble")))
    placed = [aux.triangle_of(e) for e in result.matching.sorted_edges()]
    leave = {(e[0], e[1]) for e in rest.edges}
    for t in placed:
        leave.difference_update(triangle_edges(t))
    return placed, leave


def _cover(
    G: Hypergraph,
    T: Template,
    N: list[Triangle],
    leave: set[GraphEdge],
    settings: AlgebraicSettings,
    seed: int,
    record: StageRecorder,
    stats: dict[str, object],
) -> tuple[LeaveCover, Hole | None]:
    greedy = cover_leave(leave, T, seed)
    if not isinstance(greedy, Failure):
        stats["leave_cover"] = "greedy"
        record("cover_leave", "covered", triangles=len(greedy.triangles), spill=len(greedy.spill))
        return greedy, None
    record("cover_leave", "exhausted", covered=greedy.diagnostics.get("covered"), leave=len(leave))
    exchanged = exchange_leave(leave, T, G, taken=N, budget=settings.search_budget, seed=seed)
    if isinstance(exchanged, Failure):
        raise StageFailure(exchanged)
    stats["leave_cover"] = "exchange"
    record(
        "cover_leave",
        "exchanged",
        triangles=len(exchanged.cover.triangles),
        spill=len(exchanged.cover.spill),
        released=len(exchanged.hole.outer),
    )
    return exchanged.cover, exchanged.hole


def _require_indicator(weights: Weighting, spill: Iterable[GraphEdge]) -> None:
    if {e: s for e, s in edge_sums(weights).items() if s} != dict.fromkeys(spill, 1):
        raise ImpossibleStateError("cascade moved the signed edge sums off the spill")


def _cascade_all(
    weights: Weighting,
    spill: frozenset[GraphEdge],
    T: Template,
    settings: AlgebraicSettings,
    seed: int,
    audit: FlipAudit,
) -> tuple[Weighting, int] | Failure:
    flips = 0
    for _ in range(4 * len(weights) + 1):
        positives = sorted(t for t, w in weights.items() if w > 0 and t not in T)
        if not positives:
            return weights, flips
        t = positives[0]
        cascade = cascade_absorb(t, T, derive_seed(seed, "cascade", flips), settings.cascade_budget)
        if isinstance(cascade, Failure):
            return cascade
        weights = cascade.apply(weights, audit)
        _require_indicator(weights, spill)
        flips += len(cascade.flips)
    return Failure(stage="cascade", reason="positive non-template triangles keep reappearing")


def _make_hole(
    spill: frozenset[GraphEdge],
    T: Template,
    settings: AlgebraicSettings,
    seed: int,
    stats: dict[str, object],
    audit: FlipAudit,
    known: Hole | None = None,
) -> Hole:
    """Free the spill: signed decomposition and cascades first, then ``known``, then a search."""
    S = graph_from_edges(T.labeling.n, spill)
    signed = signed_decomposition(S, T, settings=settings, seed=seed, audit=audit)
    hole: Hole | None = None
    if isinstance(signed, Failure):
        stats["signed"] = signed.reason
    else:
        stats["signed_flips"] = signed.flips
        cascaded = _cascade_all(signed.weights(), spill, T, settings, seed, audit)
        if isinstance(cascaded, Failure):
            stats["cascade"] = cascaded.reason
        else:
            weights, flips = cascaded
            stats["cascade_flips"] = flips
            hole = extract_hole(weights, T, spill)
    if hole is None:
        hole = known
    if hole is None:
        hole = find_hole(spill, T, settings.search_budget, seed)
    if hole is None:
        raise StageFailure.at("hole_search", "no hole in the template frees the spill", witness=sorted(spill))
    if not hole.holds_for(spill):
        raise ImpossibleStateError("hole edge multisets do not balance")
    stats["hole"] = hole.via
    return hole


def triangle_decompose_algebraic(
    G: Hypergraph,
    settings: AlgebraicSettings | None = None,
    seed: int = 0,
    reporter: Reporter | None = None,
) -> DecompositionReport | Failure:
    """Decompose ``G`` around a random zero-sum template, retrying with fresh labelings.

    Raises:
        InvalidInstanceError: if ``G`` is not tridivisible or has fewer than 3 vertices.
    """
    require_graph(G)
    settings = settings or AlgebraicSettings()
    if not is_tridivisible(G):
        raise InvalidInstanceError("graph is not tridivisible")
    if G.n < 3:
        raise InvalidInstanceError(f"need at least 3 vertices, got {G.n}")

    record = stage_recorder(reporter, "algebraic", seed)

    check = preflight(G)
    record("preflight", "ok" if check.ok else "warned", min_common=check.min_common)
    a_override = compact_degree(G.n) if settings.field_degree == "compact" else None

    def attempt(attempt_seed: int, attempt_no: int) -> DecompositionReport:
        labeling = random_labeling(G.n, attempt_seed, a_override)
        T = template(G, labeling)
        record("template", "built", a=labeling.field.a, triangles=len(T.triangles))
        N, leave = _nibble_outside(G, T, attempt_seed)
        record("nibble", "matched", triangles=len(N), leave=len(leave))
        stats: dict[str, object] = {
            "attempt": attempt_no + 1,
            "a": labeling.field.a,
            "template": len(T.triangles),
            "nibble": len(N),
            "leave": len(leave),
        }
        cover, known = _cover(G, T, N, leave, settings, attempt_seed, record, stats)
        stats["spill"] = len(cover.spill)
        stats["spill_max_degree"] = cover.max_spill_degree()

        audit = FlipAudit()
        hole = _make_hole(cover.spill, T, settings, attempt_seed, stats, audit, known)
        stats["flip_checks"] = audit.flips
        stats["edge_sum_checks"] = audit.edge_checks
        stats["hole_sets"] = {k: v for k, v in hole.to_dict().items() if k != "via"}
        record(str(hole.via), "found", outer=len(hole.outer), inner=len(hole.inner), flips=audit.flips)

        final = [*N, *cover.triangles, *(t for t in T.triangles if t not in hole.outer), *hole.inner]
        decomposition = TriangleDecomposition.of(final)
        verification = verify_triangle_decomposition(G, decomposition)
        if not verification.accepted:
            raise ImpossibleStateError(f"assembled decomposition rejected: {verification.summary()}")
        logger.info("[algebraic][seed=%s] %d triangles after %d attempt(s)", seed, len(decomposition), attempt_no + 1)
        return DecompositionReport(
            decomposition=decomposition,
            verification=verification,
            seed=seed,
            method="algebraic",
            stats=stats,
            params={**settings.model_dump(), "labeling": labeling.to_dict()},
        )

    result = run_with_retries(attempt, settings.retries, seed, "algebraic")
    if isinstance(result, Failure):
        record(result.stage, "failed", reason=result.reason)
    return result
