"""Semi-random matching processes.

:func:`rodl_nibble` takes small random bites: every surviving edge is marked with a
probability tuned so that roughly a ``bite`` fraction of the active vertices gets
covered per round, clashing marks are dropped, and covered vertices leave the game.
When the random phase stalls the remaining edges are finished greedily.
:func:`random_greedy_matching` is the one-edge-at-a-time process.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from decompforge.config import NibbleParams
from decompforge.core.errors import ImpossibleStateError, InvalidInputError
from decompforge.core.hypergraph import Edge, Hypergraph, Matching, canonical
from decompforge.core.rng import derive_rng

logger = logging.getLogger(__name__)

STALL_ROUNDS = 5


@dataclass(frozen=True, slots=True)
class RoundStat:
    round: int
    survivors: int
    matched: int
    uncovered: int

    def to_dict(self) -> dict[str, int]:
        return {"round": self.round, "survivors": self.survivors, "matched": self.matched, "uncovered": self.uncovered}


@dataclass(frozen=True, slots=True)
class NibbleResult:
    """Matching found by the nibble, the vertices it leaves uncovered and per-round statistics."""

    matching: Matching
    leave: frozenset[int]
    rounds: tuple[RoundStat, ...]
    greedy_edges: int

    def leave_fraction(self, n: int) -> float:
        return len(self.leave) / n if n else 0.0

    def to_dict(self) -> dict[str, Any]:
        return {
            "matching": [list(e) for e in self.matching.sorted_edges()],
            "leave": sorted(self.leave),
            "greedy_edges": self.greedy_edges,
            "rounds": [r.to_dict() for r in self.rounds],
        }


def _edge_array(edges: Sequence[Edge], r: int) -> np.ndarray:
    if not edges:
        return np.zeros((0, r), dtype=np.int64)
    return np.asarray(edges, dtype=np.int64)


def _selection_weights(edges: Sequence[Edge], weights: Mapping[Sequence[int], Any] | None) -> np.ndarray:
    if weights is None:
        return np.ones(len(edges), dtype=np.float64)
    lookup = {canonical(k): float(v) for k, v in weights.items()}
    out = np.asarray([lookup.get(e, 0.0) for e in edges], dtype=np.float64)
    if (out < 0).any():
        raise InvalidInputError("selection weights must be non-negative")
    return out


def rodl_nibble(
    H: Hypergraph,
    params: NibbleParams | None = None,
    weights: Mapping[Sequence[int], Any] | None = None,
) -> NibbleResult:
    """Near-perfect matching by the nibble with a lexicographic greedy finish.

    Args:
        H: Host hypergraph.
        params: Bite size, stopping rule, seed and round cap.
        weights: Optional per-edge selection weights (e.g. a fractional decomposition);
            marking probabilities are proportional to them instead of uniform.

    Returns:
        The matching, the uncovered vertices and the round-by-round statistics. The run
        is a deterministic function of ``H``, the parameters and the weights.
    """
    params = params or NibbleParams()
    edges = H.sorted_edges()
    E = _edge_array(edges, H.r)
    w = _selection_weights(edges, weights)
    alive = w > 0
    covered = np.zeros(H.n, dtype=bool)
    chosen: list[Edge] = []
    stats: list[RoundStat] = []
    stalled = 0

    for k in range(params.max_rounds):
        active = H.n - int(covered.sum())
        alive_idx = np.flatnonzero(alive)
        if alive_idx.size == 0 or active == 0 or active <= params.stop_threshold * H.n:
            break
        rng = derive_rng(params.seed, "nibble", k)
        # Expected number of marked edges is bite * active / r, spread proportionally to w.
        total = float(w[alive_idx].sum())
        probs = np.minimum(1.0, params.bite * active * w[alive_idx] / (H.r * total))
        marked = alive_idx[rng.random(alive_idx.size) < probs]
        used = np.zeros(H.n, dtype=bool)
        kept = 0
        for idx in rng.permutation(marked):
            verts = E[idx]
            if used[verts].any():
                continue
            used[verts] = True
            chosen.append(edges[int(idx)])
            kept += 1
        covered |= used
        alive &= ~covered[E].any(axis=1)
        stats.append(RoundStat(round=k, survivors=int(alive.sum()), matched=kept, uncovered=H.n - int(covered.sum())))
        stalled = stalled + 1 if kept == 0 else 0
        if stalled >= STALL_ROUNDS:
            logger.debug("[nibble][seed=%s] stalled after round %d", params.seed, k)
            break

    greedy = 0
    free = np.flatnonzero(~covered[E].any(axis=1)) if len(edges) else np.zeros(0, dtype=np.int64)
    for idx in free:
        verts = E[idx]
        if covered[verts].any():
            continue
        covered[verts] = True
        chosen.append(edges[int(idx)])
        greedy += 1

    matching = Matching.of(chosen)
    if len(matching.vertices()) != H.r * matching.size:
        raise ImpossibleStateError("nibble produced intersecting edges")
    leave = frozenset(int(v) for v in np.flatnonzero(~covered))
    logger.info(
        "[nibble][seed=%s] n=%d m=%d rounds=%d matched=%d greedy=%d leave=%d",
        params.seed,
        H.n,
        H.m,
        len(stats),
        matching.size,
        greedy,
        len(leave),
    )
    return NibbleResult(matching=matching, leave=leave, rounds=tuple(stats), greedy_edges=greedy)


@dataclass(frozen=True, slots=True)
class GreedyRun:
    """Random greedy matching and the order its edges were picked in."""

    matching: Matching
    trajectory: tuple[Edge, ...]

    @property
    def steps(self) -> int:
        return len(self.trajectory)


def random_greedy_run(H: Hypergraph, seed: int) -> GreedyRun:
    # Scanning a uniform permutation and keeping every edge still disjoint picks, at
    # each step, a uniform edge among those disjoint from the current matching.
    edges = H.sorted_edges()
    rng = derive_rng(seed, "random-greedy")
    covered: set[int] = set()
    picked: list[Edge] = []
    for idx in rng.permutation(len(edges)):
        e = edges[int(idx)]
        if covered.isdisjoint(e):
            covered.update(e)
            picked.append(e)
    logger.debug("[nibble][greedy][seed=%s] m=%d picked=%d", seed, H.m, len(picked))
    return GreedyRun(matching=Matching.of(picked), trajectory=tuple(picked))


def random_greedy_matching(H: Hypergraph, seed: int) -> Matching:
    """Maximal matching grown by uniformly random disjoint edges; deterministic per seed."""
    return random_greedy_run(H, seed).matching
