"""Absorbers for vertex triples in 3-graphs.

An edge ``e`` absorbs a triple ``T`` when the six vertices ``T | e`` split into two
edges of the host: a matching that uses ``e`` can then swallow ``T`` by trading ``e``
for the two split edges.
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Any, Literal

import numpy as np

from decompforge.config import CodegreeSettings, as_fraction
from decompforge.core.errors import Failure, InvalidInstanceError, StageFailure
from decompforge.core.hypergraph import Edge, Hypergraph, Matching, canonical
from decompforge.core.retry import run_with_retries
from decompforge.core.rng import derive_rng

logger = logging.getLogger(__name__)

Scope = Literal["all", "outside"]


def splittings(vertices: Sequence[int]) -> Iterator[tuple[Edge, Edge]]:
    """The ten ways to split six vertices into two triples, in canonical order."""
    six = sorted(vertices)
    first, rest = six[0], six[1:]
    for a, b in combinations(rest, 2):
        left = (first, a, b)
        right = tuple(v for v in rest if v not in (a, b))
        yield left, right


def absorbing_split(e: Sequence[int], T: Sequence[int], G: Hypergraph) -> tuple[Edge, Edge] | None:
    """First splitting of ``T | e`` into two edges of ``G``, or ``None``."""
    union = set(e) | set(T)
    if len(union) != 6:
        return None
    for left, right in splittings(sorted(union)):
        if left in G.edges and right in G.edges:
            return left, right
    return None


def absorbs(e: Sequence[int], T: Sequence[int], G: Hypergraph) -> bool:
    if len(set(e)) != 3 or len(set(T)) != 3:
        raise InvalidInstanceError("absorbers are defined for triples")
    return absorbing_split(e, T, G) is not None


def count_absorbers(T: Sequence[int], G: Hypergraph) -> int:
    """Number of edges of ``G`` absorbing ``T``."""
    return sum(1 for e in G.edges if absorbing_split(e, T, G) is not None)


@dataclass(frozen=True, slots=True)
class AbsorberFamily:
    """A matching reserved to absorb any leftover triple.

    Attributes:
        edges: The reserved absorber edges (pairwise disjoint).
        c: Density parameter the family was sampled with.
        certified: Number of triples checked to have an absorber in the family.
        exhaustive: Whether every triple in scope was checked (``False``: random sample).
        scope: ``"all"`` triples or only those ``"outside"`` the family's vertices.
    """

    edges: Matching
    c: Fraction
    certified: int
    exhaustive: bool
    scope: Scope

    def to_dict(self) -> dict[str, Any]:
        return {
            "absorbers": [list(e) for e in self.edges.sorted_edges()],
            "c": str(self.c),
            "certified": self.certified,
            "exhaustive": self.exhaustive,
            "scope": self.scope,
        }


def isolated_edges(edges: Sequence[Edge]) -> list[Edge]:
    """The edges that meet no other edge of ``edges``, in canonical order."""
    load = Counter(v for e in edges for v in e)
    return sorted(e for e in edges if all(load[v] == 1 for v in e))


def sampling_probability(G: Hypergraph, c: Fraction, settings: CodegreeSettings) -> float:
    if c <= 0 or G.n == 0:
        return 0.0
    q = float(c / (4 * G.n * G.n))
    if settings.rate_floor and G.m:
        q = max(q, settings.floor_edges / G.m)
    return min(q, 1.0)


def _triples(
    n: int, allowed: list[int], settings: CodegreeSettings, rng: np.random.Generator
) -> tuple[Iterator[Edge], bool]:
    if n <= settings.exhaustive_vertices:
        return (tuple(t) for t in combinations(allowed, 3)), True
    if len(allowed) < 3:
        return iter(()), False

    def sample() -> Iterator[Edge]:
        for _ in range(settings.certify_samples):
            picks = rng.choice(len(allowed), size=3, replace=False)
            yield canonical(allowed[int(i)] for i in picks)

    return sample(), False


def sample_absorber_family(
    G: Hypergraph,
    c: float | Fraction | str,
    seed: int,
    settings: CodegreeSettings | None = None,
    scope: Scope = "all",
    max_size: int | None = None,
) -> AbsorberFamily | Failure:
    """Sample a disjoint absorber family that covers every triple in scope.

    Each edge is kept independently with probability ``c / (4 n^2)`` (floored when
    ``settings.rate_floor`` is on) and both edges of every intersecting pair are deleted.
    ``max_size`` trims the family to its first edges in canonical order. The family is certified over every triple for small
    ``n`` and over ``settings.certify_samples`` random triples above that; an uncertified
    family is resampled from a fresh stream, up to ``settings.retries`` times.
    """
    if G.r != 3:
        raise InvalidInstanceError(f"absorbers are defined for 3-graphs, got r={G.r}")
    settings = settings or CodegreeSettings()
    density = as_fraction(c)
    edges = G.sorted_edges()
    q = sampling_probability(G, density, settings)

    def attempt(attempt_seed: int, attempt_no: int) -> AbsorberFamily:
        rng = derive_rng(attempt_seed, "absorbers")
        sampled = [edges[int(i)] for i in np.flatnonzero(rng.random(len(edges)) < q)]
        kept = isolated_edges(sampled)
        if max_size is not None:
            kept = kept[:max_size]
        family = Matching.of(kept)
        covered = family.vertices()
        allowed = [v for v in range(G.n) if scope == "all" or v not in covered]
        triples, exhaustive = _triples(G.n, allowed, settings, rng)
        checked = 0
        for T in triples:
            checked += 1
            if not any(absorbing_split(e, T, G) is not None for e in kept):
                raise StageFailure.at(
                    "absorbers",
                    "triple without an absorber in the family",
                    witness=T,
                    sampled=len(sampled),
                    kept=len(kept),
                    checked=checked,
                )
        logger.info(
            "[codegree][absorbers][attempt %d] q=%.3g sampled=%d kept=%d certified=%d (%s)",
            attempt_no + 1,
            q,
            len(sampled),
            len(kept),
            checked,
            "exhaustive" if exhaustive else "sampled",
        )
        return AbsorberFamily(edges=family, c=density, certified=checked, exhaustive=exhaustive, scope=scope)

    return run_with_retries(attempt, settings.retries, seed, "absorbers")
