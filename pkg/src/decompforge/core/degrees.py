from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from fractions import Fraction
from itertools import combinations
from math import ceil

from decompforge.core.errors import InvalidInstanceError
from decompforge.core.hypergraph import Edge, Hypergraph, canonical


def min_codegree(H: Hypergraph) -> int:
    """Minimum over all (r-1)-subsets of the number of edges extending it."""
    if H.r < 2 or H.n < H.r:
        raise InvalidInstanceError(f"min codegree needs r >= 2 and n >= r, got n={H.n}, r={H.r}")
    counts: Counter[Edge] = Counter()
    for edge in H.edges:
        counts.update(combinations(edge, H.r - 1))
    total = 1
    for i in range(H.r - 1):
        total = total * (H.n - i) // (i + 1)
    if len(counts) < total:
        return 0
    return min(counts.values())


def codegrees(H: Hypergraph) -> Counter[Edge]:
    counts: Counter[Edge] = Counter()
    for edge in H.edges:
        counts.update(combinations(edge, H.r - 1))
    return counts


def down_closure(edges: Iterable[Sequence[int]]) -> frozenset[Edge]:
    """All subsets of the given sets, the empty set included."""
    out: set[Edge] = set()
    for raw in edges:
        edge = canonical(raw)
        for k in range(len(edge) + 1):
            out.update(combinations(edge, k))
    return frozenset(out)


def delta_sequence(J: Iterable[Sequence[int]], r: int) -> tuple[int, ...]:
    """Minimum degree sequence ``(d_0, ..., d_{r-1})`` of a downward-closed family.

    ``d_i`` is the least number of (i+1)-sets extending an i-set of the family.
    """
    family = {canonical(e) for e in J}
    family.add(())
    for member in family:
        for k in range(len(member)):
            for sub in combinations(member, k):
                if sub not in family:
                    raise InvalidInstanceError(f"family is not closed under subsets: {list(member)} lacks {list(sub)}")
    levels: dict[int, list[Edge]] = {i: [] for i in range(r + 1)}
    for member in family:
        if len(member) <= r:
            levels[len(member)].append(member)
    sequence: list[int] = []
    for i in range(r):
        ext: Counter[Edge] = Counter()
        for f in levels[i + 1]:
            ext.update(combinations(f, i))
        sequence.append(min((ext[e] for e in levels[i]), default=0))
    return tuple(sequence)


def critical_degree_sequence(n: int, r: int) -> tuple[int, ...]:
    """Degree sequence ``ceil((1 - i/r) n)`` at which space barriers stop applying."""
    return tuple(ceil((1 - Fraction(i, r)) * n) for i in range(r))
