"""Octahedra and the weight flips they allow.

The octahedron ``K_{2,2,2}`` with parts ``{a0,a1}, {b0,b1}, {c0,c1}`` has eight
triangles, one per choice of a vertex from each part. Splitting them by the parity of
how many second vertices they pick gives two groups of four, and each of the twelve
edges lies in exactly one triangle of each group. Adding a constant to one group and
subtracting it from the other therefore leaves every edge sum unchanged.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from itertools import product

from decompforge.core.errors import ImpossibleStateError, InvalidInputError
from decompforge.core.hypergraph import GraphEdge, Triangle, pair, triangle_edges, triple

Weighting = dict[Triangle, int]


@dataclass(slots=True)
class FlipAudit:
    """Running tally of the edge-sum checks made by :func:`flip`.

    A failed check raises, so every counted flip kept all twelve sums.
    """

    flips: int = 0
    edge_checks: int = 0

    def to_dict(self) -> dict[str, int]:
        return {"flips": self.flips, "edge_checks": self.edge_checks}


@dataclass(frozen=True, slots=True)
class Octahedron:
    parts: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]

    def __post_init__(self) -> None:
        vertices = [v for part in self.parts for v in part]
        if len(set(vertices)) != 6:
            raise InvalidInputError(f"octahedron needs six distinct vertices, got {vertices}")

    @classmethod
    def of(cls, parts: Sequence[Sequence[int]]) -> Octahedron:
        a, b, c = (tuple(int(v) for v in part) for part in parts)
        if len(a) != 2 or len(b) != 2 or len(c) != 2:
            raise InvalidInputError("octahedron parts must have two vertices each")
        return cls(parts=((a[0], a[1]), (b[0], b[1]), (c[0], c[1])))

    def vertices(self) -> frozenset[int]:
        return frozenset(v for part in self.parts for v in part)

    def edges(self) -> list[GraphEdge]:
        return sorted(pair(u, v) for p, q in ((0, 1), (0, 2), (1, 2)) for u in self.parts[p] for v in self.parts[q])

    def groups(self) -> tuple[tuple[Triangle, ...], tuple[Triangle, ...]]:
        """The triangles picking an even and an odd number of second vertices."""
        even: list[Triangle] = []
        odd: list[Triangle] = []
        for picks in product((0, 1), repeat=3):
            t = triple(*(part[i] for part, i in zip(self.parts, picks, strict=True)))
            (odd if sum(picks) % 2 else even).append(t)
        return tuple(sorted(even)), tuple(sorted(odd))

    def group_of(self, t: Triangle) -> int:
        """0 if ``t`` is in the even group, 1 if in the odd group."""
        even, odd = self.groups()
        if t in even:
            return 0
        if t in odd:
            return 1
        raise InvalidInputError(f"triangle {t} is not a face of {self.parts}")

    def fits(self, adj: Sequence[set[int]]) -> bool:
        """Whether all twelve edges are present in the graph given by ``adj``."""
        return all(v in adj[u] for u, v in self.edges())


def edge_sums(weights: Mapping[Triangle, int], edges: Iterable[GraphEdge] | None = None) -> dict[GraphEdge, int]:
    """Total weight of the triangles through each edge (restricted to ``edges`` when given)."""
    wanted = None if edges is None else set(edges)
    out: dict[GraphEdge, int] = {}
    for t, w in weights.items():
        for e in triangle_edges(t):
            if wanted is None or e in wanted:
                out[e] = out.get(e, 0) + w
    return out


def flip(
    weights: Mapping[Triangle, int], O: Octahedron, direction: int = 1, audit: FlipAudit | None = None
) -> Weighting:
    """Add ``direction`` to the even group of ``O`` and subtract it from the odd group.

    Returns a new weighting with zero entries dropped. The edge sums of the twelve
    octahedron edges are checked before returning and tallied in ``audit`` when given.
    """
    even, odd = O.groups()
    out: Weighting = dict(weights)
    for t, delta in [(t, direction) for t in even] + [(t, -direction) for t in odd]:
        value = out.get(t, 0) + delta
        if value:
            out[t] = value
        else:
            out.pop(t, None)
    edges = O.edges()
    if _nonzero(edge_sums(weights, edges)) != _nonzero(edge_sums(out, edges)):
        raise ImpossibleStateError(f"flip of {O.parts} changed an edge sum")
    if audit is not None:
        audit.flips += 1
        audit.edge_checks += len(edges)
    return out


def _nonzero(sums: Mapping[GraphEdge, int]) -> dict[GraphEdge, int]:
    return {e: s for e, s in sums.items() if s}
