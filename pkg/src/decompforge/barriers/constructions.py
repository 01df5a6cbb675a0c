"""Space and divisibility barriers: constructions, detection and partition search."""

from __future__ import annotations

import logging
import warnings
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from decompforge.barriers.lattice import IntegerLattice, Vector, lattice_contains, lattice_from_vectors, lattice_index
from decompforge.core.errors import InvalidBarrierError, InvalidInputError, InvalidInstanceError, TooLargeError
from decompforge.core.hypergraph import Edge, Hypergraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class VertexPartition:
    """Ordered partition ``(V_1, ..., V_d)`` of ``{0..n-1}`` into non-empty parts."""

    parts: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for part in self.parts:
            if not part:
                raise InvalidInputError("partition parts must be non-empty")
            if seen & part:
                raise InvalidInputError(f"partition parts overlap on {sorted(seen & part)}")
            seen |= part
        if seen != set(range(len(seen))):
            raise InvalidInputError("partition must cover 0..n-1 exactly")

    @classmethod
    def of(cls, parts: Iterable[Iterable[int]]) -> VertexPartition:
        return cls(parts=tuple(frozenset(int(v) for v in p) for p in parts))

    @property
    def d(self) -> int:
        return len(self.parts)

    @property
    def n(self) -> int:
        return sum(len(p) for p in self.parts)

    def sizes(self) -> Vector:
        return tuple(len(p) for p in self.parts)

    def part_of(self) -> dict[int, int]:
        return {v: i for i, part in enumerate(self.parts) for v in part}


@dataclass(frozen=True, slots=True)
class SpaceBarrierSpec:
    """All r-sets meeting ``S`` in at least ``i`` vertices; a barrier while ``|S| < i n / r``."""

    n: int
    r: int
    i: int
    S: frozenset[int]

    def __post_init__(self) -> None:
        if not 1 <= self.i <= self.r:
            raise InvalidInputError(f"space barrier index must satisfy 1 <= i <= r, got i={self.i}")
        if any(v < 0 or v >= self.n for v in self.S):
            raise InvalidInputError("S must be a subset of the vertex set")

    @property
    def is_barrier(self) -> bool:
        return len(self.S) < Fraction(self.i * self.n, self.r)


def space_barrier(spec: SpaceBarrierSpec) -> Hypergraph:
    if not spec.is_barrier:
        message = f"|S|={len(spec.S)} >= i*n/r={Fraction(spec.i * spec.n, spec.r)}: not a space barrier"
        warnings.warn(message, UserWarning, stacklevel=2)
        logger.warning("[barriers][space] %s", message)
    S = spec.S
    return Hypergraph(
        n=spec.n,
        r=spec.r,
        edges=frozenset(e for e in combinations(range(spec.n), spec.r) if len(S.intersection(e)) >= spec.i),
    )


def edge_vector(e: Sequence[int], P: VertexPartition) -> Vector:
    """Part-count vector ``(|e & V_1|, ..., |e & V_d|)``."""
    counts = [0] * P.d
    lookup = P.part_of()
    for v in e:
        if v not in lookup:
            raise InvalidInputError(f"vertex {v} is not in the partition")
        counts[lookup[v]] += 1
    return tuple(counts)


def _edge_vectors(edges: Iterable[Edge], P: VertexPartition) -> set[Vector]:
    lookup = P.part_of()
    out: set[Vector] = set()
    for e in edges:
        counts = [0] * P.d
        for v in e:
            counts[lookup[v]] += 1
        out.add(tuple(counts))
    return out


def complete_edge_vectors(P: VertexPartition, r: int) -> set[Vector]:
    """Every part-count vector realised by some r-set."""
    sizes = P.sizes()
    out: set[Vector] = set()

    def fill(i: int, left: int, acc: list[int]) -> None:
        if i == len(sizes) - 1:
            if left <= sizes[i]:
                out.add((*acc, left))
            return
        for k in range(min(left, sizes[i]) + 1):
            fill(i + 1, left - k, [*acc, k])

    fill(0, r, [])
    return out


def divisibility_barrier(P: VertexPartition, L: IntegerLattice, r: int) -> Hypergraph:
    """Complete r-graph edges whose part-count vector lies in ``L``."""
    if L.dimension != P.d:
        raise InvalidInputError(f"lattice dimension {L.dimension} does not match {P.d} parts")
    if lattice_contains(L, P.sizes()):
        raise InvalidBarrierError(f"total vector {list(P.sizes())} lies in the lattice; no obstruction")
    lookup = P.part_of()
    keep = []
    for e in combinations(range(P.n), r):
        counts = [0] * P.d
        for v in e:
            counts[lookup[v]] += 1
        if lattice_contains(L, counts):
            keep.append(e)
    return Hypergraph(n=P.n, r=r, edges=frozenset(keep))


def parity_partition(n: int, odd_part: int | None = None) -> VertexPartition:
    """Bipartition whose first part has odd size (largest odd size up to ``n // 2`` by default)."""
    if odd_part is None:
        odd_part = n // 2 if (n // 2) % 2 else n // 2 - 1
    if odd_part < 1 or odd_part % 2 == 0 or odd_part >= n:
        raise InvalidInputError(f"odd part size must be odd and in [1, n), got {odd_part}")
    return VertexPartition.of([range(odd_part), range(odd_part, n)])


def parity_barrier(n: int, r: int = 3, odd_part: int | None = None) -> tuple[Hypergraph, VertexPartition, IntegerLattice]:
    """Edges meeting the odd part in an even number of vertices.

    The lattice is ``{(x, y): x even}``; the total vector has an odd first coordinate, so
    the construction has no perfect matching.
    """
    P = parity_partition(n, odd_part)
    L = lattice_from_vectors([(2, 0), (0, 1)])
    return divisibility_barrier(P, L, r), P, L


def is_tridivisible(G: Hypergraph) -> bool:
    """``3 | e(G)`` and every degree even."""
    if G.r != 2:
        raise InvalidInstanceError(f"tridivisibility is defined for graphs, got r={G.r}")
    return G.m % 3 == 0 and all(d % 2 == 0 for d in G.degrees())


@dataclass(frozen=True, slots=True)
class DivisibilityVerdict:
    barrier: bool
    partition: VertexPartition
    lattice: IntegerLattice
    total: Vector
    index: int | None

    def to_dict(self) -> dict:
        return {
            "verdict": "BARRIER" if self.barrier else "NO-OBSTRUCTION",
            "parts": [sorted(p) for p in self.partition.parts],
            "lattice": [list(row) for row in self.lattice.basis],
            "total": list(self.total),
            "index": self.index,
        }


def detect_divisibility_barrier(H: Hypergraph, P: VertexPartition) -> DivisibilityVerdict:
    """Span the edge vectors of ``H`` over ``P`` and test the total vector against them.

    ``index`` is the index of that lattice inside the lattice spanned by every r-set's
    vector, ``None`` if infinite.
    """
    if P.n != H.n:
        raise InvalidInputError(f"partition covers {P.n} vertices, instance has {H.n}")
    vectors = sorted(_edge_vectors(H.edges, P))
    lattice = lattice_from_vectors(vectors, P.d)
    reference = lattice_from_vectors(sorted(complete_edge_vectors(P, H.r)), P.d)
    total = P.sizes()
    barrier = not lattice_contains(lattice, total)
    return DivisibilityVerdict(
        barrier=barrier,
        partition=P,
        lattice=lattice,
        total=total,
        index=lattice_index(lattice, reference),
    )


def _partitions(n: int, d: int) -> Iterator[list[int]]:
    """Restricted growth strings: each unordered partition into exactly d parts once."""
    labels = [0] * n

    def fill(i: int, used: int) -> Iterator[list[int]]:
        if n - i < d - used:
            return
        if i == n:
            if used == d:
                yield labels
            return
        for k in range(min(used + 1, d)):
            labels[i] = k
            yield from fill(i + 1, max(used, k + 1))

    if n >= d >= 1:
        labels[0] = 0
        yield from fill(1, 1)


def search_divisibility_barrier(
    H: Hypergraph, d: int, max_vertices: int = 12, max_parts: int = 3
) -> DivisibilityVerdict | None:
    """First partition into ``d`` parts (canonical order) exhibiting a divisibility barrier."""
    if H.n > max_vertices or d > max_parts:
        raise TooLargeError(f"partition search is limited to n <= {max_vertices}, d <= {max_parts}")
    if d < 1:
        raise InvalidInputError("number of parts must be positive")
    edges = H.sorted_edges()
    checked = 0
    for labels in _partitions(H.n, d):
        checked += 1
        vectors: set[Vector] = set()
        for e in edges:
            counts = [0] * d
            for v in e:
                counts[labels[v]] += 1
            vectors.add(tuple(counts))
        sizes = [0] * d
        for lab in labels:
            sizes[lab] += 1
        lattice = lattice_from_vectors(sorted(vectors), d)
        if not lattice_contains(lattice, sizes):
            P = VertexPartition.of([[v for v in range(H.n) if labels[v] == k] for k in range(d)])
            logger.info("[barriers][search] barrier found after %d partitions", checked)
            return detect_divisibility_barrier(H, P)
    logger.info("[barriers][search] no barrier among %d partitions into %d parts", checked, d)
    return None
