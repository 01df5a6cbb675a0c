"""Immutable hypergraph, matching and triangle-decomposition values.

Vertices are dense integer ids ``0..n-1``; every edge is stored as a sorted tuple and
collections iterate in canonical lexicographic order whenever order matters.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations

from decompforge.core.errors import InvalidInstanceError

Edge = tuple[int, ...]
GraphEdge = tuple[int, int]
Triangle = tuple[int, int, int]


def canonical(vertices: Iterable[int]) -> Edge:
    return tuple(sorted(int(v) for v in vertices))


def pair(u: int, v: int) -> GraphEdge:
    return (u, v) if u < v else (v, u)


def triple(a: int, b: int, c: int) -> Triangle:
    x, y, z = sorted((a, b, c))
    return (x, y, z)


def triangle_edges(t: Sequence[int]) -> tuple[GraphEdge, GraphEdge, GraphEdge]:
    a, b, c = t
    return pair(a, b), pair(a, c), pair(b, c)


def _normalise(n: int, r: int, raw_edges: Iterable[Sequence[int]]) -> frozenset[Edge]:
    seen: set[Edge] = set()
    for raw in raw_edges:
        edge = canonical(raw)
        if len(edge) != r or len(set(edge)) != r:
            raise InvalidInstanceError(f"edge {list(raw)} is not a set of {r} distinct vertices")
        if edge[0] < 0 or edge[-1] >= n:
            raise InvalidInstanceError(f"edge {list(raw)} has a vertex outside 0..{n - 1}")
        if edge in seen:
            raise InvalidInstanceError(f"duplicate edge {list(edge)}")
        seen.add(edge)
    return frozenset(seen)


@dataclass(frozen=True, slots=True)
class Hypergraph:
    """An r-uniform hypergraph on the vertex set ``{0..n-1}``.

    Graphs are the case ``r == 2``. Construct through :meth:`of` (or the complete
    constructors) so edges are validated and brought into canonical form.
    """

    n: int
    r: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidInstanceError(f"vertex count must be non-negative, got {self.n}")
        if self.r < 1:
            raise InvalidInstanceError(f"uniformity must be positive, got {self.r}")
        object.__setattr__(self, "edges", _normalise(self.n, self.r, self.edges))

    @classmethod
    def of(cls, n: int, r: int, edges: Iterable[Sequence[int]]) -> Hypergraph:
        return cls(n=n, r=r, edges=frozenset(canonical(e) for e in _checked_list(edges)))

    @classmethod
    def graph(cls, n: int, edges: Iterable[Sequence[int]]) -> Hypergraph:
        return cls.of(n, 2, edges)

    @classmethod
    def complete(cls, n: int, r: int = 2) -> Hypergraph:
        return cls(n=n, r=r, edges=frozenset(combinations(range(n), r)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def is_graph(self) -> bool:
        return self.r == 2

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for edge in self.edges:
            for v in edge:
                deg[v] += 1
        return deg

    def has_edge(self, edge: Iterable[int]) -> bool:
        return canonical(edge) in self.edges

    def covered_vertices(self) -> frozenset[int]:
        return frozenset(v for edge in self.edges for v in edge)

    def with_edges(self, edges: Iterable[Sequence[int]]) -> Hypergraph:
        """Same vertex set and uniformity, different edge set."""
        return Hypergraph(n=self.n, r=self.r, edges=frozenset(canonical(e) for e in edges))

    def without(self, edges: Iterable[Sequence[int]]) -> Hypergraph:
        drop = {canonical(e) for e in edges}
        return Hypergraph(n=self.n, r=self.r, edges=self.edges - drop)

    def induced(self, vertices: Iterable[int]) -> Hypergraph:
        """Edges lying entirely inside ``vertices``; the vertex ids are not renumbered."""
        keep = set(vertices)
        return Hypergraph(n=self.n, r=self.r, edges=frozenset(e for e in self.edges if keep.issuperset(e)))

    def relabel(self, order: Sequence[int]) -> tuple[Hypergraph, list[int]]:
        """Compress the vertices in ``order`` to ``0..len(order)-1``.

        Edges touching a vertex outside ``order`` are dropped. Returns the compressed
        hypergraph and the list mapping new ids back to old ones.
        """
        index = {v: i for i, v in enumerate(order)}
        edges = [tuple(index[v] for v in e) for e in self.edges if all(v in index for v in e)]
        return Hypergraph.of(len(order), self.r, edges), list(order)


def _checked_list(edges: Iterable[Sequence[int]]) -> list[Sequence[int]]:
    items = list(edges)
    canon = [canonical(e) for e in items]
    if len(set(canon)) != len(canon):
        dup = next(e for e in canon if canon.count(e) > 1)
        raise InvalidInstanceError(f"duplicate edge {list(dup)}")
    return items


@dataclass(frozen=True, slots=True)
class Matching:
    """A set of edges claimed to be pairwise disjoint; check it with the verifiers."""

    edges: frozenset[Edge]

    @classmethod
    def of(cls, edges: Iterable[Sequence[int]]) -> Matching:
        return cls(edges=frozenset(canonical(e) for e in edges))

    @property
    def size(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)


@dataclass(frozen=True, slots=True)
class TriangleDecomposition:
    """A set of triangles claimed to partition the edges of a host graph."""

    triangles: frozenset[Triangle]

    @classmethod
    def of(cls, triangles: Iterable[Sequence[int]]) -> TriangleDecomposition:
        out: set[Triangle] = set()
        for t in triangles:
            a, b, c = canonical(t)
            out.add((a, b, c))
        return cls(triangles=frozenset(out))

    def __len__(self) -> int:
        return len(self.triangles)

    def sorted_triangles(self) -> list[Triangle]:
        return sorted(self.triangles)

    def edges(self) -> Iterator[GraphEdge]:
        for t in self.triangles:
            yield from triangle_edges(t)
