"""Latin squares and their tripartite 3-graphs.

A transversal of a Latin square of order k is a perfect matching of the 3-graph whose
edges are the cells ``(row, column, symbol)``.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from decompforge.core.errors import InvalidInputError
from decompforge.core.hypergraph import Hypergraph


@dataclass(frozen=True, slots=True)
class LatinSquare:
    order: int
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        k = self.order
        if k < 1 or len(self.cells) != k:
            raise InvalidInputError(f"expected {k} rows")
        symbols = set(range(k))
        for row in self.cells:
            if len(row) != k or set(row) != symbols:
                raise InvalidInputError(f"row {list(row)} is not a permutation of 0..{k - 1}")
        for j in range(k):
            if {row[j] for row in self.cells} != symbols:
                raise InvalidInputError(f"column {j} repeats a symbol")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> LatinSquare:
        return cls(order=len(rows), cells=tuple(tuple(int(x) for x in row) for row in rows))


def cyclic_latin_square(k: int) -> LatinSquare:
    return LatinSquare.of([[(i + j) % k for j in range(k)] for i in range(k)])


def latin_to_3graph(L: LatinSquare) -> Hypergraph:
    """Rows are vertices ``0..k-1``, columns ``k..2k-1``, symbols ``2k..3k-1``."""
    k = L.order
    return Hypergraph.of(3 * k, 3, [(i, k + j, 2 * k + L.cells[i][j]) for i in range(k) for j in range(k)])


def latin_squares(k: int) -> Iterator[LatinSquare]:
    """Every Latin square of order ``k``, filled cell by cell in row-major order."""
    if k < 1:
        raise InvalidInputError("order must be positive")
    grid = [[-1] * k for _ in range(k)]
    row_used = [set() for _ in range(k)]
    col_used = [set() for _ in range(k)]

    def fill(cell: int) -> Iterator[LatinSquare]:
        if cell == k * k:
            yield LatinSquare.of(grid)
            return
        i, j = divmod(cell, k)
        for s in range(k):
            if s in row_used[i] or s in col_used[j]:
                continue
            grid[i][j] = s
            row_used[i].add(s)
            col_used[j].add(s)
            yield from fill(cell + 1)
            row_used[i].discard(s)
            col_used[j].discard(s)
        grid[i][j] = -1

    yield from fill(0)


def transversals(L: LatinSquare) -> list[tuple[int, ...]]:
    """All transversals, each given as the column chosen in every row."""
    k = L.order
    found: list[tuple[int, ...]] = []
    chosen: list[int] = []
    used_cols: set[int] = set()
    used_syms: set[int] = set()

    def extend(i: int) -> None:
        if i == k:
            found.append(tuple(chosen))
            return
        for j in range(k):
            s = L.cells[i][j]
            if j in used_cols or s in used_syms:
                continue
            chosen.append(j)
            used_cols.add(j)
            used_syms.add(s)
            extend(i + 1)
            chosen.pop()
            used_cols.discard(j)
            used_syms.discard(s)

    extend(0)
    return found
