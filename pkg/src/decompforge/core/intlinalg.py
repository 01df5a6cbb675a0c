"""Exact integer linear algebra on sympy's normal forms.

Lattice bases come from :func:`sympy.polys.matrices.normalforms.hermite_normal_form`
and integer systems ``M x = b`` are solved through one Smith decomposition
``D = S M T`` of ``M``: ``x = T y`` with ``y_i = (S b)_i / d_i``.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence

from sympy import Matrix
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form, smith_normal_decomp

from decompforge.core.errors import InvalidInputError

SparseVector = Mapping[int, int]


def _domain_matrix(rows: Sequence[Sequence[int]], shape: tuple[int, int]) -> DomainMatrix:
    return DomainMatrix([[ZZ(int(x)) for x in row] for row in rows], shape, ZZ)


def row_hermite_basis(vectors: Sequence[Sequence[int]], dimension: int) -> list[list[int]]:
    """Hermite basis of the integer span of ``vectors`` as rows.

    Rows come in echelon order with positive pivots, and every entry above a pivot lies in
    ``[0, pivot)``. sympy reduces columns from the last row up and keeps only the pivot
    columns, so the vectors go in as columns with their coordinates reversed and come back
    out right to left. Zero columns pad the matrix to at least square, since only the last
    ``min(rows, columns)`` rows are reduced.
    """
    for v in vectors:
        if len(v) != dimension:
            raise InvalidInputError(f"vector {list(v)} does not have dimension {dimension}")
    width = max(len(vectors), dimension)
    rows = [
        [int(vectors[j][dimension - 1 - i]) if j < len(vectors) else 0 for j in range(width)]
        for i in range(dimension)
    ]
    W = hermite_normal_form(_domain_matrix(rows, (dimension, width)))
    entries = W.to_list()
    return [[int(entries[dimension - 1 - c][j]) for c in range(dimension)] for j in reversed(range(W.shape[1]))]


def gram_determinant(rows: Sequence[Sequence[int]]) -> int:
    """``det(B B^T)`` of the matrix with the given rows."""
    if not rows:
        return 1
    B = Matrix(rows)
    return int((B * B.T).det())


class SmithSolver:
    """Integer solutions of ``M x = b`` for a fixed matrix given by sparse columns.

    Args:
        columns: Column ``j`` of ``M`` as ``{row: value}``.
        rows: Number of rows of ``M``.
    """

    def __init__(self, columns: Sequence[SparseVector], rows: int) -> None:
        dense = [[0] * len(columns) for _ in range(rows)]
        for j, column in enumerate(columns):
            for i, value in column.items():
                dense[i][j] = int(value)
        D, S, T = smith_normal_decomp(_domain_matrix(dense, (rows, len(columns))))
        diagonal = D.to_list()
        self._d = [int(diagonal[i][i]) for i in range(min(rows, len(columns))) if diagonal[i][i]]
        self._s = [[int(x) for x in row] for row in S.to_list()]
        self._t = [[int(x) for x in row] for row in T.to_list()]

    @property
    def rank(self) -> int:
        return len(self._d)

    def solve(self, target: SparseVector) -> list[int] | None:
        """One integer ``x`` with ``M x == target``, or ``None``."""
        sb = [sum(row[i] * v for i, v in target.items()) for row in self._s]
        if any(sb[self.rank :]):
            return None
        y: list[int] = []
        for value, d in zip(sb, self._d, strict=False):
            if value % d:
                return None
            y.append(value // d)
        return [sum(row[i] * yi for i, yi in enumerate(y)) for row in self._t]
