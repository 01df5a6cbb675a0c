"""Integer lattices in Hermite normal form."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from math import prod

from sympy import integer_nthroot

from decompforge.core.errors import InvalidInputError
from decompforge.core.intlinalg import gram_determinant, row_hermite_basis

Vector = tuple[int, ...]


@dataclass(frozen=True, slots=True)
class IntegerLattice:
    """Subgroup of ``Z^d`` given by its Hermite-normal-form basis.

    Rows are in echelon order with positive pivots, and every entry above a pivot lies in
    ``[0, pivot)``. Two lattices are equal exactly when their bases are equal.
    """

    dimension: int
    basis: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def pivot_columns(self) -> list[int]:
        return [next(j for j, x in enumerate(row) if x) for row in self.basis]

    def determinant(self) -> int | None:
        """Index of the lattice in ``Z^d``; ``None`` when the rank is deficient."""
        if self.rank < self.dimension:
            return None
        return prod(row[j] for row, j in zip(self.basis, self.pivot_columns(), strict=True))

    def __contains__(self, v: Sequence[int]) -> bool:
        return lattice_contains(self, v)


def hermite_normal_form(vectors: Iterable[Sequence[int]], dimension: int) -> tuple[Vector, ...]:
    return tuple(tuple(row) for row in row_hermite_basis(list(vectors), dimension))


def lattice_from_vectors(vectors: Sequence[Sequence[int]], dimension: int | None = None) -> IntegerLattice:
    """HNF basis of the integer span of ``vectors``."""
    if dimension is None:
        if not vectors:
            raise InvalidInputError("cannot infer the dimension of an empty vector list")
        dimension = len(vectors[0])
    return IntegerLattice(dimension=dimension, basis=hermite_normal_form(vectors, dimension))


def lattice_contains(L: IntegerLattice, v: Sequence[int]) -> bool:
    """``v`` is in ``L`` exactly when adding it leaves the HNF basis unchanged."""
    if len(v) != L.dimension:
        raise InvalidInputError(f"vector of dimension {len(v)} tested against a lattice in Z^{L.dimension}")
    if not any(v):
        return True
    return hermite_normal_form([*L.basis, tuple(int(x) for x in v)], L.dimension) == L.basis


def lattice_index(L: IntegerLattice, reference: IntegerLattice) -> int | None:
    """Index ``[reference : L]`` of a sublattice; ``None`` when it is infinite.

    Raises:
        InvalidInputError: if ``L`` is not contained in ``reference``.
    """
    if L.dimension != reference.dimension:
        raise InvalidInputError("lattices live in different dimensions")
    if not all(lattice_contains(reference, row) for row in L.basis):
        raise InvalidInputError("lattice is not a sublattice of the reference")
    if L.rank < reference.rank:
        return None
    full_l, full_ref = L.determinant(), reference.determinant()
    if full_l is not None and full_ref is not None:
        return full_l // full_ref
    quotient, rest = divmod(gram_determinant(L.basis), gram_determinant(reference.basis))
    root, exact = integer_nthroot(quotient, 2)
    if rest or not exact:
        raise InvalidInputError(f"Gram determinants of the lattices do not differ by a square, quotient {quotient}")
    return int(root)
