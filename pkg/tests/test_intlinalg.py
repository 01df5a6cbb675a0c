"""Tests for decompforge.core.intlinalg"""

import pytest

from decompforge.core.errors import InvalidInputError
from decompforge.core.intlinalg import SmithSolver, gram_determinant, row_hermite_basis


def test_hermite_basis_rows():
    assert row_hermite_basis([(1, 2), (3, 4)], 2) == [[1, 0], [0, 2]]
    assert row_hermite_basis([(4, 6), (2, 3)], 2) == [[2, 3]]
    assert row_hermite_basis([], 3) == []


def test_hermite_basis_of_few_vectors_in_a_tall_space():
    assert row_hermite_basis([(0, 0, 2), (0, 0, 3)], 3) == [[0, 0, 1]]
    assert row_hermite_basis([(0, 2, 1), (0, 0, 4)], 3) == [[0, 2, 1], [0, 0, 4]]


def test_hermite_basis_rejects_wrong_dimension():
    with pytest.raises(InvalidInputError):
        row_hermite_basis([(1, 2, 3)], 2)


def test_smith_solver_reproduces_target():
    columns = [{0: 1, 1: 2}, {0: 3, 1: 4}]
    solver = SmithSolver(columns, 2)
    assert solver.rank == 2
    x = solver.solve({0: 1})
    assert x is not None
    assert [sum(c * col.get(k, 0) for c, col in zip(x, columns, strict=True)) for k in (0, 1)] == [1, 0]
    assert solver.solve({1: 1}) is None


def test_smith_solver_outside_the_span():
    solver = SmithSolver([{0: 2}], 2)
    assert solver.solve({0: 4}) == [2]
    assert solver.solve({0: 3}) is None
    assert solver.solve({1: 2}) is None


def test_gram_determinant():
    assert gram_determinant([[2, 0], [0, 1]]) == 4
    assert gram_determinant([[1, 1], [2, 2]]) == 0
    assert gram_determinant([]) == 1
