"""Exact rational feasibility solver.

Solves ``A x = b, x >= 0`` over :class:`fractions.Fraction` with the phase-one simplex
method: one artificial variable per row, minimise their sum, Bland's rule for both the
entering column and ties in the ratio test. Rows are sparse dicts, so the cost of a
pivot scales with the non-zeros of the pivot column rather than the full tableau.

When the artificial sum cannot be driven to zero the final reduced costs yield a
Farkas certificate ``y`` with ``y . A_j <= 0`` for every column and ``y . b > 0``.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from decompforge.core.errors import CancelledError, ImpossibleStateError

logger = logging.getLogger(__name__)

Row = dict[int, Fraction]


@dataclass(frozen=True, slots=True)
class Infeasible:
    """No non-negative solution exists.

    ``certificate`` maps constraint keys to the multipliers of a Farkas certificate;
    ``reason`` says how infeasibility was established.
    """

    certificate: dict[Any, Fraction] = field(default_factory=dict)
    reason: str = "phase one ended with a positive artificial sum"

    def to_dict(self) -> dict[str, Any]:
        rows = [[_jsonable(k), v.numerator, v.denominator] for k, v in sorted(self.certificate.items(), key=_key)]
        return {"infeasible": True, "reason": self.reason, "certificate": rows}


def _jsonable(key: Any) -> Any:
    return list(key) if isinstance(key, tuple) else key


def _key(item: tuple[Any, Fraction]) -> Any:
    k = item[0]
    return (0, k) if isinstance(k, int) else (1, tuple(k))


def solve_feasibility(
    rows: Sequence[Mapping[int, Fraction | int]],
    rhs: Sequence[Fraction | int],
    ncols: int,
    cancel: object | None = None,
) -> dict[int, Fraction] | Infeasible:
    """Find ``x >= 0`` with ``rows[i] . x == rhs[i]`` for every ``i``.

    Args:
        rows: Sparse constraint rows, ``{column: coefficient}``.
        rhs: Right-hand sides.
        ncols: Number of structural columns (column ids ``0..ncols-1``).
        cancel: Optional token with ``is_set()`` polled once per pivot.

    Returns:
        A basic feasible solution as ``{column: value}`` (zeros omitted), or
        :class:`Infeasible` whose certificate is keyed by row index.
    """
    m = len(rows)
    signs: list[int] = []
    tableau: list[Row] = []
    values: list[Fraction] = []
    for i, (row, b) in enumerate(zip(rows, rhs, strict=True)):
        sign = -1 if b < 0 else 1
        signs.append(sign)
        entries = {j: Fraction(sign * v) for j, v in row.items() if v}
        entries[ncols + i] = Fraction(1)
        tableau.append(entries)
        values.append(Fraction(sign * b))
    basis = [ncols + i for i in range(m)]

    # Reduced costs of the phase-one objective (sum of artificials).
    cost: Row = {}
    for row in tableau:
        for j, v in row.items():
            if j < ncols:
                cost[j] = cost.get(j, Fraction(0)) - v
    pivots = 0
    is_set = getattr(cancel, "is_set", None)

    while True:
        entering = min((j for j, v in cost.items() if v < 0), default=None)
        if entering is None:
            break
        if is_set is not None and is_set():
            raise CancelledError(f"simplex cancelled after {pivots} pivots")
        leaving: int | None = None
        best: tuple[Fraction, int] | None = None
        for i, row in enumerate(tableau):
            a = row.get(entering)
            if a is None or a <= 0:
                continue
            key = (values[i] / a, basis[i])
            if best is None or key < best:
                best, leaving = key, i
        if leaving is None:
            raise ImpossibleStateError("phase-one objective is bounded below; the ratio test cannot be empty")
        _pivot(tableau, values, cost, leaving, entering)
        basis[leaving] = entering
        pivots += 1

    remaining = sum((values[i] for i in range(m) if basis[i] >= ncols), Fraction(0))
    logger.debug("[relaxations][simplex] rows=%d cols=%d pivots=%d residual=%s", m, ncols, pivots, remaining)
    if remaining > 0:
        # y_i = 1 - reduced cost of artificial i, mapped back through the row sign.
        certificate = {i: signs[i] * (1 - cost.get(ncols + i, Fraction(0))) for i in range(m)}
        return Infeasible(certificate={i: y for i, y in certificate.items() if y})
    return {basis[i]: values[i] for i in range(m) if basis[i] < ncols and values[i]}


def _pivot(tableau: list[Row], values: list[Fraction], cost: Row, r: int, col: int) -> None:
    row = tableau[r]
    inv = 1 / row[col]
    if inv != 1:
        for j in row:
            row[j] *= inv
        values[r] *= inv
    for i, other in enumerate(tableau):
        if i == r:
            continue
        factor = other.get(col)
        if factor is None:
            continue
        _subtract(other, row, factor)
        values[i] -= factor * values[r]
    factor = cost.get(col)
    if factor is not None:
        _subtract(cost, row, factor)


def _subtract(target: Row, row: Row, factor: Fraction) -> None:
    for j, v in row.items():
        value = target.get(j, Fraction(0)) - factor * v
        if value:
            target[j] = value
        else:
            target.pop(j, None)
