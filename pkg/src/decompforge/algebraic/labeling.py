from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Any

from decompforge.algebraic.field import FieldGF2a
from decompforge.core.errors import InvalidInputError
from decompforge.core.rng import derive_rng


def wide_degree(n: int) -> int:
    """The ``a`` with ``2^(a-2) < n <= 2^(a-1)``."""
    return (n - 1).bit_length() + 1


def compact_degree(n: int) -> int:
    """The least ``a`` with ``n <= 2^a - 1``: every vertex still gets a nonzero label."""
    return max(2, n.bit_length())


@dataclass(frozen=True, slots=True)
class Labeling:
    """An injection of the vertices ``0..n-1`` into the nonzero elements of a field."""

    field: FieldGF2a
    pi: tuple[int, ...]
    _vertex: dict[int, int] = dataclasses.field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if any(x == 0 for x in self.pi):
            raise InvalidInputError("no vertex may be labelled 0")
        if len(set(self.pi)) != len(self.pi):
            raise InvalidInputError("labels must be distinct")
        for x in self.pi:
            self.field.check(x)
        object.__setattr__(self, "_vertex", {x: v for v, x in enumerate(self.pi)})

    @property
    def n(self) -> int:
        return len(self.pi)

    def label(self, v: int) -> int:
        return self.pi[v]

    def vertex_of(self, x: int) -> int | None:
        """The vertex carrying label ``x``, if any."""
        return self._vertex.get(x)

    def to_dict(self) -> dict[str, Any]:
        return {"a": self.field.a, "modulus": self.field.modulus, "pi": list(self.pi)}


def identity_labeling(n: int, a: int) -> Labeling:
    """Vertex ``v`` gets label ``v + 1``."""
    f = FieldGF2a.of_degree(a)
    if n > f.order - 1:
        raise InvalidInputError(f"{n} vertices do not fit into the {f.order - 1} nonzero elements of GF(2^{a})")
    return Labeling(field=f, pi=tuple(range(1, n + 1)))


def random_labeling(n: int, seed: int, a_override: int | None = None) -> Labeling:
    """Uniformly random injection of ``n`` vertices into ``GF(2^a) - {0}``.

    ``a`` follows ``2^(a-2) < n <= 2^(a-1)`` unless ``a_override`` is given.
    """
    if n < 3:
        raise InvalidInputError(f"labelings need at least 3 vertices, got {n}")
    a = wide_degree(n) if a_override is None else a_override
    f = FieldGF2a.of_degree(a)
    if n > f.order - 1:
        raise InvalidInputError(f"{n} vertices do not fit into the {f.order - 1} nonzero elements of GF(2^{a})")
    picks = derive_rng(seed, "labeling").choice(f.order - 1, size=n, replace=False)
    return Labeling(field=f, pi=tuple(int(x) + 1 for x in picks))
