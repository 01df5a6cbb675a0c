"""Arithmetic in GF(2^a) with elements stored as ``a``-bit integers."""

from __future__ import annotations

from dataclasses import dataclass

from decompforge.core.errors import InvalidInputError

# One irreducible polynomial per degree; bit i is the coefficient of x^i.
IRREDUCIBLE: dict[int, int] = {
    2: 0b111,  # x^2 + x + 1
    3: 0xB,  # x^3 + x + 1
    4: 0x13,  # x^4 + x + 1
    5: 0x25,  # x^5 + x^2 + 1
    6: 0x43,  # x^6 + x + 1
    7: 0x83,  # x^7 + x + 1
    8: 0x11D,  # x^8 + x^4 + x^3 + x^2 + 1
    9: 0x211,  # x^9 + x^4 + 1
    10: 0x409,  # x^10 + x^3 + 1
    11: 0x805,  # x^11 + x^2 + 1
    12: 0x1053,  # x^12 + x^6 + x^4 + x + 1
    13: 0x201B,  # x^13 + x^4 + x^3 + x + 1
    14: 0x4443,  # x^14 + x^10 + x^6 + x + 1
    15: 0x8003,  # x^15 + x + 1
    16: 0x1100B,  # x^16 + x^12 + x^3 + x + 1
}


def _clmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _poly_divmod(a: int, b: int) -> tuple[int, int]:
    q = 0
    db = b.bit_length()
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree up to half that of ``poly``."""
    degree = poly.bit_length() - 1
    if degree < 1:
        return False
    for d in range(2, 1 << (degree // 2 + 1)):
        if _poly_divmod(poly, d)[1] == 0:
            return False
    return True


@dataclass(frozen=True, slots=True)
class FieldGF2a:
    a: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus.bit_length() - 1 != self.a:
            raise InvalidInputError(f"modulus {self.modulus:#x} does not have degree {self.a}")

    @classmethod
    def of_degree(cls, a: int) -> FieldGF2a:
        if a not in IRREDUCIBLE:
            raise InvalidInputError(f"no modulus tabulated for degree {a} (supported: 2..16)")
        return cls(a=a, modulus=IRREDUCIBLE[a])

    @property
    def order(self) -> int:
        return 1 << self.a

    def check(self, x: int) -> int:
        if not 0 <= x < self.order:
            raise InvalidInputError(f"{x} is not an element of GF(2^{self.a})")
        return x

    def add(self, x: int, y: int) -> int:
        return self.check(x) ^ self.check(y)

    def mul(self, x: int, y: int) -> int:
        return _poly_divmod(_clmul(self.check(x), self.check(y)), self.modulus)[1]

    def inv(self, x: int) -> int:
        """Multiplicative inverse by the extended Euclidean algorithm over GF(2)[x]."""
        if self.check(x) == 0:
            raise InvalidInputError("0 has no inverse")
        r0, r1 = self.modulus, x
        s0, s1 = 0, 1
        while r1 != 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 ^ _clmul(q, s1)
        return _poly_divmod(s1, self.modulus)[1]
