"""Design-theory arithmetic and the Steiner-system to perfect-matching reduction."""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations

from decompforge.core.errors import InvalidInputError, InvalidInstanceError
from decompforge.core.hypergraph import Edge, Hypergraph, Matching, canonical


@dataclass(frozen=True, slots=True)
class DesignParams:
    """Parameters ``(n, q, r, lam)`` of a design: every r-set lies in ``lam`` blocks of size q."""

    n: int
    q: int
    r: int
    lam: int = 1

    def __post_init__(self) -> None:
        if min(self.n, self.q, self.r, self.lam) < 1:
            raise InvalidInputError(f"design parameters must be positive: {self}")
        if not self.r <= self.q <= self.n:
            raise InvalidInputError(f"design parameters need r <= q <= n: {self}")

    @property
    def block_shadow(self) -> int:
        """``Q = C(q, r)``, the number of r-sets inside a block."""
        return math.comb(self.q, self.r)

    @property
    def extensions(self) -> int:
        """``N = C(n - r, q - r)``, the number of blocks through a fixed r-set in the complete design."""
        return math.comb(self.n - self.r, self.q - self.r)


def design_divisibility(p: DesignParams) -> bool:
    return all(p.lam * math.comb(p.n - i, p.r - i) % math.comb(p.q - i, p.r - i) == 0 for i in range(p.r))


def design_count_leading(p: DesignParams) -> float:
    """Natural log of the leading term of the design count.

    Evaluates ``ln( lam!^{-C(n,r)} ((lam/e)^{Q-1} N)^{lam C(n,r) / Q} )``; the lower-order
    correction in the exponent is not modelled.
    """
    if not design_divisibility(p):
        raise InvalidInstanceError(f"divisibility conditions fail for {p}")
    shadow = math.comb(p.n, p.r)
    Q = p.block_shadow
    inner = (Q - 1) * (math.log(p.lam) - 1) + math.log(p.extensions)
    return -shadow * math.lgamma(p.lam + 1) + p.lam * shadow / Q * inner


def _subset_index(n: int, r: int) -> tuple[list[Edge], dict[Edge, int]]:
    subsets = list(combinations(range(n), r))
    return subsets, {s: i for i, s in enumerate(subsets)}


def steiner_auxiliary(p: DesignParams) -> Hypergraph:
    """Auxiliary C(q,r)-graph whose perfect matchings are the Steiner systems ``S(n, q, r)``.

    Vertex ``i`` is the i-th r-subset of ``range(n)`` in lexicographic order; each q-subset
    contributes the edge of its r-subsets.
    """
    if not (p.r < p.q <= p.n) or p.lam != 1:
        raise InvalidInputError(f"steiner auxiliary needs r < q <= n and lam = 1: {p}")
    subsets, index = _subset_index(p.n, p.r)
    edges = frozenset(
        tuple(sorted(index[s] for s in combinations(block, p.r))) for block in combinations(range(p.n), p.q)
    )
    return Hypergraph(n=len(subsets), r=math.comb(p.q, p.r), edges=edges)


def steiner_from_matching(p: DesignParams, M: Matching) -> frozenset[Edge]:
    """Pull a matching of the auxiliary hypergraph back to blocks of the design."""
    subsets, _ = _subset_index(p.n, p.r)
    blocks: set[Edge] = set()
    for edge in M.edges:
        blocks.add(canonical({v for i in edge for v in subsets[i]}))
    return frozenset(blocks)


def matching_from_blocks(p: DesignParams, blocks: Iterable[Sequence[int]]) -> Matching:
    _, index = _subset_index(p.n, p.r)
    edges = []
    for block in blocks:
        b = canonical(block)
        if len(b) != p.q:
            raise InvalidInputError(f"block {list(block)} does not have {p.q} points")
        edges.append(tuple(sorted(index[s] for s in combinations(b, p.r))))
    return Matching.of(edges)
