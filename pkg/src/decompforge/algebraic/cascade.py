"""Associated octahedra and cascades that push positive weight onto template triangles.

For a triangle ``xyz`` with labels that do not sum to zero, the octahedron with parts
``{x, y+z}, {y, z+x}, {z, x+y}`` (vertices named by their labels) has ``xyz`` in one
face group and four template triangles in the other:

    {x, y, x+y}, {y+z, y, z}, {x, z+x, z}, {y+z, z+x, x+y}

so one flip trades a unit on ``xyz`` for a unit on each of those template triangles.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

from decompforge.algebraic.template import Template
from decompforge.core.errors import Failure
from decompforge.core.hypergraph import Triangle
from decompforge.core.octahedra import FlipAudit, Octahedron, Weighting, flip
from decompforge.core.rng import derive_rng

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class NotOctahedral:
    reason: str


@dataclass(frozen=True, slots=True)
class AssociatedOctahedron:
    octahedron: Octahedron
    with_triangle: tuple[Triangle, ...]
    template_side: tuple[Triangle, ...]


def associated_octahedron(t: Triangle, T: Template) -> AssociatedOctahedron | NotOctahedral:
    """The octahedron of ``t`` if all its twelve edges lie in ``G*``."""
    L = T.labeling
    x, y, z = t
    X, Y, Z = L.label(x), L.label(y), L.label(z)
    if X ^ Y ^ Z == 0:
        return NotOctahedral(reason=f"{t} is a template triangle (y+z = x)")
    partners = []
    for label in (Y ^ Z, Z ^ X, X ^ Y):
        v = L.vertex_of(label)
        if v is None:
            return NotOctahedral(reason=f"label {label} is not carried by any vertex")
        partners.append(v)
    O = Octahedron.of(((x, partners[0]), (y, partners[1]), (z, partners[2])))
    if not O.fits(T.adjacency()):
        missing = next(e for e in O.edges() if e[1] not in T.adjacency()[e[0]])
        return NotOctahedral(reason=f"edge {missing[0]}-{missing[1]} of the octahedron is not in G*")
    even, odd = O.groups()
    return AssociatedOctahedron(octahedron=O, with_triangle=even, template_side=odd)


@dataclass(frozen=True, slots=True)
class Cascade:
    """Flips that absorb one unit of a positive triangle; each entry is ``(octahedron, direction)``."""

    target: Triangle
    flips: tuple[tuple[Octahedron, int], ...]
    tried: int = 0

    def apply(self, weights: Mapping[Triangle, int], audit: FlipAudit | None = None) -> Weighting:
        out = dict(weights)
        for O, direction in self.flips:
            out = flip(out, O, direction, audit)
        return out

    def to_dict(self) -> dict[str, Any]:
        return {
            "target": list(self.target),
            "flips": [[[list(p) for p in O.parts], d] for O, d in self.flips],
            "tried": self.tried,
        }


def cascade_absorb(t: Triangle, T: Template, seed: int, budget: int = 500) -> Cascade | Failure:
    """Flips that move one unit of weight from ``t`` onto template triangles.

    An octahedral ``t`` needs one flip of its associated octahedron. Otherwise random
    octahedra ``{x,x'}, {y,y'}, {z,z'}`` inside ``G*`` are tried until the four
    triangles opposite ``xyz`` are each template or octahedral; flipping that
    octahedron and then each companion's associated octahedron absorbs ``t``.
    """
    if t in T:
        return Cascade(target=t, flips=())
    direct = associated_octahedron(t, T)
    if isinstance(direct, AssociatedOctahedron):
        return Cascade(target=t, flips=((direct.octahedron, -1),))
    adj = T.adjacency()
    x, y, z = t
    rng = derive_rng(seed, "cascade", *t)
    choices = [sorted(adj[v] - set(t)) for v in t]
    if not all(choices):
        return Failure(stage="cascade", reason="a vertex of the triangle has no G* neighbours", witness=t)
    for tried in range(1, budget + 1):
        xp, yp, zp = (c[int(rng.integers(len(c)))] for c in choices)
        if len({xp, yp, zp}) < 3:
            continue
        O = Octahedron.of(((x, xp), (y, yp), (z, zp)))
        if not O.fits(adj):
            continue
        _, companions = O.groups()
        follow: list[tuple[Octahedron, int]] = []
        for c in companions:
            if c in T:
                continue
            assoc = associated_octahedron(c, T)
            if isinstance(assoc, NotOctahedral):
                break
            follow.append((assoc.octahedron, -1))
        else:
            logger.debug("[algebraic][cascade] %s absorbed after %d candidates", t, tried)
            return Cascade(target=t, flips=((O, -1), *follow), tried=tried)
    return Failure(stage="cascade", reason="candidate budget exhausted", witness=t, diagnostics={"budget": budget})
