from decompforge.algebraic.cascade import (
    AssociatedOctahedron,
    Cascade,
    NotOctahedral,
    associated_octahedron,
    cascade_absorb,
)
from decompforge.algebraic.field import IRREDUCIBLE, FieldGF2a, is_irreducible
from decompforge.algebraic.hole import Hole, extract_hole, find_hole
from decompforge.algebraic.labeling import Labeling, compact_degree, identity_labeling, random_labeling, wide_degree
from decompforge.algebraic.leave import LeaveCover, LeaveExchange, cover_leave, exchange_leave
from decompforge.algebraic.pipeline import triangle_decompose_algebraic
from decompforge.algebraic.signed import SignedDecomposition, signed_decomposition
from decompforge.algebraic.template import Octahedron, Template, flip, template

__all__ = [
    "IRREDUCIBLE",
    "AssociatedOctahedron",
    "Cascade",
    "FieldGF2a",
    "Hole",
    "Labeling",
    "LeaveCover",
    "LeaveExchange",
    "NotOctahedral",
    "Octahedron",
    "SignedDecomposition",
    "Template",
    "associated_octahedron",
    "cascade_absorb",
    "compact_degree",
    "cover_leave",
    "exchange_leave",
    "extract_hole",
    "find_hole",
    "flip",
    "identity_labeling",
    "is_irreducible",
    "random_labeling",
    "signed_decomposition",
    "template",
    "triangle_decompose_algebraic",
    "wide_degree",
]
