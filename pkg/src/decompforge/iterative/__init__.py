from decompforge.iterative.absorbers import (
    ExclusiveAbsorber,
    exclusive_absorber,
    reserve_absorbers,
    tridivisible_subgraphs,
)
from decompforge.iterative.boost import boost_triangles
from decompforge.iterative.cover_down import CoverDownResult, cover_down
from decompforge.iterative.pipeline import triangle_decompose_iterative
from decompforge.iterative.preflight import PreflightReport, preflight
from decompforge.iterative.vortex import LevelStats, Vortex, build_vortex, level_stats

__all__ = [
    "CoverDownResult",
    "ExclusiveAbsorber",
    "LevelStats",
    "PreflightReport",
    "Vortex",
    "boost_triangles",
    "build_vortex",
    "cover_down",
    "exclusive_absorber",
    "level_stats",
    "preflight",
    "reserve_absorbers",
    "tridivisible_subgraphs",
    "triangle_decompose_iterative",
]
