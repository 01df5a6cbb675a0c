from decompforge.relaxations.fractional import FractionalSolution, fractional_pm, fractional_triangle_decomposition
from decompforge.relaxations.integral import (
    BoundFailure,
    IntegralSolution,
    TriangleLattice,
    bounded_integral_decomposition,
    integral_triangle_decomposition,
    reduce_weights,
)
from decompforge.relaxations.simplex import Infeasible, solve_feasibility

__all__ = [
    "BoundFailure",
    "FractionalSolution",
    "Infeasible",
    "IntegralSolution",
    "TriangleLattice",
    "bounded_integral_decomposition",
    "fractional_pm",
    "fractional_triangle_decomposition",
    "integral_triangle_decomposition",
    "reduce_weights",
    "solve_feasibility",
]
