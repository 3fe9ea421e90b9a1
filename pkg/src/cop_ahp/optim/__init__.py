"""In-house optimization engine: simplex LP, smooth/barrier convex solver, branch and bound."""

from .bnb import (
    BnbOptions,
    MilpProblem,
    MilpSolution,
    QuadraticObjective,
    SmoothObjective,
    solve_milp,
    solve_milp_by_enumeration,
)
from .simplex import LpProblem, LpSolution, solve_lp
from .smooth import (
    SmoothConstraint,
    SmoothResult,
    barrier_minimize,
    minimize_smooth,
    phase1_strict_point,
)

__all__ = [
    "BnbOptions",
    "LpProblem",
    "LpSolution",
    "MilpProblem",
    "MilpSolution",
    "QuadraticObjective",
    "SmoothConstraint",
    "SmoothObjective",
    "SmoothResult",
    "barrier_minimize",
    "minimize_smooth",
    "phase1_strict_point",
    "solve_lp",
    "solve_milp",
    "solve_milp_by_enumeration",
]
