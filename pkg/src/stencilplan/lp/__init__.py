from .branch import solve_milp
from .exact import ExactResult, optimum_by_subsets, solve_exact
from .formulations import (build_1d_exact, build_1d_simplified, build_2d_exact, build_knapsack_relax,
                           placement_from, selection_from)
from .program import Constraint, LinearProgram, MilpModel, SolveResult, Variable
from .simplex import solve_lp

__all__ = [
    "Constraint", "ExactResult", "LinearProgram", "MilpModel", "SolveResult", "Variable",
    "build_1d_exact", "build_1d_simplified", "build_2d_exact", "build_knapsack_relax",
    "optimum_by_subsets", "placement_from", "selection_from", "solve_exact", "solve_lp", "solve_milp",
]
