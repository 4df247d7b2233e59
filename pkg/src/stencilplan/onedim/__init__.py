from .ordering import OrderSolution, greedy_symmetric_order, refine_row
from .pipeline import OneDimConfig, StageError, solve_1d
from .post import max_weight_matching, post_insertion, post_swap
from .rounding import RoundingState, fast_ilp_convergence, successive_rounding, update_profits

__all__ = [
    "OneDimConfig", "OrderSolution", "RoundingState", "StageError", "fast_ilp_convergence",
    "greedy_symmetric_order", "max_weight_matching", "post_insertion", "post_swap", "refine_row",
    "solve_1d", "successive_rounding", "update_profits",
]
