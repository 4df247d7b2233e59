"""End-to-end row-based planner."""
from __future__ import annotations

import time
from dataclasses import dataclass

from ..model import Instance, InputError, Placement, SolutionReport, check_legal
from .ordering import OrderSolution, refine_row
from .post import post_insertion, post_swap
from .rounding import RoundingState, fast_ilp_convergence, initial_state, successive_rounding


@dataclass
class OneDimConfig:
    th_inv: float = 0.9
    lower: float = 0.1
    upper: float = 0.9
    threshold: float = 20
    dominance: str = "corrected"
    backend: str = "highs"
    milp_time_limit: float | None = 60.0
    max_iterations: int = 500
    # rounding hands over to the exact program below these sizes
    few: int = 2
    ilp_pairs: int = 100
    swap: bool = True
    insertion: bool = True
    insertion_rounds: int = 10
    insertion_factor: int = 2


class StageError(RuntimeError):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage


def refine_rows(state: RoundingState, threshold=20, dominance="corrected") -> RoundingState:
    state = state.copy()
    for j, sol in enumerate(state.orders):
        better = refine_row(sol.order, threshold, dominance)
        if better.w < sol.w:
            state.orders[j] = better
    return state


def placement_of(state: RoundingState) -> Placement:
    entries = {}
    for j, sol in enumerate(state.orders):
        for c, x in zip(sol.order, sol.positions()):
            entries[c.id] = (j, x)
    return Placement(entries)


def solve_1d(instance: Instance, config: OneDimConfig | None = None) -> tuple[Placement, SolutionReport]:
    config = config or OneDimConfig()
    if instance.mode != "1d":
        raise InputError("solve_1d needs a 1d instance")
    start = time.perf_counter()
    stages = {}
    knobs = dict(threshold=config.threshold, dominance=config.dominance)

    def run(name, fn, *args, **kwargs):
        try:
            out = fn(*args, **kwargs)
        except Exception as exc:
            raise StageError(name, exc) from exc
        stages[name] = int(out.times.max()) if len(out.times) else 0
        return out

    state = initial_state(instance)
    if len(instance):
        state = run("rounding", successive_rounding, instance, config.th_inv, config.backend,
                    config.max_iterations, state=state, few=config.few, ilp_pairs=config.ilp_pairs, **knobs)
        state = run("convergence", fast_ilp_convergence, instance, state, config.lower, config.upper,
                    config.backend, config.milp_time_limit, ilp_pairs=config.ilp_pairs, **knobs)
        state = run("refinement", refine_rows, state, **knobs)
        if config.swap:
            state = run("swap", post_swap, instance, state, **knobs)
        if config.insertion:
            for _ in range(config.insertion_rounds):
                before = int(state.selected_mask().sum())
                state = run("insertion", post_insertion, instance, state, config.insertion_factor, **knobs)
                if int(state.selected_mask().sum()) == before:
                    break
    placement = placement_of(state)
    verdict = check_legal(instance, placement)
    if not verdict:
        raise StageError("legality", AssertionError(f"{len(verdict.violations)} violations"))
    times = state.times
    report = SolutionReport(
        region_times=tuple(int(t) for t in times),
        total=int(times.max()) if len(times) else 0,
        selected=len(placement),
        seconds=time.perf_counter() - start,
        stages=stages,
        flags=list(state.flags),
    )
    return placement, report


__all__ = ["OneDimConfig", "OrderSolution", "StageError", "placement_of", "refine_rows", "solve_1d"]
