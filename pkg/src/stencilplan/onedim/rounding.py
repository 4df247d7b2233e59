"""LP-driven row assignment: successive rounding and the final small ILP."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..lp import build_1d_simplified, solve_lp, solve_milp
from ..model import Instance, InputError
from .ordering import OrderSolution, fit_order, symmetric_length

UNSOLVED, ASSIGNED, REJECTED = 0, 1, 2


@dataclass
class RoundingState:
    status: np.ndarray  # (n, m) of UNSOLVED / ASSIGNED / REJECTED
    orders: list[OrderSolution]
    times: np.ndarray  # current per-region writing time
    iteration: int = 0
    lp_values: dict = field(default_factory=dict)
    unsolved_history: list[int] = field(default_factory=list)
    binaries_history: list[int] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)

    @property
    def used(self) -> np.ndarray:
        return np.array([sum(c.w - c.s for c in o.order) for o in self.orders], dtype=float)

    @property
    def blank(self) -> np.ndarray:
        return np.array([max((c.s for c in o.order), default=0) for o in self.orders], dtype=float)

    def selected_mask(self) -> np.ndarray:
        return (self.status == ASSIGNED).any(axis=1)

    def row_of(self, i: int) -> int | None:
        rows = np.flatnonzero(self.status[i] == ASSIGNED)
        return int(rows[0]) if len(rows) else None

    def unsolved_count(self) -> int:
        return int((self.status == UNSOLVED).sum())

    def copy(self) -> "RoundingState":
        return RoundingState(self.status.copy(), list(self.orders), self.times.copy(), self.iteration,
                             dict(self.lp_values), list(self.unsolved_history),
                             list(self.binaries_history), list(self.flags))


def initial_state(instance: Instance) -> RoundingState:
    if instance.mode != "1d":
        raise InputError("row assignment needs a 1d instance")
    st = instance.stencil
    n, m = len(instance), st.rows
    status = np.zeros((n, m), dtype=np.int8)
    for i, c in enumerate(instance.candidates):
        if c.w > st.width or c.h > st.row_height:
            status[i] = REJECTED
    times = instance.vsb_times.astype(np.int64).copy()
    return RoundingState(status, [OrderSolution(0, 0, 0, ())] * m, times)


def update_profits(instance: Instance, state: RoundingState) -> np.ndarray:
    """Reductions weighted by how close each region is to the bottleneck."""
    t = state.times.astype(float)
    t_max = t.max() if len(t) else 0.0
    weights = t / t_max if t_max > 0 else np.ones_like(t)
    return instance.reductions @ weights


def try_assign(instance: Instance, state: RoundingState, i: int, j: int, threshold=20,
               dominance="corrected") -> bool:
    """Assign char i to row j if the row still fits; marks the pair solved either way."""
    c = instance.candidates[i]
    order = fit_order(state.orders[j], c, instance.stencil.width, threshold, dominance)
    if order is None:
        state.status[i, j] = REJECTED
        return False
    state.orders[j] = order
    state.status[i] = REJECTED
    state.status[i, j] = ASSIGNED
    state.times = state.times - instance.reductions[i]
    return True


def prune_hopeless(instance: Instance, state: RoundingState):
    """Reject unsolved pairs that cannot fit their row even by the row estimate."""
    W = instance.stencil.width
    for j, sol in enumerate(state.orders):
        rows = np.flatnonzero(state.status[:, j] == UNSOLVED)
        if not len(rows):
            continue
        used = sum(c.w - c.s for c in sol.order)
        blank = max((c.s for c in sol.order), default=0)
        for i in rows:
            c = instance.candidates[i]
            if used + c.w - c.s + max(blank, c.s) > W:
                state.status[i, j] = REJECTED


def _open_pairs(state: RoundingState):
    rows, cols = np.nonzero(state.status == UNSOLVED)
    return sorted(zip(rows.tolist(), cols.tolist()))


def _relaxation(instance, state, profits):
    pairs = _open_pairs(state)
    chars = sorted({i for i, _ in pairs})
    model = build_1d_simplified(instance, profits, chars=chars, allowed=set(pairs),
                                used=state.used, blank_floor=state.blank)
    return model


def _round_bands(instance, state, values, profits, th_inv, threshold, dominance) -> int:
    """Repeatedly take the largest open value and try every pair within th_inv of it."""
    open_values = {pair: v for pair, v in values.items() if v > 1e-9}
    assigned = 0
    while open_values:
        top = max(open_values.values())
        band = sorted((pair for pair, v in open_values.items() if v >= th_inv * top),
                      key=lambda p: (-open_values[p], -profits[p[0]], p))
        for i, j in band:
            del open_values[i, j]
            if state.status[i, j] != UNSOLVED:
                continue
            if try_assign(instance, state, i, j, threshold, dominance):
                assigned += 1
        open_values = {p: v for p, v in open_values.items() if state.status[p] == UNSOLVED}
    return assigned


def successive_rounding(instance: Instance, th_inv: float = 0.9, backend: str = "highs",
                        max_iterations: int = 500, threshold=20, dominance="corrected",
                        state: RoundingState | None = None, few: int = 2,
                        ilp_pairs: int = 100) -> RoundingState:
    """Relax, round, repeat.

    Stops once an iteration assigns fewer than `few` characters, or as soon
    as the relaxation has at most `ilp_pairs` open pairs so that the exact
    program can take over. The last relaxation is kept in `lp_values`.
    """
    state = initial_state(instance) if state is None else state
    prune_hopeless(instance, state)
    state.unsolved_history.append(state.unsolved_count())
    while state.unsolved_count() and state.iteration < max_iterations:
        profits = update_profits(instance, state)
        model = _relaxation(instance, state, profits)
        res = solve_lp(model.base, backend=backend)
        if res.status != "optimal":
            raise RuntimeError(f"relaxation failed at iteration {state.iteration}: {res.status}")
        values = {pair: float(res.values[v]) for pair, v in model.meta["a"].items()}
        state.lp_values = values
        state.iteration += 1
        if len(values) <= ilp_pairs:
            break
        assigned = _round_bands(instance, state, values, profits, th_inv, threshold, dominance)
        prune_hopeless(instance, state)
        state.unsolved_history.append(state.unsolved_count())
        if assigned < few:
            break
    return state


def fast_ilp_convergence(instance: Instance, state: RoundingState, lower: float = 0.1, upper: float = 0.9,
                         backend: str = "highs", time_limit: float | None = 60.0, threshold=20,
                         dominance="corrected", ilp_pairs: int = 100) -> RoundingState:
    """Fix clear-cut relaxation values, then solve what is left exactly.

    Fixing only serves to shrink the program, so it is skipped when no more
    than `ilp_pairs` pairs are open.
    """
    state = state.copy()
    profits = update_profits(instance, state)
    values = state.lp_values if state.unsolved_count() > ilp_pairs else {}
    for (i, j), v in sorted(values.items(), key=lambda kv: (-kv[1], kv[0])):
        if state.status[i, j] != UNSOLVED:
            continue
        if v < lower:
            state.status[i, j] = REJECTED
        elif v > upper:
            try_assign(instance, state, i, j, threshold, dominance)
    prune_hopeless(instance, state)
    pairs = _open_pairs(state)
    state.binaries_history.append(len(pairs))
    if not pairs:
        return state
    model = _relaxation(instance, state, update_profits(instance, state))
    res = solve_milp(model, time_limit=time_limit, backend=backend)
    if res.values is None:
        state.flags.append(f"convergence-{res.status}")
        state.status[state.status == UNSOLVED] = REJECTED
        return state
    if res.status != "optimal":
        state.flags.append(f"convergence-{res.status}")
    chosen = [(i, j) for (i, j), v in model.meta["a"].items() if res.values[v] > 0.5]
    chosen.sort(key=lambda p: (-profits[p[0]], p))
    for i, j in chosen:
        if state.status[i, j] == UNSOLVED:
            try_assign(instance, state, i, j, threshold, dominance)
    state.status[state.status == UNSOLVED] = REJECTED
    return state


def rows_within_estimate(instance: Instance, state: RoundingState) -> bool:
    W = instance.stencil.width
    return all(symmetric_length(o.order) <= W and o.w <= W for o in state.orders)
