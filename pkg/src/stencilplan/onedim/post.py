"""Local improvements after the row assignment is fixed."""
from __future__ import annotations

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..model import Instance
from .ordering import fit_order, without
from .rounding import ASSIGNED, REJECTED, RoundingState, update_profits


def _candidates_fit(instance: Instance, i: int) -> bool:
    st = instance.stencil
    c = instance.candidates[i]
    return c.w <= st.width and c.h <= st.row_height


def post_swap(instance: Instance, state: RoundingState, threshold=20, dominance="corrected",
              max_passes: int = 20) -> RoundingState:
    """Trade an on-stencil character for an unselected one when T_total drops.

    The incoming character takes the outgoing one's row. Unselected
    characters are tried in decreasing profit, partners in increasing profit;
    the first improving swap is applied.
    """
    state = state.copy()
    W = instance.stencil.width
    R = instance.reductions
    for _ in range(max_passes):
        changed = False
        profits = update_profits(instance, state)
        selected = state.selected_mask()
        outside = [i for i in np.argsort(-profits, kind="stable") if not selected[i] and _candidates_fit(instance, i)]
        for u in outside:
            selected = state.selected_mask()
            on = np.flatnonzero(selected)
            if not len(on):
                break
            total = state.times.max()
            after = (state.times[None, :] + R[on] - R[u][None, :]).max(axis=1)
            better = on[after < total]
            if not len(better):
                continue
            cu = instance.candidates[u]
            for s in sorted(better, key=lambda k: (profits[k], k)):
                j = state.row_of(s)
                rest = without(state.orders[j], instance.candidates[s].id)
                order = fit_order(rest, cu, W, threshold, dominance)
                if order is None:
                    continue
                state.orders[j] = order
                state.status[s] = REJECTED
                state.status[u] = REJECTED
                state.status[u, j] = ASSIGNED
                state.times = state.times + R[s] - R[u]
                changed = True
                break
        if not changed:
            break
    return state


def max_weight_matching(weights: np.ndarray) -> list[tuple[int, int]]:
    """Maximum-weight bipartite matching; zero entries mean no edge."""
    if weights.size == 0:
        return []
    rows, cols = linear_sum_assignment(weights, maximize=True)
    return [(int(r), int(c)) for r, c in zip(rows, cols) if weights[r, c] > 0]


def post_insertion(instance: Instance, state: RoundingState, factor: int = 2, threshold=20,
                   dominance="corrected") -> RoundingState:
    """Insert at most one extra character per row via a weighted matching."""
    state = state.copy()
    W = instance.stencil.width
    m = instance.stencil.rows
    profits = update_profits(instance, state)
    selected = state.selected_mask()
    pool = [i for i in np.argsort(-profits, kind="stable")
            if not selected[i] and _candidates_fit(instance, i) and profits[i] > 0][: factor * m]
    if not pool:
        return state
    cands = instance.candidates
    min_core = min(cands[i].w - cands[i].sl - cands[i].sr for i in pool)
    rows = [j for j in range(m) if W - state.orders[j].w >= min_core]
    weights = np.zeros((len(pool), len(rows)))
    fits = {}
    for a, i in enumerate(pool):
        for b, j in enumerate(rows):
            order = fit_order(state.orders[j], cands[i], W, threshold, dominance)
            if order is not None:
                weights[a, b] = profits[i]
                fits[a, b] = order
    for a, b in max_weight_matching(weights):
        i, j = pool[a], rows[b]
        state.orders[j] = fits[a, b]
        state.status[i] = REJECTED
        state.status[i, j] = ASSIGNED
        state.times = state.times - instance.reductions[i]
    return state
