"""Exact optima of the stencil models.

`solve_exact` hands the full model to branch-and-bound. `optimum_by_subsets`
reaches the same optimum by walking candidate subsets in increasing writing
time and asking the exact model only whether a fixed subset can be packed;
it is far faster at desk scale because infeasible subsets are pruned by a
reduced-footprint bound and by containment of known infeasible subsets.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from ..model import Instance, InputError, Placement, check_legal
from .branch import solve_milp
from .formulations import build_1d_exact, build_2d_exact, placement_from

MAX_SUBSET_CANDIDATES = 16


@dataclass
class ExactResult:
    status: str
    total: int | None
    placement: Placement | None
    seconds: float
    checked: int = 0  # exact feasibility solves (subset method) or B&B nodes


def build_exact(instance: Instance, force=None):
    if instance.mode == "1d":
        return build_1d_exact(instance, force)
    return build_2d_exact(instance, force)


def solve_exact(instance: Instance, time_limit: float | None = None, node_limit: int = 10**7,
                backend: str = "highs") -> ExactResult:
    start = time.perf_counter()
    if len(instance) == 0:
        return ExactResult("optimal", 0, Placement({}), 0.0)
    model = build_exact(instance)
    res = solve_milp(model, node_limit=node_limit, time_limit=time_limit, backend=backend)
    seconds = time.perf_counter() - start
    if res.values is None:
        return ExactResult(res.status, None, None, seconds, res.nodes)
    placement = placement_from(model, instance, res.values)
    sel = [instance.index[k] for k in placement.entries]
    total = int(instance.vsb_times.max() if not sel else (instance.vsb_times - instance.reductions[sel].sum(axis=0)).max())
    return ExactResult(res.status, total, placement, seconds, res.nodes)


def reduced_footprint_ok(instance: Instance, idx) -> bool:
    """Necessary packing condition from half-blank-shrunk footprints.

    Shrinking every character by half of each blank leaves pieces that can
    never overlap in a legal placement, so their total length (1D, summed
    over rows) or area (2D) must fit the stencil.
    """
    st = instance.stencil
    cands = [instance.candidates[i] for i in idx]
    if instance.mode == "1d":
        if any(c.w > st.width or c.h > st.row_height for c in cands):
            return False
        twice = sum(2 * c.w - c.sl - c.sr for c in cands)
        return twice <= 2 * st.rows * st.width
    if any(c.w > st.width or c.h > st.height for c in cands):
        return False
    quad = sum((2 * c.w - c.sl - c.sr) * (2 * c.h - c.st - c.sb) for c in cands)
    return quad <= 4 * st.width * st.height


def subset_feasible(instance: Instance, idx, time_limit=None, backend="highs"):
    """Solve the exact model with the subset forced on; returns (verdict, placement)."""
    sub = instance.with_candidates(instance.candidates[i] for i in idx)
    model = build_exact(sub, force=range(len(idx)))
    res = solve_milp(model, time_limit=time_limit, backend=backend)
    if res.status == "infeasible":
        return False, None
    if res.values is None or res.status != "optimal":
        return None, None
    return True, placement_from(model, sub, res.values)


def optimum_by_subsets(instance: Instance, time_limit: float | None = None,
                       backend: str = "highs") -> ExactResult:
    n = len(instance)
    if n > MAX_SUBSET_CANDIDATES:
        raise InputError(f"subset enumeration is capped at {MAX_SUBSET_CANDIDATES} candidates")
    start = time.perf_counter()
    if n == 0:
        return ExactResult("optimal", 0, Placement({}), 0.0)
    R = instance.reductions
    masks = np.arange(1 << n, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(n)) & 1).astype(np.int64)
    totals = (instance.vsb_times[None, :] - bits @ R).max(axis=1)
    sizes = bits.sum(axis=1)
    order = np.lexsort((masks, sizes, totals))
    infeasible: list[int] = []
    checked = 0
    for m in order:
        m = int(m)
        if m == 0:
            return ExactResult("optimal", int(totals[0]), Placement({}), time.perf_counter() - start, checked)
        if any(m & bad == bad for bad in infeasible):
            continue
        idx = [i for i in range(n) if m >> i & 1]
        if not reduced_footprint_ok(instance, idx):
            infeasible.append(m)
            continue
        remaining = None
        if time_limit is not None:
            remaining = time_limit - (time.perf_counter() - start)
            if remaining <= 0:
                return ExactResult("time-limit", None, None, time.perf_counter() - start, checked)
        verdict, placement = subset_feasible(instance, idx, remaining, backend)
        checked += 1
        if verdict is None:
            return ExactResult("time-limit", None, None, time.perf_counter() - start, checked)
        if verdict:
            if not check_legal(instance, placement):
                raise RuntimeError("exact model produced an illegal placement")
            return ExactResult("optimal", int(totals[m]), placement, time.perf_counter() - start, checked)
        infeasible.append(m)
    raise AssertionError("the empty selection is always feasible")
