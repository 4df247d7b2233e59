"""Best-first branch-and-bound over binary variables."""
from __future__ import annotations

import heapq
import itertools
import math
import time

import numpy as np

from .program import MilpModel, SolveResult
from .simplex import DEFAULT_MAX_PIVOTS, solve_dense

INT_TOL = 1e-6


def _most_fractional(x, integral):
    best, best_gap = None, 1.0
    for j in integral:
        frac = x[j] - math.floor(x[j])
        gap = abs(frac - 0.5)
        if INT_TOL < frac < 1 - INT_TOL and gap < best_gap - 1e-12:
            best, best_gap = j, gap
    return best


def _solve_native(model: MilpModel, node_limit, time_limit, pivot_rule):
    lp = model.base
    A, senses, b = lp.matrix()
    c = lp.cost()
    sign = -1.0 if lp.sense == "max" else 1.0
    cmin = sign * c
    lb0, ub0 = lp.bounds()
    integral = sorted(model.integral)
    start = time.perf_counter()
    counter = itertools.count()
    nodes = pivots = 0
    incumbent, inc_val = None, math.inf

    def node_lp(lb, ub):
        nonlocal nodes, pivots
        res = solve_dense(cmin, A, senses, b, lb, ub, pivot_rule, DEFAULT_MAX_PIVOTS)
        nodes += 1
        pivots += res.pivots
        return res

    def improves(val):
        return incumbent is None or val < inc_val - 1e-9 * max(1.0, abs(inc_val))

    heap = []

    def consider(res, lb, ub):
        nonlocal incumbent, inc_val
        if res.status != "optimal" or not improves(res.objective):
            return
        j = _most_fractional(res.values, integral)
        if j is None:
            x = res.values.copy()
            x[integral] = np.round(x[integral])
            incumbent, inc_val = x, res.objective
        else:
            heapq.heappush(heap, (res.objective, next(counter), lb, ub, j, res.values[j]))

    root = node_lp(lb0, ub0)
    if root.status in ("unbounded", "iteration-limit", "infeasible"):
        return SolveResult(root.status, nodes=nodes, pivots=pivots)
    consider(root, lb0, ub0)
    status = "optimal"
    while heap:
        if not improves(heap[0][0]):
            break
        if nodes >= node_limit:
            status = "node-limit"
            break
        if time_limit is not None and time.perf_counter() - start > time_limit:
            status = "time-limit"
            break
        _, _, lb, ub, j, _ = heapq.heappop(heap)
        for value in (0.0, 1.0):
            clb, cub = lb.copy(), ub.copy()
            clb[j] = cub[j] = value
            res = node_lp(clb, cub)
            if res.status == "iteration-limit":
                status = "iteration-limit"
            consider(res, clb, cub)
    if incumbent is None:
        return SolveResult("infeasible" if status == "optimal" else status, nodes=nodes, pivots=pivots)
    return SolveResult(status, incumbent, float(c @ incumbent), nodes=nodes, pivots=pivots)


def _solve_highs(model: MilpModel, node_limit, time_limit):
    from scipy.optimize import Bounds, LinearConstraint, milp

    lp = model.base
    c = lp.cost()
    sign = -1.0 if lp.sense == "max" else 1.0
    lb, ub = lp.bounds()
    integrality = np.zeros(lp.n)
    integrality[sorted(model.integral)] = 1
    constraints = ()
    if lp.constraints:
        lo = np.array([-np.inf if k.sense == "<=" else k.rhs for k in lp.constraints])
        hi = np.array([np.inf if k.sense == ">=" else k.rhs for k in lp.constraints])
        constraints = LinearConstraint(lp.sparse_matrix(), lo, hi)
    options = {"mip_rel_gap": 0.0, "node_limit": int(node_limit)}
    if time_limit is not None:
        options["time_limit"] = float(time_limit)
    res = milp(sign * c, constraints=constraints, integrality=integrality, bounds=Bounds(lb, ub), options=options)
    nodes = int(getattr(res, "mip_node_count", 0) or 0)
    if res.status == 0:
        status = "optimal"
    elif res.status == 1:
        status = "time-limit" if "time" in res.message.lower() else "node-limit"
    elif res.status == 2:
        status = "infeasible"
    elif res.status == 3:
        status = "unbounded"
    else:
        status = "iteration-limit"
    if res.x is None:
        return SolveResult(status, nodes=nodes)
    x = np.asarray(res.x, dtype=float).copy()
    idx = sorted(model.integral)
    x[idx] = np.round(x[idx])
    return SolveResult(status, x, float(c @ x), nodes=nodes)


def solve_milp(model: MilpModel, node_limit: int = 100_000, time_limit: float | None = None,
               pivot_rule: str = "bland", backend: str = "native") -> SolveResult:
    """Branch-and-bound; non-optimal statuses carry the best incumbent if any."""
    if backend == "highs":
        return _solve_highs(model, node_limit, time_limit)
    if backend != "native":
        raise ValueError(f"unknown backend {backend!r}")
    return _solve_native(model, node_limit, time_limit, pivot_rule)
