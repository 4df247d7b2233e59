"""Dense two-phase tableau simplex.

Variables are shifted to their lower bounds, fixed variables are folded into
the right-hand side and finite upper bounds become explicit rows. Rows are
scaled to unit max coefficient before pivoting.
"""
from __future__ import annotations

import math

import numpy as np

from .program import LinearProgram, SolveResult

DEFAULT_MAX_PIVOTS = 10**6


class _PivotLimit(Exception):
    pass


def _choose_entering(z, cols, rule, tol):
    d = z[cols]
    if rule == "bland":
        neg = np.flatnonzero(d < -tol)
        return None if len(neg) == 0 else int(cols[neg[0]])
    k = int(np.argmin(d))
    return None if d[k] >= -tol else int(cols[k])


def _choose_leaving(T, basis, col, tol):
    column = T[:, col]
    rows = np.flatnonzero(column > tol)
    if len(rows) == 0:
        return None
    ratios = T[rows, -1] / column[rows]
    best = ratios.min()
    ties = rows[ratios <= best + 1e-12 * max(1.0, abs(best))]
    # smallest basic index among ties keeps Bland's rule cycle-free
    return int(ties[np.argmin(basis[ties])])


def _pivot(T, z, basis, r, col):
    T[r] /= T[r, col]
    factors = T[:, col].copy()
    factors[r] = 0.0
    T -= np.outer(factors, T[r])
    z -= z[col] * T[r]
    basis[r] = col


def _run(T, z, basis, cols, rule, tol, budget):
    """Pivot until optimal. Returns ('optimal'|'unbounded', pivots used)."""
    pivots = 0
    while True:
        col = _choose_entering(z, cols, rule, tol)
        if col is None:
            return "optimal", pivots
        r = _choose_leaving(T, basis, col, 1e-9)
        if r is None:
            return "unbounded", pivots
        if pivots >= budget:
            raise _PivotLimit(pivots)
        _pivot(T, z, basis, r, col)
        pivots += 1


def solve_dense(c, A, senses, b, lb, ub, pivot_rule="bland", max_pivots=DEFAULT_MAX_PIVOTS) -> SolveResult:
    """Minimize c.x subject to A x (senses) b and lb <= x <= ub."""
    c = np.asarray(c, dtype=float)
    A = np.asarray(A, dtype=float).reshape(len(senses), len(c))
    b = np.asarray(b, dtype=float)
    lb = np.asarray(lb, dtype=float)
    ub = np.asarray(ub, dtype=float)
    n = len(c)
    if np.any(ub < lb - 1e-12):
        return SolveResult("infeasible", nodes=0, pivots=0)
    free = np.flatnonzero(ub - lb > 1e-12)
    rhs = b - A @ lb
    rows = [A[:, free]]
    rel = list(senses)
    rhs_parts = [rhs]
    capped = [k for k, j in enumerate(free) if math.isfinite(ub[j])]
    if capped:
        U = np.zeros((len(capped), len(free)))
        U[np.arange(len(capped)), capped] = 1.0
        rows.append(U)
        rel += ["<="] * len(capped)
        rhs_parts.append(ub[free[capped]] - lb[free[capped]])
    M = np.vstack(rows) if rows else np.zeros((0, len(free)))
    rhs = np.concatenate(rhs_parts)
    rel = np.array(rel, dtype=object)

    # rows with no free variable are pure feasibility checks
    empty = ~np.any(np.abs(M) > 0, axis=1)
    for r in np.flatnonzero(empty):
        v = rhs[r]
        tol = 1e-9 * max(1.0, abs(b).max() if len(b) else 1.0)
        if (rel[r] == "<=" and v < -tol) or (rel[r] == ">=" and v > tol) or (rel[r] == "=" and abs(v) > tol):
            return SolveResult("infeasible")
    keep = ~empty
    M, rhs, rel = M[keep], rhs[keep], rel[keep]

    neg = rhs < 0
    M[neg] *= -1
    rhs[neg] *= -1
    flip = {"<=": ">=", ">=": "<=", "=": "="}
    rel = np.array([flip[s] if f else s for s, f in zip(rel, neg)], dtype=object)
    scale = np.abs(M).max(axis=1) if len(M) else np.zeros(0)
    scale[scale == 0] = 1.0
    M /= scale[:, None]
    rhs /= scale

    m, k = M.shape
    n_le = int(np.sum(rel == "<="))
    n_ge = int(np.sum(rel == ">="))
    n_art = m - n_le
    N = k + n_le + n_ge + n_art
    T = np.zeros((m, N + 1))
    T[:, :k] = M
    T[:, -1] = rhs
    basis = np.zeros(m, dtype=np.int64)
    s_col, g_col, a_col = k, k + n_le, k + n_le + n_ge
    art_start = a_col
    for r in range(m):
        if rel[r] == "<=":
            T[r, s_col] = 1.0
            basis[r] = s_col
            s_col += 1
        else:
            if rel[r] == ">=":
                T[r, g_col] = -1.0
                g_col += 1
            T[r, a_col] = 1.0
            basis[r] = a_col
            a_col += 1

    pivots = 0
    feas_tol = 1e-9 * max(1.0, float(rhs.sum()))
    try:
        if n_art:
            z = np.zeros(N + 1)
            z[art_start:N] = 1.0
            for r in np.flatnonzero(basis >= art_start):
                z -= T[r]
            _, used = _run(T, z, basis, np.arange(art_start), pivot_rule, 1e-11, max_pivots)
            pivots += used
            if -z[-1] > feas_tol:
                return SolveResult("infeasible", pivots=pivots)
            # drive zero-valued artificials out, dropping redundant rows
            drop = []
            for r in np.flatnonzero(basis >= art_start):
                cand = np.flatnonzero(np.abs(T[r, :art_start]) > 1e-9)
                if len(cand):
                    _pivot(T, z, basis, r, int(cand[0]))
                    pivots += 1
                else:
                    drop.append(r)
            if drop:
                mask = np.ones(m, dtype=bool)
                mask[drop] = False
                T, basis = T[mask], basis[mask]
            T = np.hstack([T[:, :art_start], T[:, -1:]])
            N = art_start
        cost = np.zeros(N + 1)
        cost[:k] = c[free]
        z = cost.copy()
        for r, j in enumerate(basis):
            if cost[j]:
                z -= cost[j] * T[r]
        dtol = 1e-9 * max(1.0, float(np.abs(c).max()) if n else 1.0)
        status, used = _run(T, z, basis, np.arange(N), pivot_rule, dtol, max_pivots - pivots)
        pivots += used
    except _PivotLimit as exc:
        return SolveResult("iteration-limit", pivots=pivots + exc.args[0])
    if status == "unbounded":
        return SolveResult("unbounded", pivots=pivots)
    xs = np.zeros(N)
    xs[basis] = T[:, -1]
    x = lb.copy()
    x[free] += np.maximum(xs[:k], 0.0)
    x = np.minimum(x, ub)
    return SolveResult("optimal", x, float(c @ x), pivots=pivots)


def _solve_highs(lp: LinearProgram, lb, ub) -> SolveResult:
    from scipy.optimize import linprog

    c = lp.cost()
    sign = -1.0 if lp.sense == "max" else 1.0
    A = lp.sparse_matrix()
    senses = np.array([con.sense for con in lp.constraints])
    rhs = np.array([con.rhs for con in lp.constraints], dtype=float)
    le, ge, eq = senses == "<=", senses == ">=", senses == "="
    from scipy.sparse import vstack

    A_ub = vstack([A[np.flatnonzero(le)], -A[np.flatnonzero(ge)]]) if (le.any() or ge.any()) else None
    b_ub = np.concatenate([rhs[le], -rhs[ge]]) if A_ub is not None else None
    A_eq = A[np.flatnonzero(eq)] if eq.any() else None
    b_eq = rhs[eq] if eq.any() else None
    bounds = list(zip(lb, [None if math.isinf(u) else u for u in ub]))
    res = linprog(sign * c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq, bounds=bounds, method="highs")
    status = {0: "optimal", 1: "iteration-limit", 2: "infeasible", 3: "unbounded"}.get(res.status, "iteration-limit")
    if status != "optimal":
        return SolveResult(status, pivots=int(getattr(res, "nit", 0)))
    return SolveResult("optimal", np.asarray(res.x), float(c @ res.x), pivots=int(res.nit))


def solve_lp(lp: LinearProgram, pivot_rule: str = "bland", max_pivots: int = DEFAULT_MAX_PIVOTS,
             backend: str = "native", lb=None, ub=None) -> SolveResult:
    """Solve the continuous relaxation of `lp` (bounds optionally overridden)."""
    if pivot_rule not in ("bland", "dantzig"):
        raise ValueError(f"unknown pivot rule {pivot_rule!r}")
    if lb is None:
        lb, ub = lp.bounds()
    if backend == "highs":
        return _solve_highs(lp, lb, ub)
    if backend != "native":
        raise ValueError(f"unknown backend {backend!r}")
    A, senses, b = lp.matrix()
    c = lp.cost()
    sign = -1.0 if lp.sense == "max" else 1.0
    res = solve_dense(sign * c, A, senses, b, lb, ub, pivot_rule, max_pivots)
    if res.status != "optimal":
        return res
    return SolveResult("optimal", res.values, float(c @ res.values), pivots=res.pivots)
