"""Translate stencil-planning problems into generic MILP models.

Every builder records in `model.meta` the variable indices needed to decode a
solution back into a selection or a placement.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from ..model import Instance, InputError, Placement
from .program import LinearProgram, MilpModel


def _require(instance: Instance, mode: str):
    if instance.mode != mode:
        raise InputError(f"expected a {mode} instance, got {instance.mode}")


def _time_rows(lp: LinearProgram, instance: Instance, T: int, sel_vars: Sequence[Sequence[int]]):
    """T >= T_c^VSB - sum_i R_ic * (selection of i), one row per region."""
    R = instance.reductions
    for c in range(instance.regions):
        coeffs = {T: 1.0}
        for i, group in enumerate(sel_vars):
            if R[i, c]:
                for v in group:
                    coeffs[v] = float(R[i, c])
        lp.add_constraint(coeffs, ">=", float(instance.vsb_times[c]), name=f"time_{c}")


def build_1d_exact(instance: Instance, force: Sequence[int] | None = None) -> MilpModel:
    """Exact row model: positions, row assignment and pairwise order bits.

    `force` lists candidate indices that must be selected (used by the subset
    decomposition).
    """
    _require(instance, "1d")
    st = instance.stencil
    W, m = st.width, st.rows
    cands = instance.candidates
    n = len(cands)
    lp = LinearProgram()
    T = lp.add_var("T", 0.0)
    x = [lp.add_var(f"x_{i}", 0.0, float(max(0, W - c.w))) for i, c in enumerate(cands)]
    a = []
    for i, c in enumerate(cands):
        fits = c.w <= W and c.h <= st.row_height
        a.append([lp.add_var(f"a_{i}_{k}", 0.0, 1.0 if fits else 0.0) for k in range(m)])
    p = {}
    for i in range(n):
        for j in range(i + 1, n):
            p[i, j] = lp.add_var(f"p_{i}_{j}", 0.0, 1.0)
    lp.objective = {T: 1.0}
    _time_rows(lp, instance, T, a)
    for i in range(n):
        lp.add_constraint({v: 1.0 for v in a[i]}, "<=", 1.0, name=f"once_{i}")
    for i in force or ():
        lp.add_constraint({v: 1.0 for v in a[i]}, ">=", 1.0, name=f"force_{i}")
    for (i, j), pv in p.items():
        ci, cj = cands[i], cands[j]
        w_ij = ci.w - min(ci.sr, cj.sl)
        w_ji = cj.w - min(cj.sr, ci.sl)
        for k in range(m):
            # p_ij = 0: i left of j; p_ij = 1: j left of i
            lp.add_constraint({x[i]: 1.0, x[j]: -1.0, pv: -W, a[i][k]: W, a[j][k]: W}, "<=",
                              2.0 * W - w_ij, name=f"l_{i}_{j}_{k}")
            lp.add_constraint({x[j]: 1.0, x[i]: -1.0, pv: W, a[i][k]: W, a[j][k]: W}, "<=",
                              3.0 * W - w_ji, name=f"r_{i}_{j}_{k}")
    integral = [v for group in a for v in group] + list(p.values())
    return MilpModel(lp, integral, meta={"kind": "1d-exact", "T": T, "x": x, "a": a, "p": p})


def build_2d_exact(instance: Instance, force: Sequence[int] | None = None) -> MilpModel:
    """Exact free-placement model with two relative-position bits per pair."""
    _require(instance, "2d")
    W, H = instance.stencil.width, instance.stencil.height
    cands = instance.candidates
    n = len(cands)
    lp = LinearProgram()
    T = lp.add_var("T", 0.0)
    x = [lp.add_var(f"x_{i}", 0.0, float(max(0, W - c.w))) for i, c in enumerate(cands)]
    y = [lp.add_var(f"y_{i}", 0.0, float(max(0, H - c.h))) for i, c in enumerate(cands)]
    a = [lp.add_var(f"a_{i}", 0.0, 1.0 if (c.w <= W and c.h <= H) else 0.0) for i, c in enumerate(cands)]
    lp.objective = {T: 1.0}
    _time_rows(lp, instance, T, [[v] for v in a])
    for i in force or ():
        lp.add_constraint({a[i]: 1.0}, ">=", 1.0, name=f"force_{i}")
    pq = {}
    for i in range(n):
        for j in range(i + 1, n):
            p = lp.add_var(f"p_{i}_{j}", 0.0, 1.0)
            q = lp.add_var(f"q_{i}_{j}", 0.0, 1.0)
            pq[i, j] = (p, q)
            ci, cj = cands[i], cands[j]
            w_ij = ci.w - min(ci.sr, cj.sl)
            w_ji = cj.w - min(cj.sr, ci.sl)
            h_ij = ci.h - min(ci.st, cj.sb)
            h_ji = cj.h - min(cj.st, ci.sb)
            # (p,q) = (0,0): i left of j; (0,1): i right of j;
            # (1,0): i below j; (1,1): i above j
            lp.add_constraint({x[i]: 1.0, x[j]: -1.0, p: -W, q: -W, a[i]: W, a[j]: W}, "<=",
                              2.0 * W - w_ij, name=f"left_{i}_{j}")
            lp.add_constraint({x[i]: 1.0, x[j]: -1.0, p: W, q: -W, a[i]: -W, a[j]: -W}, ">=",
                              w_ji - 3.0 * W, name=f"right_{i}_{j}")
            lp.add_constraint({y[i]: 1.0, y[j]: -1.0, p: H, q: -H, a[i]: H, a[j]: H}, "<=",
                              3.0 * H - h_ij, name=f"below_{i}_{j}")
            lp.add_constraint({y[i]: 1.0, y[j]: -1.0, p: -H, q: -H, a[i]: -H, a[j]: -H}, ">=",
                              h_ji - 4.0 * H, name=f"above_{i}_{j}")
    integral = list(a) + [v for pair in pq.values() for v in pair]
    return MilpModel(lp, integral, meta={"kind": "2d-exact", "T": T, "x": x, "y": y, "a": a, "pq": pq})


def _row_model(instance: Instance, profits, rhs_of, kind: str, chars=None, allowed=None,
               used=None, blank_floor=None, with_blank_vars=True) -> MilpModel:
    _require(instance, "1d")
    st = instance.stencil
    W, m = st.width, st.rows
    cands = instance.candidates
    chars = range(len(cands)) if chars is None else chars
    profits = np.asarray(profits, dtype=float)
    used = np.zeros(m) if used is None else np.asarray(used, dtype=float)
    lp = LinearProgram(sense="max")
    a = {}
    for i in chars:
        c = cands[i]
        fits = c.w <= W and c.h <= st.row_height
        for j in range(m):
            if not fits or (allowed is not None and (i, j) not in allowed):
                continue
            a[i, j] = lp.add_var(f"a_{i}_{j}", 0.0, 1.0)
    B = {}
    if with_blank_vars:
        for j in range(m):
            lo = 0.0 if blank_floor is None else float(blank_floor[j])
            B[j] = lp.add_var(f"B_{j}", lo, float(W))
    lp.objective = {v: float(profits[i]) for (i, j), v in a.items() if profits[i]}
    by_row = {j: [] for j in range(m)}
    by_char = {}
    for (i, j), v in a.items():
        by_row[j].append((i, v))
        by_char.setdefault(i, []).append(v)
    for j in range(m):
        coeffs = {v: float(cands[i].w - cands[i].s) for i, v in by_row[j]}
        if with_blank_vars:
            coeffs[B[j]] = 1.0
        if coeffs:
            lp.add_constraint(coeffs, "<=", float(rhs_of(j) - used[j]), name=f"cap_{j}")
        if with_blank_vars:
            for i, v in by_row[j]:
                if cands[i].s:
                    lp.add_constraint({v: float(cands[i].s), B[j]: -1.0}, "<=", 0.0, name=f"blank_{i}_{j}")
    for i, vs in by_char.items():
        if len(vs) > 1:
            lp.add_constraint({v: 1.0 for v in vs}, "<=", 1.0, name=f"once_{i}")
    return MilpModel(lp, a.values(), meta={"kind": kind, "a": a, "B": B})


def build_1d_simplified(instance: Instance, profits, chars=None, allowed=None, used=None,
                        blank_floor=None) -> MilpModel:
    """Row-assignment model with a per-row largest-blank variable.

    Optional arguments restrict the model to a subset of characters and
    (char, row) pairs, and account for already committed row length `used`
    and committed largest blank `blank_floor`.
    """
    W = instance.stencil.width
    return _row_model(instance, profits, lambda j: W, "1d-simplified", chars, allowed, used, blank_floor)


def build_knapsack_relax(instance: Instance, profits) -> MilpModel:
    """Multiple-knapsack companion: every row loses the globally largest blank."""
    W = instance.stencil.width
    max_s = max((c.s for c in instance.candidates), default=0)
    return _row_model(instance, profits, lambda j: W - max_s, "knapsack", with_blank_vars=False)


def selection_from(model: MilpModel, instance: Instance, values) -> list[str]:
    meta = model.meta
    ids = [c.id for c in instance.candidates]
    if meta["kind"] == "1d-exact":
        return [ids[i] for i, group in enumerate(meta["a"]) if any(values[v] > 0.5 for v in group)]
    if meta["kind"] == "2d-exact":
        return [ids[i] for i, v in enumerate(meta["a"]) if values[v] > 0.5]
    chosen = sorted({i for (i, _), v in meta["a"].items() if values[v] > 0.5})
    return [ids[i] for i in chosen]


def placement_from(model: MilpModel, instance: Instance, values) -> Placement:
    """Decode an exact-model solution into integer coordinates."""
    meta = model.meta
    cands = instance.candidates
    entries = {}
    if meta["kind"] == "1d-exact":
        for i, group in enumerate(meta["a"]):
            for k, v in enumerate(group):
                if values[v] > 0.5:
                    entries[cands[i].id] = (k, int(round(values[meta["x"][i]])))
    elif meta["kind"] == "2d-exact":
        for i, v in enumerate(meta["a"]):
            if values[v] > 0.5:
                entries[cands[i].id] = (int(round(values[meta["x"][i]])), int(round(values[meta["y"][i]])))
    else:
        raise ValueError("placement decoding needs an exact model")
    return Placement(entries)


def row_assignment_from(model: MilpModel, values) -> dict[int, int]:
    """char index -> row for a row-assignment model."""
    return {i: j for (i, j), v in model.meta["a"].items() if values[v] > 0.5}
