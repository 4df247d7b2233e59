import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stencilplan.lp import (
    LinearProgram, MilpModel, build_1d_exact, build_2d_exact, optimum_by_subsets, selection_from, solve_exact,
    solve_lp, solve_milp,
)
from stencilplan.model import CharacterCandidate, Instance, StencilSpec, check_legal, writing_time
from oracles import ilp_by_enumeration, lp_by_vertices, one_row_optimum


def build(c, A, b, ub):
    lp = LinearProgram(sense="max")
    xs = [lp.add_var(f"x{j}", 0.0, float(u)) for j, u in enumerate(ub)]
    lp.objective = {x: float(cj) for x, cj in zip(xs, c)}
    for row, rhs in zip(A, b):
        lp.add_constraint({x: float(a) for x, a in zip(xs, row)}, "<=", float(rhs))
    return lp


small_lp = st.integers(2, 4).flatmap(lambda n: st.tuples(
    st.lists(st.integers(-5, 10), min_size=n, max_size=n),
    st.lists(st.lists(st.integers(-3, 8), min_size=n, max_size=n), min_size=1, max_size=3),
    st.lists(st.integers(0, 20), min_size=3, max_size=3),
    st.lists(st.integers(1, 6), min_size=n, max_size=n),
))


@pytest.mark.parametrize("backend", ["native", "highs"])
@pytest.mark.parametrize("rule", ["bland", "dantzig"])
@settings(max_examples=40, deadline=None)
@given(small_lp)
def test_lp_matches_rational_vertices(backend, rule, data):
    c, A, b, ub = data
    b = b[:len(A)]
    ref = lp_by_vertices(c, A, b, ub)
    res = solve_lp(build(c, A, b, ub), pivot_rule=rule, backend=backend)
    assert ref is not None  # x = 0 is always feasible since b >= 0
    assert res.status == "optimal"
    assert res.objective == pytest.approx(float(ref[0]), rel=1e-6, abs=1e-6)


def test_lp_statuses():
    lp = LinearProgram(sense="max")
    x = lp.add_var("x")
    lp.objective = {x: 1.0}
    assert solve_lp(lp).status == "unbounded"
    lp.add_constraint({x: 1.0}, "<=", 1.0)
    lp.add_constraint({x: 1.0}, ">=", 2.0)
    assert solve_lp(lp).status == "infeasible"
    assert solve_lp(lp, backend="highs").status == "infeasible"


def test_lp_equality_and_ge_rows():
    # min x + 2y, x + y = 3, x - y >= -1, x <= 1.5
    lp = LinearProgram(sense="min")
    x, y = lp.add_var("x", 0, 1.5), lp.add_var("y")
    lp.objective = {x: 1.0, y: 2.0}
    lp.add_constraint({x: 1.0, y: 1.0}, "=", 3.0)
    lp.add_constraint({x: 1.0, y: -1.0}, ">=", -1.0)
    res = solve_lp(lp)
    assert res.objective == pytest.approx(4.5)
    assert res.values[x] == pytest.approx(1.5)


def test_lp_bad_inputs():
    lp = LinearProgram()
    with pytest.raises(ValueError):
        lp.add_var("x", 2.0, 1.0)
    with pytest.raises(ValueError):
        lp.add_constraint({5: 1.0}, "<=", 0.0)
    with pytest.raises(ValueError):
        solve_lp(lp, pivot_rule="steepest")


def test_pivot_cap_reports_iteration_limit():
    lp = build([3, 2, 4], [[1, 1, 2], [2, 0, 3]], [4, 5], [3, 3, 3])
    assert solve_lp(lp, max_pivots=1).status == "iteration-limit"


small_ilp = st.integers(2, 12).flatmap(lambda n: st.tuples(
    st.lists(st.integers(-4, 12), min_size=n, max_size=n),
    st.lists(st.lists(st.integers(0, 9), min_size=n, max_size=n), min_size=1, max_size=3),
    st.lists(st.integers(0, 25), min_size=3, max_size=3),
))


@settings(max_examples=40, deadline=None)
@given(small_ilp)
def test_milp_matches_enumeration(data):
    c, A, b = data
    b = b[:len(A)]
    lp = build(c, A, b, [1] * len(c))
    ref = ilp_by_enumeration(c, A, b)
    for backend in ("native", "highs"):
        res = solve_milp(MilpModel(lp, range(len(c))), backend=backend)
        assert res.status == "optimal"
        assert res.objective == pytest.approx(ref[0], abs=1e-6)


def test_milp_infeasible():
    lp = LinearProgram(sense="max")
    x = lp.add_var("x", 0, 1)
    lp.add_constraint({x: 2.0}, "=", 1.0)
    assert solve_milp(MilpModel(lp, [x])).status == "infeasible"


def test_milp_node_limit_keeps_incumbent_status():
    rng = np.random.default_rng(3)
    n = 14
    c = rng.integers(10, 40, n).tolist()
    w = rng.integers(10, 40, n).tolist()
    lp = build(c, [w], [sum(w) // 2 + 1], [1] * n)
    res = solve_milp(MilpModel(lp, range(n)), node_limit=3)
    assert res.status == "node-limit"


def test_dump_lists_binaries():
    lp = build([1, 2], [[1, 1]], [1], [1, 1])
    text = MilpModel(lp, [0, 1]).dump()
    assert text.startswith("Maximize") and "Binary" in text and "x0 x1" in text


def sym_row(widths_blanks, width, reps, vsb):
    cands = tuple(CharacterCandidate(f"c{k}", w, 10, sl, sr, 0, 0, vsb[k], (reps[k],))
                  for k, (w, sl, sr) in enumerate(widths_blanks))
    return Instance(cands, StencilSpec(width, 10, 1, 10))


@settings(max_examples=15, deadline=None)
@given(st.lists(st.tuples(st.integers(10, 30), st.integers(0, 5), st.integers(0, 5)), min_size=1, max_size=5),
       st.integers(20, 70), st.data())
def test_1d_exact_matches_permutation_oracle(chars, width, data):
    n = len(chars)
    reps = data.draw(st.lists(st.integers(0, 9), min_size=n, max_size=n))
    vsb = data.draw(st.lists(st.integers(2, 9), min_size=n, max_size=n))
    inst = sym_row(chars, width, reps, vsb)
    ref = one_row_optimum(chars, width, int(inst.vsb_times[0]), [int(r) for r in inst.reductions[:, 0]])
    res = optimum_by_subsets(inst)
    assert res.status == "optimal" and res.total == ref
    assert check_legal(inst, res.placement)
    assert writing_time(inst, res.placement.entries).total == ref
    mono = solve_exact(inst)
    assert mono.total == ref


def test_1d_exact_model_shape():
    inst = sym_row([(10, 1, 1), (12, 2, 0)], 30, [1, 1], [3, 3])
    model = build_1d_exact(inst)
    res = solve_milp(model, backend="highs")
    assert sorted(selection_from(model, inst, res.values)) == ["c0", "c1"]


def tiny_2d(seed, n, side=100):
    rng = np.random.default_rng(seed)
    cands = []
    for k in range(n):
        w, h = (int(v) for v in rng.integers(30, 60, 2))
        s = [int(v) for v in rng.integers(0, 8, 4)]
        cands.append(CharacterCandidate(f"c{k}", w, h, *s, int(rng.integers(5, 20)), (int(rng.integers(1, 50)),)))
    return Instance(tuple(cands), StencilSpec(side, side))


@pytest.mark.parametrize("seed", range(3))
def test_2d_subsets_agree_with_monolithic_model(seed):
    inst = tiny_2d(seed, 4)
    a = optimum_by_subsets(inst)
    b = solve_exact(inst)
    assert a.status == b.status == "optimal"
    assert a.total == b.total
    assert check_legal(inst, a.placement) and check_legal(inst, b.placement)


def test_2d_forced_selection():
    inst = tiny_2d(5, 3)
    model = build_2d_exact(inst, force=[0])
    res = solve_milp(model, backend="highs")
    assert "c0" in selection_from(model, inst, res.values)
