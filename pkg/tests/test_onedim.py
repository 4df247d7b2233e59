import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stencilplan.cli.generate import generate, preset
from stencilplan.model import CharacterCandidate, Instance, StencilSpec, check_legal, row_length, writing_time
from stencilplan.onedim import (
    OneDimConfig, OrderSolution, fast_ilp_convergence, greedy_symmetric_order, max_weight_matching, post_insertion,
    post_swap, refine_row, solve_1d, successive_rounding,
)
from stencilplan.onedim.ordering import best_insertion, fit_order, insertion_family, symmetric_length
from stencilplan.onedim.rounding import initial_state, rows_within_estimate
from stencilplan.lp import optimum_by_subsets
from oracles import best_matching, insertion_family_min, min_row_len


def chars_from(spec):
    return [CharacterCandidate(f"c{k:02d}", w, 10, sl, sr) for k, (w, sl, sr) in enumerate(spec)]


row_chars = st.lists(
    st.tuples(st.integers(4, 30), st.integers(0, 12), st.integers(0, 12)).map(
        lambda t: (t[0] + t[1] + t[2], t[1], t[2])),
    min_size=1, max_size=9,
)


def as_tuples(chars):
    return [(c.w, c.sl, c.sr) for c in chars]


@settings(max_examples=60, deadline=None)
@given(row_chars)
def test_refine_unbounded_matches_family_oracle(spec):
    chars = chars_from(spec)
    # the family is grown in decreasing blank order; feed the oracle the same order
    ordered = sorted(chars, key=lambda c: (-c.s, c.id))
    sol = refine_row(chars, threshold=math.inf)
    assert sol.w == insertion_family_min(as_tuples(ordered))
    assert row_length(sol.order) == sol.w
    assert sorted(c.id for c in sol.order) == sorted(c.id for c in chars)


@settings(max_examples=40, deadline=None)
@given(row_chars)
def test_family_never_beats_all_permutations(spec):
    chars = chars_from(spec[:7])
    assert refine_row(chars, threshold=math.inf).w >= min_row_len(as_tuples(chars))


@pytest.mark.parametrize("dominance", ["corrected", "literal"])
@settings(max_examples=30, deadline=None)
@given(row_chars)
def test_pruned_refinement_is_a_real_order(dominance, spec):
    chars = chars_from(spec)
    sol = refine_row(chars, threshold=4, dominance=dominance)
    assert row_length(sol.order) == sol.w
    assert sol.w >= refine_row(chars, threshold=math.inf).w


def test_refine_rejects_unknown_rule():
    with pytest.raises(ValueError):
        refine_row(chars_from([(10, 1, 1)]), dominance="strict")


def test_insertion_family_size():
    chars = chars_from([(10, 1, 2), (12, 3, 3), (9, 0, 4), (11, 2, 2)])
    assert len(insertion_family(chars)) == 2 ** 3


def test_symmetric_greedy_meets_closed_form():
    chars = chars_from([(20, s, s) for s in (5, 1, 4, 3, 0, 2)])
    sol = greedy_symmetric_order(chars)
    assert sol.w == symmetric_length(chars) == row_length(sol.order)


@settings(max_examples=40, deadline=None)
@given(row_chars, st.tuples(st.integers(4, 30), st.integers(0, 12), st.integers(0, 12)))
def test_best_insertion_tries_every_slot(spec, extra):
    base = OrderSolution.of(chars_from(spec))
    w, sl, sr = extra
    c = CharacterCandidate("zz", w + sl + sr, 10, sl, sr)
    got = best_insertion(base, c)
    brute = min(row_length(base.order[:k] + (c,) + base.order[k:]) for k in range(len(base.order) + 1))
    assert got.w == brute == row_length(got.order)


def test_fit_order_respects_width():
    base = OrderSolution.of(chars_from([(20, 2, 2), (20, 2, 2)]))
    c = CharacterCandidate("zz", 20, 10, 2, 2)
    assert fit_order(base, c, 56) is not None
    assert fit_order(base, c, 55) is None


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_matching_matches_exhaustive(n, m, data):
    rows = min(n, m)
    weights = np.array(data.draw(st.lists(st.lists(st.integers(0, 20), min_size=m, max_size=m),
                                          min_size=rows, max_size=rows)), dtype=float)
    pairs = max_weight_matching(weights)
    assert len({a for a, _ in pairs}) == len(pairs) == len({b for _, b in pairs})
    assert sum(weights[a, b] for a, b in pairs) == best_matching(weights.tolist())


def test_matching_empty():
    assert max_weight_matching(np.zeros((0, 3))) == []


def small_rows(seed, n=30, rows=3, width=120_000):
    cfg = preset("1D", seed, n=n, rows=rows, width=width / 1000, height=rows * 40.0, regions=3)
    return generate(cfg)


@pytest.mark.parametrize("seed", range(4))
def test_rounding_states_stay_legal(seed):
    inst = small_rows(seed)
    state = successive_rounding(inst)
    assert state.unsolved_history[0] >= state.unsolved_history[-1]
    assert all(o.w <= inst.stencil.width for o in state.orders)
    assert rows_within_estimate(inst, state)
    state = fast_ilp_convergence(inst, state)
    state = post_swap(inst, state)
    state = post_insertion(inst, state)
    assert rows_within_estimate(inst, state)
    selected = [c.id for o in state.orders for c in o.order]
    assert len(selected) == len(set(selected))
    assert writing_time(inst, selected).region_times == tuple(int(t) for t in state.times)


@pytest.mark.parametrize("seed", range(4))
def test_post_stages_never_hurt(seed):
    inst = small_rows(seed)
    state = fast_ilp_convergence(inst, successive_rounding(inst))
    swapped = post_swap(inst, state)
    assert swapped.times.max() <= state.times.max()
    inserted = post_insertion(inst, swapped)
    assert inserted.times.max() <= swapped.times.max()


@pytest.mark.parametrize("seed", range(3))
def test_pipeline_legal_and_consistent(seed):
    inst = small_rows(seed, n=60)
    placement, report = solve_1d(inst)
    assert check_legal(inst, placement)
    assert writing_time(inst, placement.entries).total == report.total
    assert set(report.stages) >= {"rounding", "convergence", "refinement", "swap", "insertion"}
    assert report.stages["insertion"] <= report.stages["rounding"]


def test_pipeline_empty_and_oversize():
    stencil = StencilSpec(100, 40, 1, 40)
    placement, report = solve_1d(Instance((), stencil))
    assert len(placement) == 0 and report.total == 0
    big = CharacterCandidate("big", 200, 40, 0, 0, 0, 0, 5, (3,))
    placement, report = solve_1d(Instance((big,), stencil))
    assert len(placement) == 0 and report.total == 15


@pytest.mark.parametrize("seed", range(5))
def test_pipeline_matches_exact_on_tiny_rows(seed):
    inst = generate(preset("1T", seed, n=7))
    _, report = solve_1d(inst)
    assert report.total == optimum_by_subsets(inst).total


def test_rounding_resolves_most_pairs_before_the_final_program():
    inst = generate(preset("1M", 0, n=300, rows=8, height=320.0, width=400.0))
    state = successive_rounding(inst)
    total = len(inst) * inst.stencil.rows
    state = fast_ilp_convergence(inst, state)
    assert state.binaries_history[-1] < 0.5 * total


def test_initial_state_rejects_oversize():
    inst = Instance((CharacterCandidate("big", 200, 40),), StencilSpec(100, 40, 1, 40))
    assert (initial_state(inst).status == 2).all()


def test_config_defaults():
    cfg = OneDimConfig()
    assert cfg.dominance == "corrected" and cfg.insertion_rounds >= 1


@pytest.mark.parametrize("seed", range(3))
def test_unsolved_count_strictly_decreases(seed):
    history = successive_rounding(small_rows(seed, n=80)).unsolved_history
    assert all(a > b for a, b in zip(history, history[1:]))


def test_matching_respects_row_restrictions():
    # a and b fit either row, c only the second; profits 5, 3, 4
    weights = np.array([[5.0, 5.0], [3.0, 3.0], [0.0, 4.0]])
    pairs = max_weight_matching(weights)
    assert sorted(pairs) == [(0, 0), (2, 1)]


def test_pipeline_is_deterministic():
    inst = small_rows(7, n=60)
    a, b = solve_1d(inst), solve_1d(inst)
    assert a[0].entries == b[0].entries and a[1].total == b[1].total
