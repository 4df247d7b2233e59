"""Acceptance suite: one pass/fail line per criterion, shown in the terminal summary."""
import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from stencilplan.cli.baseline import greedy_baseline
from stencilplan.cli.generate import generate, preset
from stencilplan.cli.main import main
from stencilplan.lp import LinearProgram, MilpModel, optimum_by_subsets, solve_lp, solve_milp
from stencilplan.model import CharacterCandidate, check_legal, min_packing_length_symmetric, row_length
from stencilplan.onedim import max_weight_matching, refine_row, solve_1d
from stencilplan.reductions import (
    BssInstance, ThreeSatInstance, brute_force_subset_sum, bss_to_1dosp, optimal_symmetric_row, sat_to_bss,
)
from stencilplan.twodim import KdTree, SaConfig, TwoDimConfig, solve_2d
from oracles import (
    best_matching, box_scan, ilp_by_enumeration, insertion_family_min, lp_by_vertices, min_row_len_dp,
    sat_by_enumeration,
)


def report(number, ok, detail, seconds):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail}; {seconds:.1f}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_1_symmetric_packing_formula():
    start = time.perf_counter()
    rng = np.random.default_rng(1)
    mismatches = 0
    for _ in range(200):
        n = int(rng.integers(1, 9))
        M = int(rng.integers(10, 60))
        blanks = rng.integers(0, M // 2 + 1, n)
        chars = [CharacterCandidate(f"c{k}", M, 10, int(s), int(s)) for k, s in enumerate(blanks)]
        oracle = min_row_len_dp([(M, int(s), int(s)) for s in blanks])
        mismatches += min_packing_length_symmetric(chars) != oracle
    seconds = time.perf_counter() - start
    report(1, mismatches == 0 and seconds < 10, f"{200 - mismatches}/200 exact", seconds)


def test_criterion_2_subset_sum_row_example():
    start = time.perf_counter()
    numbers, s = (1100, 1200, 2000), 2300
    inst = bss_to_1dosp(BssInstance(numbers, s))
    res = optimum_by_subsets(inst)
    order = sorted(res.placement.entries, key=lambda cid: res.placement.entries[cid][1])
    length = row_length([inst.by_id(cid) for cid in order])
    ok = (res.total == sum(numbers) - s == 2000 and sorted(order) == ["c0", "c1", "c2"] and length == 4300
          and check_legal(inst, res.placement))
    report(2, ok, f"T={res.total} chars={sorted(order)} length={length}", time.perf_counter() - start)


def test_criterion_3_printed_encoding():
    start = time.perf_counter()
    printed = {
        "t1": 110001000, "f1": 110000100, "t2": 101000100, "f2": 101000000,
        "t3": 100100000, "f3": 100101000, "t4": 100010000, "f4": 100011100,
        "c11": 100001010, "c12": 100002010, "c13": 100003010,
        "c21": 100000101, "c22": 100000201, "c23": 100000301,
    }
    enc = sat_to_bss(ThreeSatInstance(4, ((1, -3, -4), (-1, 2, -4))))
    got = dict(zip(enc.labels, enc.bss.numbers))
    subset_sum = sum(got[k] for k in ("f1", "t2", "f3", "f4", "c12", "c21"))
    ok = enc.bss.target == 611114411 and got == printed and subset_sum == enc.bss.target
    report(3, ok, f"s={enc.bss.target} numbers_match={got == printed} subset_sum={subset_sum}",
           time.perf_counter() - start)


def random_3sat(rng):
    m = int(rng.integers(1, 7))
    n = int(rng.integers(3, min(10, 3 * m) + 1))
    slots = [int(v) for v in rng.permutation(n) + 1]
    slots += [int(v) for v in rng.integers(1, n + 1, 3 * m - n)]
    clauses = []
    pool = list(slots)
    for _ in range(m):
        clause = []
        for _ in range(3):
            pick = next((v for v in pool if v not in clause), None)
            if pick is None:
                pick = next(v for v in range(1, n + 1) if v not in clause)
            else:
                pool.remove(pick)
            clause.append(pick)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in clause))
    used = {abs(l) for c in clauses for l in c}
    # any variable lost to a collision goes into the first clause's last slot
    for v in sorted(set(range(1, n + 1)) - used):
        c = list(clauses[0])
        c[2] = v
        clauses[0] = tuple(c)
    return ThreeSatInstance(n, tuple(clauses))


def test_criterion_4_reduction_chain():
    start = time.perf_counter()
    rng = np.random.default_rng(4)
    agree, done, sat_count = 0, 0, 0
    while done < 100:
        try:
            sat = random_3sat(rng)
        except ValueError:
            continue
        done += 1
        truth = sat_by_enumeration(sat.n, sat.clauses)
        enc = sat_to_bss(sat)
        subset = brute_force_subset_sum(enc.bss) is not None
        T, _ = optimal_symmetric_row(bss_to_1dosp(enc.bss))
        row = T == sum(enc.bss.numbers) - enc.bss.target
        agree += truth == subset == row
        sat_count += truth
    seconds = time.perf_counter() - start
    report(4, agree == 100 and seconds < 120, f"{agree}/100 agree, {sat_count} satisfiable", seconds)


def test_criterion_5_one_dim_desk_scale():
    start = time.perf_counter()
    equal, worst = 0, 0.0
    for seed in range(50):
        n = 6 + seed % 7
        inst = generate(preset("1T", 100 + seed, n=n))
        _, rep = solve_1d(inst)
        opt = optimum_by_subsets(inst).total
        equal += rep.total == opt
        worst = max(worst, (rep.total - opt) / opt if opt else 0.0)
    seconds = time.perf_counter() - start
    report(5, equal >= 48 and worst <= 0.02 and seconds < 600, f"{equal}/50 optimal, worst gap {worst:.2%}", seconds)


def test_criterion_6_refinement_family():
    start = time.perf_counter()
    rng = np.random.default_rng(6)
    exact, worst = 0, 0.0
    for _ in range(100):
        n = int(rng.integers(1, 16))
        core = rng.integers(5, 40, n)
        sl, sr = rng.integers(0, 15, n), rng.integers(0, 15, n)
        chars = [CharacterCandidate(f"c{k:02d}", int(core[k] + sl[k] + sr[k]), 10, int(sl[k]), int(sr[k]))
                 for k in range(n)]
        ordered = sorted(chars, key=lambda c: (-c.s, c.id))
        oracle = insertion_family_min([(c.w, c.sl, c.sr) for c in ordered])
        exact += refine_row(chars, threshold=math.inf).w == oracle
        worst = max(worst, refine_row(chars, threshold=20).w / oracle - 1)
    seconds = time.perf_counter() - start
    report(6, exact == 100 and worst <= 0.02 and seconds < 300,
           f"{exact}/100 exact unbounded, worst pruned gap {worst:.2%}", seconds)


def test_criterion_7_two_dim_desk_scale():
    start = time.perf_counter()
    worst, details = 0.0, []
    for seed in range(20):
        n = 6 + seed % 5
        inst = generate(preset("2T", 200 + seed, n=n))
        best = min(solve_2d(inst, TwoDimConfig(sa=SaConfig(seed=s)))[1].total for s in range(5))
        opt = optimum_by_subsets(inst).total
        ratio = best / opt if opt else 1.0
        worst = max(worst, ratio)
        details.append(ratio)
    seconds = time.perf_counter() - start
    hits = sum(r == 1.0 for r in details)
    report(7, worst <= 1.15 and seconds < 900, f"worst ratio {worst:.3f}, {hits}/20 optimal", seconds)


MOVE_BUDGET = 40000


def test_criterion_8_baseline_dominance():
    start = time.perf_counter()
    gains = []
    for family, count in (("1M", 50), ("2M", 20)):
        for seed in range(count):
            inst = generate(preset(family, seed))
            if family == "1M":
                placement, rep = solve_1d(inst)
            else:
                placement, rep = solve_2d(inst, TwoDimConfig(sa=SaConfig(seed=seed, max_moves=MOVE_BUDGET)))
            assert check_legal(inst, placement)
            _, base = greedy_baseline(inst)
            gains.append((base.total - rep.total) / base.total)
    seconds = time.perf_counter() - start
    wins = sum(g >= 0 for g in gains)
    mean = float(np.mean(gains))
    ok = wins >= 0.9 * len(gains) and mean >= 0.10 and seconds < 3600
    report(8, ok, f"{wins}/{len(gains)} no worse than greedy, mean improvement {mean:.1%}", seconds)


def test_criterion_9_oracle_suite():
    start = time.perf_counter()
    rng = np.random.default_rng(9)
    checks = {}
    pts = {f"p{k:04d}": tuple(float(v) for v in rng.integers(0, 100, 5)) for k in range(1000)}
    tree = KdTree(pts)
    ok = True
    for _ in range(100):
        a, b = rng.integers(0, 100, (2, 5))
        lo, hi = np.minimum(a, b).tolist(), np.maximum(a, b).tolist()
        ok &= tree.range(lo, hi) == box_scan(pts, lo, hi)
    checks["kd"] = ok
    ok = True
    for _ in range(30):
        r, c = int(rng.integers(1, 9)), int(rng.integers(1, 9))
        r = min(r, c)
        w = rng.integers(0, 30, (r, c)).astype(float)
        ok &= sum(w[a, b] for a, b in max_weight_matching(w)) == best_matching(w.tolist())
    checks["matching"] = ok
    ok = True
    for _ in range(30):
        n = int(rng.integers(2, 5))
        c = rng.integers(-5, 10, n).tolist()
        A = rng.integers(-3, 8, (int(rng.integers(1, 4)), n)).tolist()
        b = rng.integers(0, 20, len(A)).tolist()
        ub = rng.integers(1, 6, n).tolist()
        lp = LinearProgram(sense="max")
        xs = [lp.add_var(f"x{j}", 0.0, float(u)) for j, u in enumerate(ub)]
        lp.objective = {x: float(v) for x, v in zip(xs, c)}
        for row, rhs in zip(A, b):
            lp.add_constraint({x: float(v) for x, v in zip(xs, row)}, "<=", float(rhs))
        ref = float(lp_by_vertices(c, A, b, ub)[0])
        got = solve_lp(lp).objective
        ok &= abs(got - ref) <= 1e-6 * max(1.0, abs(ref))
    checks["lp"] = ok
    ok = True
    for _ in range(20):
        n = int(rng.integers(2, 13))
        c = rng.integers(-4, 12, n).tolist()
        A = rng.integers(0, 9, (int(rng.integers(1, 4)), n)).tolist()
        b = rng.integers(0, 25, len(A)).tolist()
        lp = LinearProgram(sense="max")
        xs = [lp.add_var(f"x{j}", 0.0, 1.0) for j in range(n)]
        lp.objective = {x: float(v) for x, v in zip(xs, c)}
        for row, rhs in zip(A, b):
            lp.add_constraint({x: float(v) for x, v in zip(xs, row)}, "<=", float(rhs))
        res = solve_milp(MilpModel(lp, xs))
        ok &= res.status == "optimal" and abs(res.objective - ilp_by_enumeration(c, A, b)[0]) < 1e-6
    checks["milp"] = ok
    report(9, all(checks.values()), ", ".join(f"{k}={'ok' if v else 'mismatch'}" for k, v in checks.items()),
           time.perf_counter() - start)


def test_criterion_10_determinism(tmp_path):
    start = time.perf_counter()
    same = []
    cases = [("1T", []), ("2T", []), ("1D", ["--n", "200"]), ("2D", ["--n", "200"])]
    for name, extra in cases:
        files = []
        for run in ("a", "b"):
            inst, out = tmp_path / f"{name}{run}.json", tmp_path / f"{name}{run}.out.json"
            assert main(["gen", "--preset", name, "--seed", "3", *extra, "-o", str(inst)]) == 0
            assert main(["solve", "--in", str(inst), "--seed", "3", "--max-moves", "5000", "--out", str(out)]) == 0
            files.append((inst.read_bytes(), out.read_bytes()))
        same.append(files[0] == files[1])
    report(10, all(same), f"{sum(same)}/{len(cases)} byte-identical gen+solve pairs", time.perf_counter() - start)
