"""Command-line entry point: gen, solve, exact, verify, reduce, report."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..lp.exact import MAX_SUBSET_CANDIDATES, build_exact, optimum_by_subsets, solve_exact
from ..model import InputError, check_legal, writing_time
from ..onedim import OneDimConfig, StageError as OneDimStageError, solve_1d
from ..onedim.rounding import _relaxation, initial_state, prune_hopeless, update_profits
from ..reductions import ThreeSatInstance, bss_to_1dosp, sat_to_bss
from ..twodim import SaConfig, TwoDimConfig, solve_2d
from ..twodim.pipeline import StageError as TwoDimStageError
from .generate import PRESETS, generate, preset
from .instance_io import dumps, instance_to_doc, load_instance, load_placement, save_instance, save_placement
from .report import run_report, solver_table

EXIT_OK, EXIT_INPUT, EXIT_LIMIT, EXIT_INVARIANT = 0, 1, 2, 3
DEFAULT_MAX_MOVES = 40000


class LimitReached(RuntimeError):
    pass


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    overrides = {"n": args.n} if args.n is not None else {}
    instance = generate(preset(args.preset, args.seed, **overrides))
    _emit(dumps(instance_to_doc(instance)), args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    instance = load_instance(args.inp)
    if args.mode and args.mode != instance.mode:
        raise InputError(f"--mode {args.mode} but the instance is {instance.mode}")
    if args.dump_lp:
        if instance.mode == "1d":
            state = initial_state(instance)
            prune_hopeless(instance, state)
            model = _relaxation(instance, state, update_profits(instance, state))
        else:
            model = build_exact(instance)
        Path(args.dump_lp).write_text(model.dump())
    if instance.mode == "1d":
        placement, report = solve_1d(instance, OneDimConfig())
    else:
        sa = SaConfig(seed=args.seed, restarts=args.sa_restarts, max_moves=args.max_moves or None)
        placement, report = solve_2d(instance, TwoDimConfig(sa=sa))
    if args.out:
        save_placement(placement, args.out)
    _summary(report)
    return EXIT_OK


def cmd_exact(args) -> int:
    instance = load_instance(args.inp)
    method = args.method
    if method == "auto":
        method = "subsets" if len(instance) <= MAX_SUBSET_CANDIDATES else "milp"
    if method == "subsets":
        res = optimum_by_subsets(instance, time_limit=args.time_limit)
    else:
        res = solve_exact(instance, time_limit=args.time_limit)
    if res.placement is None:
        raise LimitReached(f"exact solve stopped: {res.status}")
    if args.out:
        save_placement(res.placement, args.out)
    report = writing_time(instance, res.placement.entries)
    report.seconds = res.seconds
    _summary(report, status=res.status)
    return EXIT_OK if res.status == "optimal" else EXIT_LIMIT


def cmd_verify(args) -> int:
    instance = load_instance(args.inp)
    placement = load_placement(args.placement)
    verdict = check_legal(instance, placement)
    for v in verdict.violations:
        print(f"violation {v.kind} {' '.join(v.ids)} axis={v.axis} amount={v.amount}")
    report = writing_time(instance, placement.entries)
    _summary(report, status="legal" if verdict else "illegal")
    return EXIT_OK if verdict else EXIT_INVARIANT


def read_dimacs(path) -> ThreeSatInstance:
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    n, clauses, pending = None, [], []
    for line in lines:
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise InputError(f"bad problem line {line!r}")
            n = int(parts[2])
            continue
        try:
            lits = [int(tok) for tok in line.split()]
        except ValueError:
            raise InputError(f"bad clause line {line!r}") from None
        for lit in lits:
            if lit == 0:
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(lit)
    if pending:
        clauses.append(tuple(pending))
    if n is None:
        raise InputError("missing 'p cnf' line")
    return ThreeSatInstance(n, tuple(clauses))


def cmd_reduce(args) -> int:
    sat = read_dimacs(args.sat)
    enc = sat_to_bss(sat)
    lines = [f"target {enc.bss.target}"]
    lines += [f"{label} {x}" for label, x in zip(enc.labels, enc.bss.numbers)]
    _emit("\n".join(lines) + "\n", None)
    if args.out:
        save_instance(bss_to_1dosp(enc.bss), args.out)
    return EXIT_OK


def cmd_report(args) -> int:
    suite = Path(args.suite)
    files = sorted(suite.glob("*.json")) if suite.is_dir() else [suite]
    if not files:
        raise InputError(f"no instance files in {suite}")
    instances = [(f.stem, load_instance(f)) for f in files]
    solvers = [s for s in args.solvers.split(",") if s]
    table = solver_table(seed=args.seed, restarts=args.sa_restarts, max_moves=args.max_moves or None)
    try:
        text = run_report(instances, solvers, table, timings=not args.no_timings)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    _emit(text, args.out)
    return EXIT_OK


def _summary(report, status: str = "ok"):
    times = " ".join(str(t) for t in report.region_times)
    print(f"status={status} T={report.total} chars={report.selected} seconds={report.seconds:.2f}")
    print(f"region_times {times}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stencilplan", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a seeded instance")
    p.add_argument("--preset", required=True, choices=sorted(PRESETS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=None, help="override the candidate count")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="run the heuristic planner")
    p.add_argument("--mode", choices=["1d", "2d"], default=None)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--sa-restarts", type=int, default=1)
    p.add_argument("--max-moves", type=int, default=DEFAULT_MAX_MOVES, help="annealing move budget, 0 for none")
    p.add_argument("--dump-lp", default=None, metavar="FILE", help="write the first relaxation (1d) or exact model (2d)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("exact", help="solve to optimality")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--time-limit", type=float, default=None)
    p.add_argument("--method", choices=["auto", "subsets", "milp"], default="auto")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("verify", help="check a placement file")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--placement", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", help="3SAT (DIMACS) to subset sum and a one-row instance")
    p.add_argument("--sat", required=True)
    p.add_argument("-o", "--out", default=None, help="write the one-row instance here")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("report", help="CSV table over a directory of instances")
    p.add_argument("--suite", required=True)
    p.add_argument("--solvers", default="pipeline,greedy")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sa-restarts", type=int, default=1)
    p.add_argument("--max-moves", type=int, default=DEFAULT_MAX_MOVES)
    p.add_argument("--no-timings", action="store_true", help="leave the CPU column empty")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (LimitReached, TimeoutError) as exc:
        print(f"limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (OneDimStageError, TwoDimStageError, AssertionError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
