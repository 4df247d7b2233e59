"""Batch runs over instance suites, written as CSV."""
from __future__ import annotations

import csv
import io
import time
from typing import Callable, Sequence

from ..lp.exact import optimum_by_subsets
from ..model import Instance, Placement, SolutionReport, check_legal, writing_time
from ..onedim import OneDimConfig, solve_1d
from ..twodim import SaConfig, TwoDimConfig, solve_2d
from .baseline import greedy_baseline

HEADER = ["instance", "solver", "status", "T", "char#", "CPU(s)"]


def pipeline_solver(seed: int = 0, restarts: int = 1, max_moves: int | None = None) -> Callable:
    def run(instance: Instance):
        if instance.mode == "1d":
            return solve_1d(instance, OneDimConfig())
        return solve_2d(instance, TwoDimConfig(sa=SaConfig(seed=seed, restarts=restarts, max_moves=max_moves)))

    return run


def exact_solver(time_limit: float | None = 600.0) -> Callable:
    def run(instance: Instance):
        start = time.perf_counter()
        res = optimum_by_subsets(instance, time_limit=time_limit)
        if res.status != "optimal":
            raise TimeoutError(res.status)
        report = writing_time(instance, res.placement.entries)
        report.seconds = time.perf_counter() - start
        return res.placement, report

    return run


def solver_table(seed: int = 0, restarts: int = 1, max_moves: int | None = None) -> dict[str, Callable]:
    return {
        "pipeline": pipeline_solver(seed, restarts, max_moves),
        "greedy": greedy_baseline,
        "exact": exact_solver(),
    }


def run_report(instances: Sequence[tuple[str, Instance]], solvers: Sequence[str],
               table: dict[str, Callable] | None = None, timings: bool = True) -> str:
    """One CSV row per (instance, solver). Failures are recorded, not raised."""
    table = table or solver_table()
    unknown = [s for s in solvers if s not in table]
    if unknown:
        raise KeyError(f"unknown solvers {unknown}")
    regions = max((inst.regions for _, inst in instances), default=1)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(HEADER + [f"T_{c + 1}" for c in range(regions)])
    for name, inst in instances:
        for solver in solvers:
            try:
                placement, report = table[solver](inst)
                status = _validate(inst, placement, report)
            except Exception as exc:  # a failing solver must not stop the run
                writer.writerow([name, solver, f"error: {type(exc).__name__}: {exc}", "", "", ""] + [""] * regions)
                continue
            if status != "ok":
                writer.writerow([name, solver, status, "", "", ""] + [""] * regions)
                continue
            cpu = f"{report.seconds:.2f}" if timings else ""
            per_region = list(report.region_times) + [""] * (regions - len(report.region_times))
            writer.writerow([name, solver, status, report.total, report.selected, cpu] + per_region)
    return out.getvalue()


def _validate(instance: Instance, placement: Placement, report: SolutionReport) -> str:
    if not check_legal(instance, placement):
        return "illegal"
    if writing_time(instance, placement.entries).total != report.total:
        return "inconsistent"
    return "ok"
