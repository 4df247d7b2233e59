"""End-to-end free-placement planner."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from ..model import CharacterCandidate, Instance, InputError, Placement, SolutionReport, check_legal, writing_time
from .anneal import SaConfig, sa_floorplan
from .cluster import ClusterNode, cluster


@dataclass
class TwoDimConfig:
    area_ratio: float = 3.0
    bound: float = 0.2
    clustering: bool = True
    # largest cluster side as a fraction of the outline side
    max_cluster_frac: float = 0.1
    sa: SaConfig = field(default_factory=SaConfig)


class StageError(RuntimeError):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage


def initial_profits(instance: Instance) -> np.ndarray:
    t = instance.vsb_times.astype(float)
    t_max = t.max() if len(t) else 0.0
    weights = t / t_max if t_max > 0 else np.ones_like(t)
    return instance.reductions @ weights


def pre_filter(instance: Instance, area_ratio: float = 3.0, profits=None) -> list[CharacterCandidate]:
    """Keep the best profit-per-area candidates up to area_ratio x stencil area."""
    cands = list(instance.candidates)
    cap = area_ratio * instance.stencil.width * instance.stencil.height
    if sum(c.w * c.h for c in cands) <= cap:
        return cands
    profits = initial_profits(instance) if profits is None else profits
    order = sorted(range(len(cands)), key=lambda i: (-profits[i] / (cands[i].w * cands[i].h), cands[i].id))
    kept, area = [], 0
    for i in order:
        a = cands[i].w * cands[i].h
        if area + a > cap:
            break
        kept.append(cands[i])
        area += a
    return kept


def solve_2d(instance: Instance, config: TwoDimConfig | None = None) -> tuple[Placement, SolutionReport]:
    config = config or TwoDimConfig()
    if instance.mode != "2d":
        raise InputError("solve_2d needs a 2d instance")
    start = time.perf_counter()
    W, H = instance.stencil.width, instance.stencil.height
    stages = {}

    def stage(name, fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except Exception as exc:
            raise StageError(name, exc) from exc

    profits = initial_profits(instance)
    fitting = instance.with_candidates(c for c in instance.candidates if c.w <= W and c.h <= H)
    kept = stage("pre-filter", pre_filter, fitting, config.area_ratio,
                 profits=np.array([profits[instance.index[c.id]] for c in fitting.candidates]))
    nodes = [ClusterNode.single(c, profits[instance.index[c.id]]) for c in kept]
    if config.clustering and nodes:
        f = config.max_cluster_frac
        nodes = stage("cluster", cluster, nodes, config.bound, f * W if f else math.inf, f * H if f else math.inf)
    stages["blocks"] = len(nodes)
    result = stage("anneal", sa_floorplan, nodes, instance, config.sa)
    placement = result.placement
    verdict = check_legal(instance, placement)
    if not verdict:
        raise StageError("legality", AssertionError(f"{len(verdict.violations)} violations"))
    report = writing_time(instance, placement.entries)
    if report.total != result.cost:
        raise StageError("decluster", AssertionError("declustered cost differs from annealed cost"))
    stages["anneal"] = report.total
    report.seconds = time.perf_counter() - start
    report.stages = stages
    return placement, report
