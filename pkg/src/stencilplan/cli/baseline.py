"""Profit-ordered first-fit reference planner."""
from __future__ import annotations

import time

import numpy as np

from ..model import Instance, Placement, SolutionReport, check_legal, writing_time


def _profit_order(instance: Instance) -> list[int]:
    t = instance.vsb_times.astype(float)
    weights = t / t.max() if len(t) and t.max() > 0 else np.ones_like(t)
    profits = instance.reductions @ weights
    return sorted(range(len(instance)), key=lambda i: (-profits[i], instance.candidates[i].id))


def _rows(instance: Instance, order) -> dict:
    st = instance.stencil
    last = [None] * st.rows  # (x, char) at each row's right end
    entries = {}
    for i in order:
        c = instance.candidates[i]
        if c.h > st.row_height:
            continue
        for k in range(st.rows):
            x = 0 if last[k] is None else last[k][0] + last[k][1].w - min(last[k][1].sr, c.sl)
            if x + c.w <= st.width:
                entries[c.id] = (k, x)
                last[k] = (x, c)
                break
    return entries


def _shelves(instance: Instance, order) -> dict:
    W, H = instance.stencil.width, instance.stencil.height
    shelves = []  # [y, height, (x, char) at right end]
    top = 0
    entries = {}
    for i in order:
        c = instance.candidates[i]
        placed = False
        for shelf in shelves:
            y, height, (lx, lc) = shelf
            x = lx + lc.w - min(lc.sr, c.sl)
            if c.h <= height and x + c.w <= W:
                entries[c.id] = (x, y)
                shelf[2] = (x, c)
                placed = True
                break
        if not placed and c.w <= W and top + c.h <= H:
            entries[c.id] = (0, top)
            shelves.append([top, c.h, (0, c)])
            top += c.h
    return entries


def greedy_baseline(instance: Instance) -> tuple[Placement, SolutionReport]:
    """Highest profit first, each into the first row (or shelf) with room.

    Neighbours in a row share blanks; shelves are opened bottom-up with the
    height of their first character and do not share vertical blanks.
    """
    start = time.perf_counter()
    order = _profit_order(instance)
    entries = _rows(instance, order) if instance.mode == "1d" else _shelves(instance, order)
    placement = Placement(entries)
    if not check_legal(instance, placement):
        raise AssertionError("greedy baseline produced an illegal placement")
    report = writing_time(instance, entries)
    report.seconds = time.perf_counter() - start
    return placement, report
