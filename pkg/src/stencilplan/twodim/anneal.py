"""Fixed-outline simulated annealing over sequence pairs.

Blocks whose packed footprint ends outside the outline are simply not on
the stencil; the cost is the resulting system writing time.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..model import Instance, Placement
from .cluster import ClusterNode, member_reductions
from .seqpair import BlockArrays, SequencePair, pack_arrays


@dataclass
class SaConfig:
    t0: float | None = None  # None: calibrate from sampled uphill moves
    cooling: float = 0.95
    moves_per_temp: int | None = None  # None: 50 per block
    stop_ratio: float = 1e-4
    init_accept: float = 0.8
    seed: int = 0
    restarts: int = 1
    max_moves: int | None = None
    outline: tuple[int, int] | None = None

    def __post_init__(self):
        if not 0 < self.cooling < 1:
            raise ValueError("cooling ratio must be in (0, 1)")
        if self.restarts < 1:
            raise ValueError("need at least one run")


@dataclass
class SaResult:
    cost: int
    selected: list[int]
    sp: SequencePair
    placement: Placement
    trace: list[int] = field(default_factory=list)
    moves: int = 0


class _Evaluator:
    def __init__(self, blocks, instance, outline):
        self.arr = BlockArrays.of(blocks)
        self.W, self.H = outline
        self.R = member_reductions(blocks, instance.index, instance.reductions)
        self.base = instance.vsb_times.astype(np.int64)

    def inside(self, pos, neg):
        a = self.arr
        x, y = pack_arrays(pos, neg, a.w, a.h, a.sl, a.sr, a.st, a.sb)
        return (x + a.w <= self.W) & (y + a.h <= self.H), x, y

    def cost(self, pos, neg) -> int:
        mask, _, _ = self.inside(pos, neg)
        return int((self.base - self.R[mask].sum(axis=0)).max()) if len(self.base) else 0


def shelf_sequence(blocks: Sequence[ClusterNode], outline, fill: float = 1.0):
    """Sequence pair of a next-fit decreasing-height shelf layout.

    Blocks are taken by profit density until their area reaches `fill` of
    the outline; the rest sit above every shelf.
    """
    W, H = outline
    k = len(blocks)
    order = sorted(range(k), key=lambda b: (-blocks[b].profit / (blocks[b].w * blocks[b].h), blocks[b].id))
    chosen, rest, area = [], [], 0.0
    for b in order:
        if blocks[b].w <= W and blocks[b].h <= H and area + blocks[b].w * blocks[b].h <= fill * W * H:
            chosen.append(b)
            area += blocks[b].w * blocks[b].h
        else:
            rest.append(b)
    chosen.sort(key=lambda b: (-blocks[b].h, blocks[b].id))
    shelves, cur, x = [], [], 0
    for b in chosen:
        blk = blocks[b]
        step = 0 if not cur else blocks[cur[-1]].w - min(blocks[cur[-1]].sr, blk.sl)
        if cur and x + step + blk.w > W:
            shelves.append(cur)
            cur, x, step = [], 0, 0
        x += step
        cur.append(b)
    if cur:
        shelves.append(cur)
    pos = [b for row in [rest] + shelves[::-1] for b in row]
    neg = [b for row in shelves + [rest] for b in row]
    return np.array(pos, dtype=np.int64), np.array(neg, dtype=np.int64)


def _move(rng, pos, neg, k):
    """Apply a random move in place; returns an undo closure."""
    kind = rng.integers(3)
    if kind == 0:
        i, j = rng.choice(k, 2, replace=False)
        pos[i], pos[j] = pos[j], pos[i]
        return lambda: _swap(pos, i, j)
    if kind == 1:
        i, j = rng.choice(k, 2, replace=False)
        a, b = pos[i], pos[j]
        pos[i], pos[j] = b, a
        ia, ib = int(np.flatnonzero(neg == a)[0]), int(np.flatnonzero(neg == b)[0])
        neg[ia], neg[ib] = b, a
        return lambda: (_swap(pos, i, j), _swap(neg, ia, ib))
    block = int(rng.integers(k))
    old_p, old_n = pos.copy(), neg.copy()
    for seq in (pos, neg):
        rest = seq[seq != block]
        at = int(rng.integers(k))
        seq[:] = np.insert(rest, at, block)
    return lambda: (pos.__setitem__(slice(None), old_p), neg.__setitem__(slice(None), old_n))


def _swap(seq, i, j):
    seq[i], seq[j] = seq[j], seq[i]


def _calibrate(ev, rng, pos, neg, k, cost, samples, accept):
    ups = []
    for _ in range(samples):
        undo = _move(rng, pos, neg, k)
        delta = ev.cost(pos, neg) - cost
        undo()
        if delta > 0:
            ups.append(delta)
    if not ups:
        return 1.0
    return -float(np.mean(ups)) / math.log(accept)


def _anneal_once(ev, blocks, config, seed):
    k = len(blocks)
    rng = np.random.default_rng(seed)
    outline = (ev.W, ev.H)
    best_pos = best_neg = None
    best = math.inf
    for fill in (0.8, 0.9, 1.0, 1.1, 1.2):
        p, n = shelf_sequence(blocks, outline, fill)
        c = ev.cost(p, n)
        if c < best:
            best, best_pos, best_neg = c, p, n
    pos, neg = best_pos.copy(), best_neg.copy()
    cost = best
    trace = [best]
    moves = 0
    if k < 2:
        return best, best_pos, best_neg, trace, moves
    t0 = config.t0 if config.t0 is not None else _calibrate(ev, rng, pos, neg, k, cost, 100, config.init_accept)
    temp, stop = t0, t0 * config.stop_ratio
    levels = max(1, math.ceil(math.log(config.stop_ratio) / math.log(config.cooling)))
    per_temp = config.moves_per_temp or 50 * k
    if config.max_moves is not None:
        per_temp = max(1, min(per_temp, config.max_moves // levels))
    while temp > stop:
        for _ in range(per_temp):
            undo = _move(rng, pos, neg, k)
            new = ev.cost(pos, neg)
            moves += 1
            delta = new - cost
            if delta <= 0 or rng.random() < math.exp(-delta / temp):
                cost = new
                if cost < best:
                    best, best_pos, best_neg = cost, pos.copy(), neg.copy()
            else:
                undo()
        trace.append(best)
        temp *= config.cooling
        if config.max_moves is not None and moves >= config.max_moves:
            break
    return best, best_pos, best_neg, trace, moves


def sa_floorplan(blocks: Sequence[ClusterNode], instance: Instance, config: SaConfig | None = None) -> SaResult:
    """Best sequence pair found over `config.restarts` seeded runs."""
    config = config or SaConfig()
    outline = config.outline or (instance.stencil.width, instance.stencil.height)
    ev = _Evaluator(blocks, instance, outline)
    if not blocks:
        base = int(ev.base.max()) if len(ev.base) else 0
        return SaResult(base, [], SequencePair((), ()), Placement({}), [base])
    seeds = np.random.SeedSequence(config.seed).generate_state(config.restarts)
    runs = [_anneal_once(ev, blocks, config, int(s)) for s in seeds]
    best, pos, neg, trace, _ = min(runs, key=lambda r: r[0])
    mask, x, y = ev.inside(pos, neg)
    selected = [int(b) for b in np.flatnonzero(mask)]
    entries = {}
    for b in selected:
        for mid, dx, dy in blocks[b].members:
            entries[mid] = (int(x[b]) + dx, int(y[b]) + dy)
    return SaResult(int(best), selected, SequencePair(tuple(pos.tolist()), tuple(neg.tolist())),
                    Placement(entries), trace, sum(r[4] for r in runs))
