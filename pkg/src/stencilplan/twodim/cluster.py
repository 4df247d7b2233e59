"""Similarity clustering of candidates into rigid multi-character blocks."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..model import CharacterCandidate
from .kdtree import KdTree


@dataclass(frozen=True)
class ClusterNode:
    id: str
    w: int
    h: int
    sl: int
    sr: int
    st: int
    sb: int
    profit: float
    # (member id, dx, dy) relative to the block's lower-left corner
    members: tuple[tuple[str, int, int], ...]
    joins: tuple[str, ...] = ()

    @classmethod
    def single(cls, c: CharacterCandidate, profit: float) -> "ClusterNode":
        return cls(c.id, c.w, c.h, c.sl, c.sr, c.st, c.sb, float(profit), ((c.id, 0, 0),))

    @property
    def sh(self) -> int:
        return min(self.sl, self.sr)

    @property
    def sv(self) -> int:
        return min(self.st, self.sb)

    @property
    def point(self) -> tuple[float, ...]:
        return (self.w, self.h, self.sh, self.sv, self.profit)

    @property
    def ids(self) -> list[str]:
        return [m[0] for m in self.members]


def _rel(a: float, b: float) -> float:
    if b == 0:
        return 0.0 if a == 0 else math.inf
    return abs(a - b) / abs(b)


def similar(a, b, bound: float = 0.2) -> bool:
    """Is `a` within `bound` relative distance of `b` on size, blank and profit."""
    return (max(_rel(a.w, b.w), _rel(a.h, b.h)) <= bound
            and max(_rel(a.sh, b.sh), _rel(a.sv, b.sv)) <= bound
            and _rel(a.profit, b.profit) <= bound)


def _box(center: Sequence[float], bound: float):
    lo, hi = [], []
    for v in center:
        slack = bound * abs(v)
        # pad so float rounding never excludes a boundary point; the exact
        # predicate is applied afterwards
        pad = 1e-9 * max(1.0, abs(v))
        lo.append(v - slack - pad)
        hi.append(v + slack + pad)
    return lo, hi


def kd_range_query(tree: KdTree, center, bound: float = 0.2) -> list[str]:
    """Live ids `a` with similar(a, center, bound)."""
    point = center.point if hasattr(center, "point") else tuple(center)
    lo, hi = _box(point, bound)
    ref = _Pt(point)
    return [cid for cid in tree.range(lo, hi) if similar(_Pt(tree.points[cid]), ref, bound)]


class _Pt:
    __slots__ = ("w", "h", "sh", "sv", "profit")

    def __init__(self, p):
        self.w, self.h, self.sh, self.sv, self.profit = p


def distance(a, b) -> float:
    """Relative distance of a from b over the five similarity features."""
    total = 0.0
    for x, y in zip(a.point, b.point):
        d = _rel(x, y)
        total += 0.0 if d == math.inf else d * d
    return math.sqrt(total)


def merge(a: ClusterNode, b: ClusterNode, orientation: str | None = None) -> ClusterNode:
    """Join b to the right of (or above) a, keeping a's id.

    Without an explicit orientation the one with the smaller bounding area
    wins, horizontal on ties.
    """
    if orientation is None:
        hw = a.w + b.w - min(a.sr, b.sl)
        vh = a.h + b.h - min(a.st, b.sb)
        area_h = hw * max(a.h, b.h)
        area_v = max(a.w, b.w) * vh
        orientation = "horizontal" if area_h <= area_v else "vertical"
    if orientation == "horizontal":
        dx = a.w - min(a.sr, b.sl)
        members = a.members + tuple((m, x + dx, y) for m, x, y in b.members)
        return ClusterNode(a.id, dx + b.w, max(a.h, b.h), a.sl, b.sr, min(a.st, b.st), min(a.sb, b.sb),
                           a.profit + b.profit, members, a.joins + ("horizontal",))
    dy = a.h - min(a.st, b.sb)
    members = a.members + tuple((m, x, y + dy) for m, x, y in b.members)
    return ClusterNode(a.id, max(a.w, b.w), dy + b.h, min(a.sl, b.sl), min(a.sr, b.sr), b.st, a.sb,
                       a.profit + b.profit, members, a.joins + ("vertical",))


def cluster(nodes: Iterable[ClusterNode], bound: float = 0.2, max_w: float = math.inf,
            max_h: float = math.inf) -> list[ClusterNode]:
    """Greedy pairwise merging of similar blocks, highest profit first.

    Each pass visits live blocks in decreasing profit; a block absorbs its
    nearest similar neighbour (lowest id on ties) if the merged footprint
    stays within max_w x max_h. Passes repeat until nothing merges.
    """
    live = {n.id: n for n in nodes}
    tree = KdTree({cid: n.point for cid, n in live.items()})
    while True:
        merged_any = False
        for cid in sorted(live, key=lambda k: (-live[k].profit, k)):
            node = live.get(cid)
            if node is None:
                continue
            best = None
            for other_id in kd_range_query(tree, node, bound):
                if other_id == cid:
                    continue
                joined = merge(node, live[other_id])
                if joined.w > max_w or joined.h > max_h:
                    continue
                key = (distance(live[other_id], node), other_id)
                if best is None or key < best[0]:
                    best = (key, other_id, joined)
            if best is None:
                continue
            _, other_id, joined = best
            tree.delete(other_id)
            tree.delete(cid)
            del live[other_id]
            live[cid] = joined
            tree.insert(cid, joined.point)
            merged_any = True
        if not merged_any:
            break
    return sorted(live.values(), key=lambda n: (-n.profit, n.id))


def member_reductions(nodes: Sequence[ClusterNode], index: dict[str, int], R: np.ndarray) -> np.ndarray:
    """(blocks, P) summed reduction of each block's members."""
    out = np.zeros((len(nodes), R.shape[1]), dtype=np.int64)
    for b, n in enumerate(nodes):
        for m, _, _ in n.members:
            out[b] += R[index[m]]
    return out
