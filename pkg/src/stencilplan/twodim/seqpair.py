"""Sequence-pair evaluation with blank sharing between neighbours."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numba import njit


@dataclass(frozen=True)
class SequencePair:
    pos: tuple[int, ...]
    neg: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.pos) != sorted(self.neg) or len(set(self.pos)) != len(self.pos):
            raise ValueError("both sequences must be permutations of the same blocks")


@njit(cache=True)
def pack_arrays(pos, neg, w, h, sl, sr, st, sb):
    """Lower-left coordinates for blocks 0..k-1.

    a is left of b when a precedes b in both sequences, and below b when a
    follows b in `pos` but precedes it in `neg`.
    """
    k = len(pos)
    rank = np.empty(k, dtype=np.int64)
    for i in range(k):
        rank[pos[i]] = i
    x = np.zeros(k, dtype=np.int64)
    y = np.zeros(k, dtype=np.int64)
    for ib in range(k):
        b = neg[ib]
        xb = 0
        yb = 0
        for ia in range(ib):
            a = neg[ia]
            if rank[a] < rank[b]:
                v = x[a] + w[a] - min(sr[a], sl[b])
                if v > xb:
                    xb = v
            else:
                v = y[a] + h[a] - min(st[a], sb[b])
                if v > yb:
                    yb = v
        x[b] = xb
        y[b] = yb
    return x, y


@dataclass(frozen=True)
class BlockArrays:
    w: np.ndarray
    h: np.ndarray
    sl: np.ndarray
    sr: np.ndarray
    st: np.ndarray
    sb: np.ndarray

    @classmethod
    def of(cls, blocks: Sequence) -> "BlockArrays":
        def col(name):
            return np.array([getattr(b, name) for b in blocks], dtype=np.int64)

        return cls(col("w"), col("h"), col("sl"), col("sr"), col("st"), col("sb"))


def sp_pack(sp: SequencePair, blocks: Sequence) -> tuple[dict[int, tuple[int, int]], tuple[int, int]]:
    """Coordinates per block index and the bounding box (width, height)."""
    if not blocks:
        return {}, (0, 0)
    arr = BlockArrays.of(blocks)
    x, y = pack_arrays(np.asarray(sp.pos, dtype=np.int64), np.asarray(sp.neg, dtype=np.int64),
                       arr.w, arr.h, arr.sl, arr.sr, arr.st, arr.sb)
    coords = {i: (int(x[i]), int(y[i])) for i in range(len(blocks))}
    bbox = (int((x + arr.w).max()), int((y + arr.h).max()))
    return coords, bbox
