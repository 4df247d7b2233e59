"""Character order inside one row."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from ..model import CharacterCandidate, row_length


@dataclass(frozen=True)
class OrderSolution:
    w: int
    l: int
    r: int
    order: tuple[CharacterCandidate, ...]

    @classmethod
    def of(cls, order: Sequence[CharacterCandidate]) -> "OrderSolution":
        order = tuple(order)
        if not order:
            return cls(0, 0, 0, ())
        return cls(row_length(order), order[0].sl, order[-1].sr, order)

    def positions(self) -> list[int]:
        xs, x = [], 0
        for k, c in enumerate(self.order):
            if k:
                prev = self.order[k - 1]
                x += prev.w - min(prev.sr, c.sl)
            xs.append(x)
        return xs


def by_blank(chars: Sequence[CharacterCandidate]) -> list[CharacterCandidate]:
    return sorted(chars, key=lambda c: (-c.s, c.id))


def greedy_symmetric_order(chars: Sequence[CharacterCandidate]) -> OrderSolution:
    """Largest blanks first, each added at whichever end shares more blank."""
    ordered = by_blank(chars)
    if not ordered:
        return OrderSolution(0, 0, 0, ())
    first = ordered[0]
    w, l, r, order = first.w, first.sl, first.sr, (first,)
    for c in ordered[1:]:
        left = min(c.sr, l)
        right = min(r, c.sl)
        if left > right:
            w, l, order = w + c.w - left, c.sl, (c,) + order
        else:
            w, r, order = w + c.w - right, c.sr, order + (c,)
    return OrderSolution(w, l, r, order)


def _dominates(a, b) -> bool:
    return a[0] <= b[0] and a[1] >= b[1] and a[2] >= b[2] and a[:3] != b[:3]


def _prune(states, threshold, dominance):
    states = sorted(states, key=lambda s: (s[0], -s[1], -s[2]))
    kept = []
    for s in states:
        if dominance == "literal":
            # the inequality read literally drops the better of the two
            if any(_dominates(s, k) for k in kept):
                continue
        elif any(_dominates(k, s) or k[:3] == s[:3] for k in kept):
            continue
        kept.append(s)
    return kept[:threshold]


def refine_row(chars: Sequence[CharacterCandidate], threshold: float = 20,
               dominance: str = "corrected") -> OrderSolution:
    """Best order among those built by adding characters at either end.

    Characters are taken in decreasing blank order. Partial solutions are
    (w, l, r, order) tuples; once the set reaches `threshold` entries the
    dominated ones are dropped and only the `threshold` shortest survive.
    threshold=math.inf keeps every partial solution.
    """
    if dominance not in ("corrected", "literal"):
        raise ValueError(f"unknown dominance rule {dominance!r}")
    ordered = by_blank(chars)
    if not ordered:
        return OrderSolution(0, 0, 0, ())
    first = ordered[0]
    states = [(first.w, first.sl, first.sr, (first,))]
    for c in ordered[1:]:
        nxt = []
        for w, l, r, order in states:
            nxt.append((w + c.w - min(c.sr, l), c.sl, r, (c,) + order))
            nxt.append((w + c.w - min(r, c.sl), l, c.sr, order + (c,)))
        if len(nxt) >= threshold:
            nxt = _prune(nxt, int(threshold), dominance)
        states = nxt
    w, l, r, order = min(states, key=lambda s: s[0])
    return OrderSolution(w, l, r, order)


def insertion_family(chars: Sequence[CharacterCandidate]) -> list[OrderSolution]:
    """Every order reachable by end insertions in decreasing blank order."""
    return [OrderSolution(*s) for s in _family(by_blank(chars))]


def _family(ordered):
    if not ordered:
        return []
    first = ordered[0]
    states = [(first.w, first.sl, first.sr, (first,))]
    for c in ordered[1:]:
        nxt = []
        for w, l, r, order in states:
            nxt.append((w + c.w - min(c.sr, l), c.sl, r, (c,) + order))
            nxt.append((w + c.w - min(r, c.sl), l, c.sr, order + (c,)))
        states = nxt
    return states


def best_insertion(sol: OrderSolution, c: CharacterCandidate) -> OrderSolution:
    """Shortest order obtained by inserting c at any position of sol."""
    order = sol.order
    if not order:
        return OrderSolution(c.w, c.sl, c.sr, (c,))
    best_len, best_k = math.inf, 0
    for k in range(len(order) + 1):
        prev = order[k - 1] if k else None
        nxt = order[k] if k < len(order) else None
        delta = c.w
        if prev is not None:
            delta -= min(prev.sr, c.sl)
        if nxt is not None:
            delta -= min(c.sr, nxt.sl)
        if prev is not None and nxt is not None:
            delta += min(prev.sr, nxt.sl)
        if sol.w + delta < best_len:
            best_len, best_k = sol.w + delta, k
    new = order[:best_k] + (c,) + order[best_k:]
    return OrderSolution(best_len, new[0].sl, new[-1].sr, new)


def without(sol: OrderSolution, cid: str) -> OrderSolution:
    return OrderSolution.of(tuple(c for c in sol.order if c.id != cid))


def symmetric_length(chars: Sequence[CharacterCandidate]) -> int:
    """sum(w - s) + max(s): the symmetric-blank row length estimate."""
    if not chars:
        return 0
    return sum(c.w - c.s for c in chars) + max(c.s for c in chars)


def length_lower_bound(chars: Sequence[CharacterCandidate]) -> float:
    """No order of `chars` is shorter than this."""
    return sum(c.w - (c.sl + c.sr) / 2 for c in chars)


def fit_order(sol: OrderSolution, c: CharacterCandidate, width: int, threshold: float = 20,
              dominance: str = "corrected") -> OrderSolution | None:
    """An order of sol + c within `width`, or None if none was found."""
    chars = sol.order + (c,)
    if symmetric_length(chars) > width or length_lower_bound(chars) > width:
        return None
    cand = best_insertion(sol, c)
    if cand.w <= width:
        return cand
    cand = refine_row(chars, threshold, dominance)
    return cand if cand.w <= width else None
