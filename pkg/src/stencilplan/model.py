"""Domain types, blank-overlap geometry, writing time and legality checks.

All lengths are integer nanometres. A character's width and height include
its boundary blanks; two neighbours may overlap by the smaller of the two
facing blanks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np


class InputError(ValueError):
    """Malformed instance, placement or query."""


@dataclass(frozen=True)
class CharacterCandidate:
    id: str
    w: int
    h: int
    sl: int = 0
    sr: int = 0
    st: int = 0
    sb: int = 0
    vsb: int = 1
    repeats: tuple[int, ...] = (1,)

    def __post_init__(self):
        object.__setattr__(self, "repeats", tuple(int(t) for t in self.repeats))
        if self.w <= 0 or self.h <= 0:
            raise InputError(f"{self.id}: footprint must be positive")
        if min(self.sl, self.sr, self.st, self.sb) < 0:
            raise InputError(f"{self.id}: negative blank")
        if self.sl + self.sr > self.w or self.st + self.sb > self.h:
            raise InputError(f"{self.id}: blanks exceed footprint")
        if self.vsb < 1:
            raise InputError(f"{self.id}: vsb shot count must be >= 1")
        if any(t < 0 for t in self.repeats):
            raise InputError(f"{self.id}: negative repeat count")

    @property
    def s(self) -> int:
        """Symmetric blank used by the row-capacity formulas."""
        return (self.sl + self.sr + 1) // 2

    @property
    def sh(self) -> int:
        return min(self.sl, self.sr)

    @property
    def sv(self) -> int:
        return min(self.st, self.sb)


@dataclass(frozen=True)
class StencilSpec:
    width: int
    height: int
    rows: int | None = None
    row_height: int | None = None

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise InputError("stencil outline must be positive")
        if (self.rows is None) != (self.row_height is None):
            raise InputError("rows and row_height go together")
        if self.rows is not None:
            if self.rows < 1 or self.row_height <= 0:
                raise InputError("need at least one row of positive height")
            if self.rows * self.row_height > self.height:
                raise InputError("rows exceed stencil height")

    @property
    def mode(self) -> str:
        return "1d" if self.rows is not None else "2d"


@dataclass(frozen=True)
class Instance:
    candidates: tuple[CharacterCandidate, ...]
    stencil: StencilSpec
    regions: int = 1
    # shots charged per repeat for a character on the stencil
    cp: int = 1

    def __post_init__(self):
        object.__setattr__(self, "candidates", tuple(self.candidates))
        if self.regions < 1:
            raise InputError("region count must be positive")
        if self.cp < 0:
            raise InputError("cp time must be non-negative")
        seen = set()
        for c in self.candidates:
            if c.id in seen:
                raise InputError(f"duplicate candidate id {c.id}")
            seen.add(c.id)
            if len(c.repeats) != self.regions:
                raise InputError(f"{c.id}: expected {self.regions} repeat counts")

    @property
    def mode(self) -> str:
        return self.stencil.mode

    def __len__(self):
        return len(self.candidates)

    @cached_property
    def index(self) -> dict[str, int]:
        return {c.id: i for i, c in enumerate(self.candidates)}

    def by_id(self, cid: str) -> CharacterCandidate:
        try:
            return self.candidates[self.index[cid]]
        except KeyError:
            raise InputError(f"unknown candidate id {cid!r}") from None

    @cached_property
    def repeats(self) -> np.ndarray:
        """(n, P) matrix of t_ic."""
        return _int_matrix([c.repeats for c in self.candidates], self.regions)

    @cached_property
    def reductions(self) -> np.ndarray:
        """(n, P) matrix R_ic = t_ic * (n_i - cp)."""
        return _int_matrix([[t * (c.vsb - self.cp) for t in c.repeats] for c in self.candidates], self.regions)

    @cached_property
    def vsb_times(self) -> np.ndarray:
        """Per-region writing time with nothing on the stencil."""
        rows = [[t * c.vsb for t in c.repeats] for c in self.candidates]
        return _int_matrix(rows, self.regions).sum(axis=0)

    def with_candidates(self, candidates: Iterable[CharacterCandidate]) -> "Instance":
        return Instance(tuple(candidates), self.stencil, self.regions, self.cp)


def _int_matrix(rows, width) -> np.ndarray:
    """int64 matrix, or an object matrix of Python ints when values are huge."""
    if not rows:
        return np.zeros((0, width), dtype=np.int64)
    big = max(abs(v) for row in rows for v in row) if width else 0
    total = big * len(rows)
    return np.array(rows, dtype=np.int64 if total < 2**62 else object).reshape(len(rows), width)


@dataclass(frozen=True)
class Placement:
    """Selected ids mapped to (row, x) in 1D or (x, y) in 2D."""

    entries: Mapping[str, tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self, "entries", {k: (int(v[0]), int(v[1])) for k, v in self.entries.items()}
        )

    def __len__(self):
        return len(self.entries)

    @property
    def ids(self) -> set[str]:
        return set(self.entries)


@dataclass
class SolutionReport:
    region_times: tuple[int, ...]
    total: int
    selected: int
    seconds: float = 0.0
    stages: dict[str, int] = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)


def region_times(instance: Instance, mask: np.ndarray) -> np.ndarray:
    """Per-region times for a boolean selection mask over the candidates."""
    if len(instance) == 0:
        return np.zeros(instance.regions, dtype=np.int64)
    return instance.vsb_times - instance.reductions[mask].sum(axis=0)


def selection_mask(instance: Instance, selected: Iterable[str]) -> np.ndarray:
    mask = np.zeros(len(instance), dtype=bool)
    for cid in selected:
        if cid not in instance.index:
            raise InputError(f"unknown candidate id {cid!r}")
        mask[instance.index[cid]] = True
    return mask


def writing_time(instance: Instance, selected: Iterable[str]) -> SolutionReport:
    mask = selection_mask(instance, selected)
    times = region_times(instance, mask)
    return SolutionReport(
        region_times=tuple(int(t) for t in times),
        total=int(times.max()) if len(times) else 0,
        selected=int(mask.sum()),
    )


def pairwise_overlap(a: CharacterCandidate, b: CharacterCandidate, axis: str = "horizontal") -> int:
    """Shared blank when a sits left of (or below) b."""
    if axis == "horizontal":
        return min(a.sr, b.sl)
    if axis == "vertical":
        return min(a.st, b.sb)
    raise InputError(f"unknown axis {axis!r}")


def row_length(ordered: Sequence[CharacterCandidate]) -> int:
    if not ordered:
        return 0
    total = sum(c.w for c in ordered)
    for a, b in zip(ordered, ordered[1:]):
        total -= min(a.sr, b.sl)
    return total


def min_packing_length_symmetric(chars: Sequence[CharacterCandidate]) -> int:
    """Shortest row for uniform-width characters with symmetric blanks.

    n*M - sum(s) + max(s): each neighbour pair shares the smaller blank, and
    sorting blanks outward from the largest one lets every blank except the
    largest be shared once.
    """
    if not chars:
        return 0
    widths = {c.w for c in chars}
    if len(widths) != 1 or any(c.sl != c.sr for c in chars):
        raise InputError("requires uniform width and symmetric blanks")
    blanks = [c.sl for c in chars]
    return len(chars) * widths.pop() - sum(blanks) + max(blanks)


@dataclass(frozen=True)
class Violation:
    kind: str  # "outline", "overlap", "row"
    ids: tuple[str, ...]
    axis: str | None = None
    amount: int = 0


@dataclass(frozen=True)
class Legality:
    legal: bool
    violations: tuple[Violation, ...] = ()

    def __bool__(self):
        return self.legal


def _check_1d(instance: Instance, placement: Placement) -> list[Violation]:
    st = instance.stencil
    out = []
    rows: dict[int, list[tuple[int, str]]] = {}
    for cid, (k, x) in placement.entries.items():
        c = instance.by_id(cid)
        if not 0 <= k < st.rows:
            out.append(Violation("row", (cid,), None, k))
            continue
        if c.h > st.row_height:
            out.append(Violation("row", (cid,), "vertical", c.h - st.row_height))
        if x < 0 or x + c.w > st.width:
            out.append(Violation("outline", (cid,), "horizontal", max(-x, x + c.w - st.width)))
        rows.setdefault(k, []).append((x, cid))
    for members in rows.values():
        members.sort()
        for (xa, ia), (xb, ib) in zip(members, members[1:]):
            a, b = instance.by_id(ia), instance.by_id(ib)
            need = xa + a.w - min(a.sr, b.sl)
            if xb < need:
                out.append(Violation("overlap", (ia, ib), "horizontal", need - xb))
    return out


def _check_2d(instance: Instance, placement: Placement) -> list[Violation]:
    st = instance.stencil
    out = []
    items = []
    for cid, (x, y) in placement.entries.items():
        c = instance.by_id(cid)
        over = max(-x, -y, x + c.w - st.width, y + c.h - st.height)
        if over > 0:
            out.append(Violation("outline", (cid,), None, over))
        items.append((x, cid, c, y))
    items.sort(key=lambda t: (t[0], t[1]))
    # sweep in x: only footprints whose x-extents intersect can conflict
    for i, (xa, ia, a, ya) in enumerate(items):
        for xb, ib, b, yb in items[i + 1:]:
            if xb >= xa + a.w:
                break
            if _separated(xa, ya, a, xb, yb, b):
                continue
            pair = tuple(sorted((ia, ib)))
            out.append(Violation("overlap", pair, None, 0))
    return out


def _separated(xa, ya, a, xb, yb, b) -> bool:
    if xb >= xa + a.w - min(a.sr, b.sl) or xa >= xb + b.w - min(b.sr, a.sl):
        return True
    return yb >= ya + a.h - min(a.st, b.sb) or ya >= yb + b.h - min(b.st, a.sb)


def check_legal(instance: Instance, placement: Placement) -> Legality:
    for cid in placement.entries:
        if cid not in instance.index:
            raise InputError(f"unknown candidate id {cid!r}")
    if instance.mode == "1d":
        violations = _check_1d(instance, placement)
    else:
        violations = _check_2d(instance, placement)
    violations.sort(key=lambda v: (v.kind, v.ids))
    return Legality(not violations, tuple(violations))
