"""Seeded synthetic benchmark instances."""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..model import CharacterCandidate, Instance, InputError, StencilSpec

UM = 1000  # nanometres per micrometre


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    n: int = 1000
    regions: int = 1
    mode: str = "1d"
    width: float = 1000.0  # um
    height: float = 1000.0
    rows: int | None = 25
    row_height: float | None = 40.0
    w_range: tuple[float, float] = (15.0, 45.0)
    h_range: tuple[float, float] = (40.0, 40.0)
    blank_range: tuple[float, float] = (0.02, 0.15)  # fraction of the footprint, per side
    symmetric: bool = False
    vsb_range: tuple[int, int] = (5, 50)
    repeat_range: tuple[int, int] = (0, 1000)

    def validate(self):
        ranges = {"w_range": self.w_range, "h_range": self.h_range, "blank_range": self.blank_range,
                  "vsb_range": self.vsb_range, "repeat_range": self.repeat_range}
        for name, (lo, hi) in ranges.items():
            if lo > hi:
                raise InputError(f"{name}: lower bound above upper bound")
        if self.w_range[0] <= 0 or self.h_range[0] <= 0:
            raise InputError("character sizes must be positive")
        if self.blank_range[0] < 0 or self.blank_range[1] > 0.5:
            raise InputError("blank fractions must lie in [0, 0.5]")
        if self.vsb_range[0] < 1 or self.repeat_range[0] < 0:
            raise InputError("vsb shots must be >= 1 and repeats >= 0")
        if self.n < 0 or self.regions < 1:
            raise InputError("need n >= 0 and at least one region")
        if self.mode not in ("1d", "2d"):
            raise InputError(f"unknown mode {self.mode!r}")
        if self.mode == "1d" and self.h_range[1] > self.row_height:
            raise InputError("characters taller than a row")


_ROW_FAMILY = dict(mode="1d", rows=25, row_height=40.0, w_range=(15.0, 45.0), h_range=(40.0, 40.0))
_FREE_FAMILY = dict(mode="2d", rows=None, row_height=None, w_range=(20.0, 50.0), h_range=(20.0, 50.0))

PRESETS: dict[str, dict] = {
    "1T": dict(mode="1d", n=8, width=200.0, height=40.0, rows=1, row_height=40.0, w_range=(40.0, 40.0),
               h_range=(40.0, 40.0), blank_range=(0.05, 0.30), symmetric=True),
    "2T": dict(mode="2d", n=8, width=100.0, height=100.0, rows=None, row_height=None, w_range=(40.0, 40.0),
               h_range=(40.0, 40.0), blank_range=(0.05, 0.30)),
    "1D": dict(_ROW_FAMILY),
    "2D": dict(_FREE_FAMILY),
    "1M": dict(_ROW_FAMILY, regions=10),
    "2M": dict(_FREE_FAMILY, regions=10),
    "1M-large": dict(_ROW_FAMILY, regions=10, n=4000, width=2000.0, height=2000.0, rows=50),
    "2M-large": dict(_FREE_FAMILY, regions=10, n=4000, width=2000.0, height=2000.0),
}


def preset(name: str, seed: int = 0, **overrides) -> GenConfig:
    if name not in PRESETS:
        raise InputError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    return replace(GenConfig(seed=seed, **PRESETS[name]), **overrides)


def _nm(rng, lo, hi, size):
    return rng.integers(int(round(lo * UM)), int(round(hi * UM)) + 1, size=size)


def generate(config: GenConfig) -> Instance:
    config.validate()
    rng = np.random.default_rng(config.seed)
    n = config.n
    w = _nm(rng, *config.w_range, n)
    h = _nm(rng, *config.h_range, n)
    lo, hi = config.blank_range
    frac = rng.uniform(lo, hi, size=(n, 4))
    if config.symmetric:
        frac[:, 1] = frac[:, 0]
        frac[:, 3] = frac[:, 2]
    sl = np.floor(frac[:, 0] * w).astype(np.int64)
    sr = np.floor(frac[:, 1] * w).astype(np.int64)
    st = np.floor(frac[:, 2] * h).astype(np.int64)
    sb = np.floor(frac[:, 3] * h).astype(np.int64)
    if config.mode == "1d":
        st[:] = 0
        sb[:] = 0
    vsb = rng.integers(config.vsb_range[0], config.vsb_range[1] + 1, size=n)
    reps = rng.integers(config.repeat_range[0], config.repeat_range[1] + 1, size=(n, config.regions))
    digits = max(4, len(str(max(n - 1, 0))))
    cands = tuple(
        CharacterCandidate(f"c{i:0{digits}d}", int(w[i]), int(h[i]), int(sl[i]), int(sr[i]), int(st[i]),
                           int(sb[i]), int(vsb[i]), tuple(int(t) for t in reps[i]))
        for i in range(n)
    )
    if config.mode == "1d":
        stencil = StencilSpec(int(config.width * UM), int(config.height * UM), config.rows,
                              int(config.row_height * UM))
    else:
        stencil = StencilSpec(int(config.width * UM), int(config.height * UM))
    return Instance(cands, stencil, config.regions)
