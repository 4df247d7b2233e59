"""Hardness constructions: 3SAT -> bounded subset sum -> single-row planning.

Numbers grow with the formula (one decimal digit per variable and two per
clause), so everything here uses Python integers.
"""
from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass
from typing import Sequence

from .model import CharacterCandidate, Instance, InputError, StencilSpec

SUBSET_SUM_CAP = 40
SAT_CAP = 20


@dataclass(frozen=True)
class ThreeSatInstance:
    n: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(int(v) for v in c) for c in self.clauses))
        seen = set()
        for c in self.clauses:
            if len(c) != 3:
                raise InputError(f"clause {c} must have three literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.n:
                    raise InputError(f"literal {lit} out of range")
                if -lit in c:
                    raise InputError(f"clause {c} contains a variable and its negation")
                seen.add(abs(lit))
        missing = set(range(1, self.n + 1)) - seen
        if missing:
            raise InputError(f"variables {sorted(missing)} appear in no clause")

    @property
    def m(self) -> int:
        return len(self.clauses)


@dataclass(frozen=True)
class BssInstance:
    numbers: tuple[int, ...]
    target: int

    def __post_init__(self):
        object.__setattr__(self, "numbers", tuple(int(x) for x in self.numbers))
        if any(x <= 0 for x in self.numbers) or self.target < 0:
            raise InputError("numbers must be positive and the target non-negative")

    def bounded(self) -> bool:
        if not self.numbers:
            return True
        top = max(self.numbers)
        return all(2 * x > top for x in self.numbers)


@dataclass(frozen=True)
class SatEncoding:
    bss: BssInstance
    labels: tuple[str, ...]  # t<i>, f<i>, c<j><l>, parallel to bss.numbers
    digits: int

    def decode(self, subset: Sequence[int]) -> tuple[int, ...]:
        """Truth assignment read off a chosen subset (t_i chosen -> y_i = 1)."""
        n = sum(1 for lab in self.labels if lab.startswith("t"))
        chosen = {self.labels[k] for k in subset}
        return tuple(int(f"t{i}" in chosen) for i in range(1, n + 1))

    def index(self, label: str) -> int:
        return self.labels.index(label)


def satisfies(sat: ThreeSatInstance, assignment: Sequence[int]) -> bool:
    return all(any((lit > 0) == bool(assignment[abs(lit) - 1]) for lit in c) for c in sat.clauses)


def sat_to_bss(sat: ThreeSatInstance) -> SatEncoding:
    n, m = sat.n, sat.m
    lead = 10 ** (n + 2 * m)

    def var_digit(i):
        return 10 ** (2 * m + n - i)

    def clause_digit(j):
        return 10 ** (2 * m - j)

    def slack_digit(j):
        return 10 ** (m - j)

    numbers, labels = [], []
    for i in range(1, n + 1):
        for name, lit in (("t", i), ("f", -i)):
            x = lead + var_digit(i)
            for j, c in enumerate(sat.clauses, start=1):
                if lit in c:
                    x += clause_digit(j)
            numbers.append(x)
            labels.append(f"{name}{i}")
    for j in range(1, m + 1):
        for l in (1, 2, 3):
            numbers.append(lead + l * clause_digit(j) + slack_digit(j))
            labels.append(f"c{j}{l}")
    target = (n + m) * lead
    target += sum(var_digit(i) for i in range(1, n + 1))
    target += sum(4 * clause_digit(j) + slack_digit(j) for j in range(1, m + 1))
    return SatEncoding(BssInstance(tuple(numbers), target), tuple(labels), n + 2 * m + 1)


def assignment_subset(sat: ThreeSatInstance, enc: SatEncoding, assignment: Sequence[int]) -> list[int]:
    """The subset that the satisfying `assignment` maps to."""
    out = [enc.index(("t" if assignment[i - 1] else "f") + str(i)) for i in range(1, sat.n + 1)]
    for j, c in enumerate(sat.clauses, start=1):
        true_lits = sum((lit > 0) == bool(assignment[abs(lit) - 1]) for lit in set(c))
        if not 1 <= true_lits <= 3:
            raise InputError(f"clause {j} is not satisfied")
        out.append(enc.index(f"c{j}{4 - true_lits}"))
    return sorted(out)


def column_sums(enc: SatEncoding) -> list[int]:
    """Digit sums of every non-leading column over all numbers."""
    sums = [0] * (enc.digits - 1)
    for x in enc.bss.numbers:
        body = str(x)[1:]
        for k, d in enumerate(body):
            sums[k] += int(d)
    return sums


def bss_to_1dosp(bss: BssInstance) -> Instance:
    """Single-row instance whose best writing time is sum(x) - s exactly when
    some subset of the numbers sums to s."""
    if not bss.numbers:
        raise InputError("need at least one number")
    if not bss.bounded():
        raise InputError("every number must exceed half of the largest")
    M = max(bss.numbers)
    low = min(bss.numbers)
    total = sum(bss.numbers)
    chars = [CharacterCandidate("c0", M, 1, M - low, M - low, 0, 0, total, (1,))]
    for k, x in enumerate(bss.numbers, start=1):
        chars.append(CharacterCandidate(f"c{k}", M, 1, M - x, M - x, 0, 0, x, (1,)))
    return Instance(tuple(chars), StencilSpec(M + bss.target, 1, 1, 1), 1, cp=0)


def _subset_sums(items):
    """All (weight, value, mask) over subsets of items."""
    out = [(0, 0, 0)]
    for k, (w, v) in enumerate(items):
        bit = 1 << k
        out += [(a + w, b + v, mask | bit) for a, b, mask in out]
    return out


def brute_force_subset_sum(bss: BssInstance, cap: int = SUBSET_SUM_CAP) -> list[int] | None:
    """Indices of numbers summing to the target, found by meet in the middle."""
    n = len(bss.numbers)
    if n > cap:
        raise InputError(f"refusing subset-sum enumeration over {n} > {cap} numbers")
    half = n // 2
    left = _subset_sums([(x, 0) for x in bss.numbers[:half]])
    right = _subset_sums([(x, 0) for x in bss.numbers[half:]])
    seen = {}
    for w, _, mask in left:
        seen.setdefault(w, mask)
    for w, _, mask in right:
        lm = seen.get(bss.target - w)
        if lm is not None:
            full = lm | (mask << half)
            return [k for k in range(n) if full >> k & 1]
    return None


def brute_force_3sat(sat: ThreeSatInstance, cap: int = SAT_CAP) -> tuple[int, ...] | None:
    if sat.n > cap:
        raise InputError(f"refusing 2^{sat.n} enumeration (cap {cap})")
    for bits in itertools.product((0, 1), repeat=sat.n):
        if satisfies(sat, bits):
            return bits
    return None


def _knapsack(items, cap):
    """Best (value, mask) with total weight <= cap, by meet in the middle."""
    half = len(items) // 2
    left = _subset_sums(items[:half])
    right = sorted(_subset_sums(items[half:]), key=lambda t: (t[0], -t[1]))
    weights = [w for w, _, _ in right]
    best_prefix = []
    cur = None
    for w, v, mask in right:
        if cur is None or v > cur[0]:
            cur = (v, mask)
        best_prefix.append(cur)
    best = None
    for w, v, mask in left:
        k = bisect.bisect_right(weights, cap - w) - 1
        if k < 0:
            continue
        rv, rmask = best_prefix[k]
        cand = (v + rv, mask | (rmask << half))
        if best is None or cand[0] > best[0]:
            best = cand
    return best


def optimal_symmetric_row(instance: Instance) -> tuple[int, list[str]]:
    """Exact best writing time for one row of uniform-width symmetric characters.

    The largest blank among the chosen characters is the only one not
    shared, so fixing that character turns the row into a knapsack over the
    characters with smaller blanks.
    """
    st = instance.stencil
    cands = instance.candidates
    if instance.mode != "1d" or st.rows != 1 or instance.regions != 1:
        raise InputError("needs a single-row, single-region instance")
    if len({c.w for c in cands}) > 1 or any(c.sl != c.sr for c in cands):
        raise InputError("needs uniform widths and symmetric blanks")
    base = int(instance.vsb_times[0])
    if not cands:
        return base, []
    M, W = cands[0].w, st.width
    if M > W or cands[0].h > st.row_height:
        return base, []
    gain = [int(g) for g in instance.reductions[:, 0]]
    order = sorted(range(len(cands)), key=lambda i: (-cands[i].sl, i))
    best_gain, best_set = 0, []
    for pos, a in enumerate(order):
        later = order[pos + 1:]
        if gain[a] + sum(max(gain[i], 0) for i in later) <= best_gain:
            continue
        items = [(M - cands[i].sl, gain[i]) for i in later]
        found = _knapsack(items, W - M)
        value, mask = found if found else (0, 0)
        if gain[a] + value > best_gain:
            best_gain = gain[a] + value
            best_set = [a] + [later[k] for k in range(len(later)) if mask >> k & 1]
    return base - best_gain, sorted(cands[i].id for i in best_set)
