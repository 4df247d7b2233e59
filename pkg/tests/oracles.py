"""Brute-force references used by the tests. None of these import solver code."""
from __future__ import annotations

import itertools
from fractions import Fraction


def row_len(chars) -> int:
    """Length of a row laid out in the given order (chars: (w, sl, sr) tuples)."""
    if not chars:
        return 0
    total = sum(w for w, _, _ in chars)
    for (_, _, sr), (_, sl, _) in zip(chars, chars[1:]):
        total -= min(sr, sl)
    return total


def min_row_len(chars) -> int:
    return min(row_len(p) for p in itertools.permutations(chars)) if chars else 0


def insertion_family_min(chars) -> int:
    """Best length over all orders built by adding each char at the left or right end."""
    if not chars:
        return 0
    best = None
    for bits in itertools.product((0, 1), repeat=len(chars) - 1):
        row = [chars[0]]
        for c, b in zip(chars[1:], bits):
            row = row + [c] if b else [c] + row
        length = row_len(row)
        best = length if best is None else min(best, length)
    return best


def lp_by_vertices(c, A, b, ub):
    """max c.x s.t. A x <= b, 0 <= x <= ub by enumerating basic solutions in exact arithmetic.

    Returns (objective, x) as Fractions, or None when infeasible. Only for a
    handful of variables.
    """
    n = len(c)
    rows = [([Fraction(v) for v in r], Fraction(rhs)) for r, rhs in zip(A, b)]
    for j in range(n):
        e = [Fraction(0)] * n
        e[j] = Fraction(1)
        rows.append((e, Fraction(ub[j])))
        rows.append(([-v for v in e], Fraction(0)))
    best = None
    for basis in itertools.combinations(range(len(rows)), n):
        M = [list(rows[k][0]) + [rows[k][1]] for k in basis]
        x = _gauss(M, n)
        if x is None:
            continue
        if all(sum(a * xi for a, xi in zip(r, x)) <= rhs for r, rhs in rows):
            val = sum(Fraction(ci) * xi for ci, xi in zip(c, x))
            if best is None or val > best[0]:
                best = (val, x)
    return best


def _gauss(M, n):
    M = [row[:] for row in M]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col] / M[col][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [M[r][n] / M[r][r] for r in range(n)]


def ilp_by_enumeration(c, A, b):
    """max c.x over binary x with A x <= b; (value, x) or None."""
    best = None
    for x in itertools.product((0, 1), repeat=len(c)):
        if all(sum(a * xi for a, xi in zip(r, x)) <= rhs for r, rhs in zip(A, b)):
            val = sum(ci * xi for ci, xi in zip(c, x))
            if best is None or val > best[0]:
                best = (val, x)
    return best


def best_matching(weights):
    """Maximum total weight over all partial one-to-one assignments (rows <= cols)."""
    n, m = len(weights), len(weights[0]) if weights else 0
    best = 0
    for cols in itertools.permutations(range(m), n) if n <= m else []:
        best = max(best, sum(max(weights[i][j], 0) for i, j in enumerate(cols)))
    return best


def box_scan(points, lo, hi):
    return sorted(k for k, p in points.items() if all(l <= v <= h for v, l, h in zip(p, lo, hi)))


def subset_sum_exists(numbers, target) -> bool:
    sums = {0}
    for x in numbers:
        sums |= {s + x for s in sums if s + x <= target}
    return target in sums


def sat_by_enumeration(n, clauses) -> bool:
    for bits in itertools.product((0, 1), repeat=n):
        if all(any((lit > 0) == bool(bits[abs(lit) - 1]) for lit in cl) for cl in clauses):
            return True
    return False


def one_row_optimum(chars, width, vsb_total, reductions):
    """Exact single-region, single-row optimum by subsets and permutations.

    chars: list of (w, sl, sr); reductions parallel to chars. Tiny n only.
    """
    best = vsb_total
    n = len(chars)
    for r in range(1, n + 1):
        for sub in itertools.combinations(range(n), r):
            gain = sum(reductions[i] for i in sub)
            if vsb_total - gain >= best:
                continue
            if min_row_len([chars[i] for i in sub]) <= width:
                best = vsb_total - gain
    return best


def min_row_len_dp(chars) -> int:
    """Exact minimum over all orders by dynamic programming on (used set, last char)."""
    n = len(chars)
    if n == 0:
        return 0
    best = {(1 << i, i): chars[i][0] for i in range(n)}
    for mask in range(1, 1 << n):
        for last in range(n):
            cur = best.get((mask, last))
            if cur is None:
                continue
            for nxt in range(n):
                if mask >> nxt & 1:
                    continue
                key = (mask | 1 << nxt, nxt)
                val = cur + chars[nxt][0] - min(chars[last][2], chars[nxt][1])
                if val < best.get(key, val + 1):
                    best[key] = val
    full = (1 << n) - 1
    return min(best[full, i] for i in range(n))
