"""Deliberately naive reference computation of log V_n.

Re-sorts on every call, evaluates every indicator with explicit loops and
shares nothing with stats.dbel except the argument checks. Tests compare the
vectorised statistic against it.
"""

import math

from config import DEFAULT_DELTA
from utils.validation import require_finite_values, require_open_interval


def _order(sorted_z, r):
    n = len(sorted_z)
    if r <= 1:
        return sorted_z[0]
    if r >= n:
        return sorted_z[n - 1]
    return sorted_z[r - 1]


def oracle_dbel(sample, delta: float = DEFAULT_DELTA) -> float:
    z = [float(v) for v in require_finite_values(getattr(sample, "z", sample))]
    delta = require_open_interval(delta, 0.0, 0.25, name="delta")

    n = len(z)
    if n <= 3:
        return 0.0

    sorted_z = sorted(z)
    lo = round(n ** (0.5 + delta))
    hi = min(round(n ** (1.0 - delta)), round(n / 2))
    if lo > hi:
        lo, hi = hi, lo

    best = None
    for m in range(lo, hi + 1):
        total = 0.0
        for j in range(1, n + 1):
            upper = _order(sorted_z, j + m)
            lower = _order(sorted_z, j - m)
            count = 0
            for i in range(n):
                if z[i] <= upper:
                    count += 1
                if -z[i] <= upper:
                    count += 1
                if z[i] <= lower:
                    count -= 1
                if -z[i] <= lower:
                    count -= 1
            if count == 0:
                window = 1.0 / n
            else:
                window = count / (2 * n)
            total += math.log(m * (2 * n - m - 1) / (n * n * window))
        if best is None or total < best:
            best = total
    return best
