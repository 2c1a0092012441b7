"""Density-based empirical likelihood (DBEL) statistic for paired differences.

For a prefix z_1..z_n of differences the statistic is

    log V_n = min over m in [round(n^(0.5+delta)), min(round(n^(1-delta)), round(n/2))]
              of sum_j log[ m(2n - m - 1) / (n^2 * Delta_jm) ]

where Delta_jm is the symmetrised empirical mass of the window
(Z_(j-m), Z_(j+m)] built from the indicators of both z_i and -z_i, with order
statistic indices clamped to [1, n]. log V_n is pinned to 0 for n <= 3.

Window counts are kept as integers (scaled by 2n) until the final division so
the zero-replacement rule (Delta := 1/n) is an exact integer comparison.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Tuple

import numpy as np

from config import DEFAULT_DELTA
from utils.validation import (
    ArgumentError,
    require_finite_values,
    require_int,
    require_open_interval,
)

MIN_DBEL_N = 4


# ---------------------------
# Domain types
# ---------------------------

@dataclass(frozen=True, eq=False)
class DifferenceSample:
    """Differences z_i = x_i - y_i in the order they were observed."""
    z: np.ndarray

    def __post_init__(self):
        arr = require_finite_values(self.z, name="z")
        if arr.size < 1:
            raise ArgumentError("a difference sample needs at least one value.")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "z", arr)

    @classmethod
    def from_pairs(cls, x: Iterable[float], y: Iterable[float]) -> "DifferenceSample":
        x = require_finite_values(x, name="x")
        y = require_finite_values(y, name="y")
        if x.shape != y.shape:
            raise ArgumentError(f"x and y lengths differ ({x.size} vs {y.size}).")
        return cls(x - y)

    @property
    def n(self) -> int:
        return int(self.z.size)

    def prefix(self, n: int) -> "DifferenceSample":
        require_int(n, name="n", minimum=1, maximum=self.n)
        return DifferenceSample(self.z[:n])

    def negated(self) -> "DifferenceSample":
        return DifferenceSample(-self.z)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, DifferenceSample):
            return NotImplemented
        return np.array_equal(self.z, other.z)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class SortedDifferences:
    """Order statistics Z_(1) <= ... <= Z_(n) with a clamped 1-based accessor."""
    values: np.ndarray

    @classmethod
    def from_sample(cls, sample: DifferenceSample) -> "SortedDifferences":
        return cls(np.sort(sample.z))

    @classmethod
    def from_sorted(cls, values: np.ndarray) -> "SortedDifferences":
        return cls(np.asarray(values, dtype=np.float64))

    @property
    def n(self) -> int:
        return int(self.values.size)

    def order(self, r: int) -> float:
        """Z_(r), with Z_(r) = Z_(1) for r <= 1 and Z_(r) = Z_(n) for r >= n."""
        r = min(max(int(r), 1), self.n)
        return float(self.values[r - 1])

    def symmetric_counts(self) -> np.ndarray:
        """2n * (symmetrised empirical CDF) evaluated at every order statistic.

        Entry k is #{i : z_i <= Z_(k+1)} + #{i : -z_i <= Z_(k+1)}.
        """
        return _symmetric_counts(self.values)


@dataclass(frozen=True)
class MGrid:
    """Window widths m searched by the DBEL statistic for one n."""
    n: int
    delta: float
    lo: int
    hi: int

    @classmethod
    def for_n(cls, n: int, delta: float = DEFAULT_DELTA) -> "MGrid":
        n = require_int(n, name="n", minimum=1)
        delta = require_open_interval(delta, 0.0, 0.25, name="delta")
        # round() is round-half-to-even, the same rule R's round() applies.
        lo = round(n ** (0.5 + delta))
        hi = min(round(n ** (1.0 - delta)), round(n / 2))
        return cls(n=n, delta=delta, lo=lo, hi=hi)

    @property
    def members(self) -> Tuple[int, ...]:
        # lo > hi happens (n = 5 at delta = 0.1); the span is taken in either
        # direction, as R's lo:hi does.
        first, last = sorted((self.lo, self.hi))
        first = max(first, 1)
        last = min(last, self.n)
        return tuple(range(first, last + 1))


@dataclass(frozen=True)
class DbelEvaluation:
    n: int
    per_m: Tuple[Tuple[int, float], ...] = field(default_factory=tuple)
    m_star: Optional[int] = None
    log_vn: float = 0.0


# ---------------------------
# Window quantity
# ---------------------------

def _symmetric_counts(values: np.ndarray) -> np.ndarray:
    n = values.size
    le = np.searchsorted(values, values, side="right")
    # -z_i <= t  <=>  z_i >= -t
    neg_le = n - np.searchsorted(values, -values, side="left")
    return le + neg_le


def delta_jm_count(sorted_diffs: SortedDifferences, j: int, m: int) -> int:
    """Raw window count 2n * Delta_jm, before zero-replacement."""
    n = sorted_diffs.n
    if n < 1:
        raise ArgumentError("sorted differences are empty.")
    j = require_int(j, name="j", minimum=1, maximum=n)
    m = require_int(m, name="m", minimum=1, maximum=n)

    counts = sorted_diffs.symmetric_counts()
    upper = min(j + m, n)
    lower = max(j - m, 1)
    return int(counts[upper - 1] - counts[lower - 1])


def delta_jm(sorted_diffs: SortedDifferences, j: int, m: int) -> float:
    """Symmetrised empirical mass of the window (Z_(j-m), Z_(j+m)].

    An empty window (raw count exactly 0) is replaced by 1/n.
    """
    n = sorted_diffs.n
    raw = delta_jm_count(sorted_diffs, j, m)
    if raw == 0:
        return 1.0 / n
    return raw / (2 * n)


def likelihood_factor(n: int, m: int, delta_value):
    """Per-j factor m(2n - m - 1) / (n^2 Delta_jm)."""
    return m * (2 * n - m - 1) / (n * n * delta_value)


# ---------------------------
# Statistic
# ---------------------------

def _per_m_log_statistics(values: np.ndarray, ms: np.ndarray) -> np.ndarray:
    n = values.size
    counts = _symmetric_counts(values)
    j = np.arange(1, n + 1)
    upper = np.minimum(j[None, :] + ms[:, None], n) - 1
    lower = np.maximum(j[None, :] - ms[:, None], 1) - 1
    raw = counts[upper] - counts[lower]
    delta = np.where(raw == 0, 1.0 / n, raw / (2 * n))
    factors = likelihood_factor(n, ms[:, None], delta)
    return np.log(factors).sum(axis=1)


@lru_cache(maxsize=4096)
def _grid_array(n: int, delta: float) -> np.ndarray:
    ms = np.asarray(MGrid.for_n(n, delta).members, dtype=np.int64)
    ms.setflags(write=False)
    return ms


def log_vn_sorted(values: np.ndarray, delta: float = DEFAULT_DELTA) -> float:
    """log V_n for an already sorted float64 array. No validation; MC hot path."""
    n = values.size
    if n < MIN_DBEL_N:
        return 0.0
    ms = _grid_array(n, float(delta))
    return float(_per_m_log_statistics(values, ms).min())


def dbel_log_statistic(sample, delta: float = DEFAULT_DELTA) -> DbelEvaluation:
    """Evaluate log V_n on the whole sample, keeping the per-m detail."""
    if not isinstance(sample, DifferenceSample):
        sample = DifferenceSample(sample)
    delta = require_open_interval(delta, 0.0, 0.25, name="delta")

    n = sample.n
    if n < MIN_DBEL_N:
        return DbelEvaluation(n=n)

    ms = _grid_array(n, delta)
    stats = _per_m_log_statistics(np.sort(sample.z), ms)
    best = int(np.argmin(stats))
    return DbelEvaluation(
        n=n,
        per_m=tuple((int(m), float(s)) for m, s in zip(ms, stats)),
        m_star=int(ms[best]),
        log_vn=float(stats[best]),
    )


def dbel_trajectory(z, delta: float = DEFAULT_DELTA) -> np.ndarray:
    """log V_1 .. log V_N over the prefixes of ``z``.

    The sorted prefix is maintained by insertion instead of re-sorting.
    """
    z = np.asarray(z, dtype=np.float64)
    out = np.zeros(z.size)
    ordered = np.empty(0)
    for i, value in enumerate(z):
        ordered = np.insert(ordered, np.searchsorted(ordered, value, side="right"), value)
        out[i] = log_vn_sorted(ordered, delta)
    return out
