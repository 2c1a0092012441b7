"""Wilcoxon signed-rank statistic used by the sequential signed-rank test (SSRT)."""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from stats.dbel import DifferenceSample

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SignedRankEvaluation:
    n: int
    sr: float
    ts: float
    has_ties: bool = False


def signed_rank_moments(n: int):
    """Null mean and variance of SR_n: n(n+1)/4 and n(n+1)(2n+1)/24."""
    return n * (n + 1) / 4.0, n * (n + 1) * (2 * n + 1) / 24.0


def _sr_and_ties(z: np.ndarray):
    magnitudes = np.abs(z)
    ranks = rankdata(magnitudes, method="average")
    # Zero differences count as nonnegative: I(z_i >= 0).
    sr = float(ranks[z >= 0].sum())
    has_ties = np.unique(magnitudes).size < magnitudes.size
    return sr, has_ties


def standardized(sr: float, n: int) -> float:
    mean, var = signed_rank_moments(n)
    return abs(sr - mean) / math.sqrt(var)


def signed_rank_ts(z: np.ndarray) -> float:
    """TS_n for a float64 array. No validation; MC hot path."""
    sr, _ = _sr_and_ties(z)
    return standardized(sr, z.size)


def signed_rank_statistic(sample) -> SignedRankEvaluation:
    """SR_n with midranks for tied |z|, and its standardised form TS_n."""
    if not isinstance(sample, DifferenceSample):
        sample = DifferenceSample(sample)

    sr, has_ties = _sr_and_ties(sample.z)
    if has_ties:
        logger.debug("tied |z| among %d differences; using midranks", sample.n)

    return SignedRankEvaluation(
        n=sample.n,
        sr=sr,
        ts=standardized(sr, sample.n),
        has_ties=has_ties,
    )


def signed_rank_trajectory(z) -> np.ndarray:
    """TS_1 .. TS_N over the prefixes of ``z``."""
    z = np.asarray(z, dtype=np.float64)
    return np.array([signed_rank_ts(z[:n]) for n in range(1, z.size + 1)])
