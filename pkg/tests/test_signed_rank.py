"""
Tests for the signed-rank statistic (stats/signed_rank.py).

Covers:
- hand-computed SR_n / TS_n values
- zero differences counted as nonnegative
- midranks and the tie flag
- prefix trajectory
- null mean and variance of SR_n
- invariance under odd monotone maps of z
"""

import math

import numpy as np
import pytest

from stats.signed_rank import (
    signed_rank_moments,
    signed_rank_statistic,
    signed_rank_trajectory,
)
from utils.validation import ArgumentError


def test_all_positive_sample():
    evaluation = signed_rank_statistic([1.0, 2.0, 3.0, 4.0])
    assert evaluation.sr == 10.0
    assert evaluation.ts == pytest.approx(1.8257, abs=1e-4)
    assert evaluation.has_ties is False


def test_mixed_signs():
    evaluation = signed_rank_statistic([-1.0, 2.0])
    assert evaluation.sr == 2.0
    assert evaluation.ts == pytest.approx(0.4472, abs=1e-4)


def test_zero_counts_as_nonnegative():
    # |z| ranks: 0 -> 1, 2 -> 2, -3 -> 3
    assert signed_rank_statistic([0.0, 2.0, -3.0]).sr == 3.0


def test_ties_use_midranks_and_are_flagged():
    evaluation = signed_rank_statistic([1.0, -1.0, 2.0])
    # |z| = 1, 1, 2 -> ranks 1.5, 1.5, 3
    assert evaluation.sr == 4.5
    assert evaluation.has_ties is True


def test_sr_range_without_ties(rng):
    z = rng.normal(size=40)
    evaluation = signed_rank_statistic(z)
    assert 0 <= evaluation.sr <= 40 * 41 / 2
    assert evaluation.sr == int(evaluation.sr)


def test_ts_formula(rng):
    z = rng.normal(size=17)
    evaluation = signed_rank_statistic(z)
    mean, var = signed_rank_moments(17)
    assert evaluation.ts == pytest.approx(abs(evaluation.sr - mean) / math.sqrt(var))


def test_single_observation():
    evaluation = signed_rank_statistic([0.3])
    # SR = 1, mean 0.5, var 0.25
    assert evaluation.ts == pytest.approx(1.0)


def test_rejects_nan():
    with pytest.raises(ArgumentError):
        signed_rank_statistic([1.0, np.nan])


def test_trajectory_matches_prefixes(rng):
    z = rng.normal(size=12)
    path = signed_rank_trajectory(z)
    assert path.shape == (12,)
    for n in (1, 4, 12):
        assert path[n - 1] == pytest.approx(signed_rank_statistic(z[:n]).ts)


def test_null_moments_of_sr(rng):
    n = 10
    sr = np.array([signed_rank_statistic(rng.normal(size=n)).sr for _ in range(4000)])
    mean, var = signed_rank_moments(n)
    assert mean == 27.5
    assert var == pytest.approx(96.25)
    assert sr.mean() == pytest.approx(mean, abs=0.7)
    assert sr.var(ddof=1) == pytest.approx(var, abs=10)


def test_invariant_to_odd_monotone_map(rng):
    z = rng.normal(size=30)
    plain = signed_rank_statistic(z)
    cubed = signed_rank_statistic(z ** 3)
    assert cubed.sr == plain.sr
    assert cubed.ts == plain.ts
