"""
Tests for power/ASN studies (lab/power.py).

Covers:
- result bookkeeping (power, ASN, standard error, row output)
- both tests see the same replications
- thread invariance and seed reproducibility
- missing tables
- ASN falls as the location shift grows
"""

import pytest

from lab.critical import CriticalValueTable
from lab.distributions import DistributionSpec
from lab.power import policies_for, power_study
from lab.scenario import ScenarioSpec
from sequential.engine import TestKind
from utils.validation import ArgumentError, ConfigurationError


def shift_scenario(max_n=15, shift=1.0):
    return ScenarioSpec(
        "shift",
        DistributionSpec("normal", (shift, 1.0)),
        DistributionSpec("normal", (0.0, 1.0)),
        max_n=max_n,
    )


def test_power_result_fields(dbel_table, ssrt_table):
    results = power_study(shift_scenario(), [dbel_table, ssrt_table], reps=40, seed=3, threads=1)

    assert set(results) == {TestKind.DBEL, TestKind.SSRT}
    for result in results.values():
        assert 0.0 <= result.power <= 1.0
        assert 1.0 <= result.asn <= 15
        assert result.power * result.reps == result.rejections
        row = result.to_row()
        assert row["max_n"] == 15
        assert row["seed"] == 3
        assert row["se"] == pytest.approx((result.power * (1 - result.power) / 40) ** 0.5)


def test_large_shift_has_high_power(ssrt_table):
    result = power_study(shift_scenario(shift=3.0), ssrt_table, reps=50, seed=1,
                         tests=["ssrt"], threads=1)[TestKind.SSRT]
    assert result.power > 0.9
    assert result.asn < 15


def test_never_rejecting_policy_has_asn_max_n():
    table = CriticalValueTable(test="ssrt", entries={(15, 0.05): 1e9}, reps=1, seed=1)
    result = power_study(shift_scenario(), table, reps=20, seed=1, tests=["ssrt"], threads=1)[TestKind.SSRT]
    assert result.power == 0.0
    assert result.asn == 15.0


def test_reproducible_and_thread_invariant(dbel_table, ssrt_table):
    tables = {TestKind.DBEL: dbel_table, TestKind.SSRT: ssrt_table}
    one = power_study(shift_scenario(), tables, reps=30, seed=8, threads=1, chunk_size=4)
    two = power_study(shift_scenario(), tables, reps=30, seed=8, threads=2, chunk_size=4)
    assert one == two


def test_missing_table(dbel_table):
    with pytest.raises(ConfigurationError):
        power_study(shift_scenario(), dbel_table, reps=10, seed=1, threads=1)
    with pytest.raises(ConfigurationError):
        policies_for([dbel_table], [TestKind.DBEL], 40, 0.05)


def test_reps_must_be_positive(dbel_table):
    with pytest.raises(ArgumentError):
        power_study(shift_scenario(), dbel_table, reps=0, seed=1, tests=["dbel"])


def test_asn_decreases_with_shift(dbel_table, ssrt_table):
    tables = [dbel_table, ssrt_table]
    asn = {TestKind.DBEL: [], TestKind.SSRT: []}
    for shift in (0.25, 0.5, 1.0):
        results = power_study(shift_scenario(max_n=25, shift=shift), tables, reps=300, seed=12, threads=1)
        for test, result in results.items():
            asn[test].append(result.asn)

    for test, values in asn.items():
        assert values[0] > values[1] > values[2], (test, values)
