"""Power and average sample number (ASN) of the sequential tests.

Each replication draws max_n pairs (x, y) from the scenario, forms z = x - y
and runs every requested test on the same z. Power is the rejection fraction,
ASN the mean stopping sample size.
"""

import logging
import math
from dataclasses import dataclass
from functools import partial
from typing import Dict, Iterable, Mapping, Sequence

import numpy as np

from config import CHUNK_SIZE, WORKER_THREADS
from lab.critical import CriticalValueTable
from lab.pool import run_replications
from lab.rng import RngStream, StreamPurpose
from lab.scenario import ScenarioSpec
from sequential.engine import StoppingPolicy, TestKind, resolve_test, stopping_time
from utils.validation import ConfigurationError, require_int

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PowerResult:
    scenario: ScenarioSpec
    test: TestKind
    critical: float
    rejections: int
    total_stopped: int
    reps: int
    seed: int

    @property
    def power(self) -> float:
        return self.rejections / self.reps

    @property
    def asn(self) -> float:
        return self.total_stopped / self.reps

    @property
    def se(self) -> float:
        """Monte Carlo standard error of the power estimate."""
        p = self.power
        return math.sqrt(p * (1.0 - p) / self.reps)

    def to_row(self) -> dict:
        return {
            "scenario": self.scenario.name,
            "x": self.scenario.x_dist.label,
            "y": self.scenario.y_dist.label,
            "test": self.test.value,
            "max_n": self.scenario.max_n,
            "alpha": self.scenario.alpha,
            "critical": self.critical,
            "power": self.power,
            "se": self.se,
            "asn": self.asn,
            "reps": self.reps,
            "seed": self.seed,
        }


def _index_tables(tables) -> Dict[TestKind, CriticalValueTable]:
    if isinstance(tables, CriticalValueTable):
        tables = [tables]
    elif isinstance(tables, Mapping):
        tables = list(tables.values())
    return {t.test: t for t in tables}


def policies_for(tables, tests: Sequence[TestKind], max_n: int, alpha: float):
    """One StoppingPolicy per test, critical values looked up in ``tables``."""
    indexed = _index_tables(tables)
    policies = []
    for test in tests:
        table = indexed.get(test)
        if table is None:
            raise ConfigurationError(f"no {test.value} critical-value table was supplied.")
        policies.append(StoppingPolicy.from_table(table, max_n, alpha))
    return policies


def _power_chunk(scenario, policies, seed, start, stop):
    # columns: stopped_at, rejected for each policy in turn
    out = np.empty((stop - start, 2 * len(policies)), dtype=np.int64)
    for row, index in enumerate(range(start, stop)):
        stream = RngStream.for_replication(seed, StreamPurpose.POWER, index)
        z = scenario.differences(stream)
        for k, policy in enumerate(policies):
            stopped_at, rejected = stopping_time(policy, z)
            out[row, 2 * k] = stopped_at
            out[row, 2 * k + 1] = int(rejected)
    return out


def power_study(
    scenario: ScenarioSpec,
    tables,
    reps: int,
    seed: int,
    *,
    tests: Iterable = (TestKind.DBEL, TestKind.SSRT),
    threads: int = WORKER_THREADS,
    chunk_size: int = CHUNK_SIZE,
) -> Dict[TestKind, PowerResult]:
    """Monte Carlo power and ASN of each test under ``scenario``."""
    reps = require_int(reps, name="reps", minimum=1)
    tests = [resolve_test(t) for t in tests]
    policies = policies_for(tables, tests, scenario.max_n, scenario.alpha)

    logger.info("power study %s N=%d reps=%d seed=%d tests=%s",
                scenario.name, scenario.max_n, reps, seed, [t.value for t in tests])
    task = partial(_power_chunk, scenario, tuple(policies), seed)
    results = run_replications(task, reps, threads=threads, chunk_size=chunk_size)

    return {
        policy.test: PowerResult(
            scenario=scenario,
            test=policy.test,
            critical=policy.critical,
            rejections=int(results[:, 2 * k + 1].sum()),
            total_stopped=int(results[:, 2 * k].sum()),
            reps=reps,
            seed=seed,
        )
        for k, policy in enumerate(policies)
    }
