"""Resampling study on an observed set of paired differences.

For each maximum sample size N, every replication draws N differences from
the data (without replacement by default, i.e. a random subset of distinct
subjects in random order) and runs both sequential tests on them.
"""

import logging
import math
from dataclasses import dataclass
from functools import partial
from typing import Iterable, List

import numpy as np

from config import CHUNK_SIZE, WORKER_THREADS
from lab.pool import run_replications
from lab.power import policies_for
from lab.rng import RngStream, StreamPurpose
from sequential.engine import TestKind, resolve_test, stopping_time
from stats.dbel import DifferenceSample
from utils.validation import ArgumentError, require_int, require_open_interval

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BootstrapRow:
    max_n: int
    test: TestKind
    critical: float
    rejections: int
    total_stopped: int
    reps: int
    seed: int
    replacement: bool

    @property
    def rejection_rate(self) -> float:
        return self.rejections / self.reps

    @property
    def asn(self) -> float:
        return self.total_stopped / self.reps

    @property
    def se(self) -> float:
        p = self.rejection_rate
        return math.sqrt(p * (1.0 - p) / self.reps)

    def to_row(self) -> dict:
        return {
            "N": self.max_n,
            "test": self.test.value,
            "critical": self.critical,
            "rejection_rate": self.rejection_rate,
            "se": self.se,
            "asn": self.asn,
            "reps": self.reps,
            "seed": self.seed,
            "replacement": self.replacement,
        }


def _bootstrap_chunk(data, max_n, policies, seed, replacement, start, stop):
    out = np.empty((stop - start, 2 * len(policies)), dtype=np.int64)
    for row, index in enumerate(range(start, stop)):
        stream = RngStream.for_replication(seed, StreamPurpose.BOOTSTRAP, index, max_n)
        picks = stream.generator.choice(data.size, size=max_n, replace=replacement)
        z = data[picks]
        for k, policy in enumerate(policies):
            stopped_at, rejected = stopping_time(policy, z)
            out[row, 2 * k] = stopped_at
            out[row, 2 * k + 1] = int(rejected)
    return out


def bootstrap_study(
    data,
    n_list: Iterable[int],
    reps: int,
    tables,
    seed: int,
    *,
    alpha: float = 0.05,
    replacement: bool = False,
    tests: Iterable = (TestKind.DBEL, TestKind.SSRT),
    threads: int = WORKER_THREADS,
    chunk_size: int = CHUNK_SIZE,
) -> List[BootstrapRow]:
    """Rejection rate and ASN of each test for every N in ``n_list``."""
    if not isinstance(data, DifferenceSample):
        data = DifferenceSample(data)
    reps = require_int(reps, name="reps", minimum=1)
    alpha = require_open_interval(alpha, 0.0, 1.0, name="alpha")
    tests = [resolve_test(t) for t in tests]
    n_list = [require_int(n, name="N", minimum=1) for n in n_list]
    if not n_list:
        raise ArgumentError("n_list must name at least one N.")
    too_big = [n for n in n_list if n >= data.n]
    if too_big:
        raise ArgumentError(f"every N must be smaller than the data size {data.n}; got {too_big}.")

    rows = []
    for max_n in n_list:
        policies = policies_for(tables, tests, max_n, alpha)
        logger.info("bootstrap N=%d reps=%d seed=%d replacement=%s", max_n, reps, seed, replacement)

        task = partial(_bootstrap_chunk, data.z, max_n, tuple(policies), seed, replacement)
        results = run_replications(task, reps, threads=threads, chunk_size=chunk_size)
        for k, policy in enumerate(policies):
            rows.append(BootstrapRow(
                max_n=max_n,
                test=policy.test,
                critical=policy.critical,
                rejections=int(results[:, 2 * k + 1].sum()),
                total_stopped=int(results[:, 2 * k].sum()),
                reps=reps,
                seed=seed,
                replacement=replacement,
            ))
    return rows
