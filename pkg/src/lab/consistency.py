"""Large-sample behaviour of the DBEL stopping statistic.

Estimates Pr{ max_{n<=N} log V_n > N^gamma } under a null and an alternative
generator of differences. The fraction should shrink towards 0 under the null
and grow towards 1 under the alternative as N increases.
"""

import logging
from dataclasses import dataclass
from functools import partial
from typing import Iterable, List

import numpy as np

from config import CHUNK_SIZE, DEFAULT_DELTA, WORKER_THREADS
from lab.distributions import DistributionSpec, draw
from lab.pool import run_replications
from lab.rng import RngStream, StreamPurpose
from stats.dbel import log_vn_sorted
from utils.validation import ArgumentError, require_int, require_open_interval

logger = logging.getLogger(__name__)

MIN_CONSISTENCY_REPS = 1000

# stream keys for the two generators
_NULL, _ALT = 0, 1


@dataclass(frozen=True)
class ConsistencyRow:
    max_n: int
    gamma: float
    threshold: float
    null_fraction: float
    alt_fraction: float
    reps: int
    seed: int = 0

    def to_row(self) -> dict:
        return {
            "N": self.max_n,
            "gamma": self.gamma,
            "threshold": self.threshold,
            "null_fraction": self.null_fraction,
            "alt_fraction": self.alt_fraction,
            "reps": self.reps,
            "seed": self.seed,
        }


def crosses(z: np.ndarray, threshold: float, delta: float) -> bool:
    """True if log V_n > threshold for some prefix of z (stops at the first crossing)."""
    ordered = np.empty(0)
    for value in z:
        ordered = np.insert(ordered, np.searchsorted(ordered, value, side="right"), value)
        if log_vn_sorted(ordered, delta) > threshold:
            return True
    return False


def _crossing_chunk(dist, max_n, threshold, delta, seed, which, start, stop):
    out = np.empty(stop - start, dtype=np.int64)
    for row, index in enumerate(range(start, stop)):
        stream = RngStream.for_replication(seed, StreamPurpose.CONSISTENCY, index, max_n, which)
        out[row] = crosses(draw(dist, max_n, stream.generator), threshold, delta)
    return out


def empirical_consistency_check(
    n_list: Iterable[int],
    gamma: float,
    reps: int,
    null_gen: DistributionSpec,
    alt_gen: DistributionSpec,
    *,
    seed: int = 0,
    delta: float = DEFAULT_DELTA,
    threads: int = WORKER_THREADS,
    chunk_size: int = CHUNK_SIZE,
) -> List[ConsistencyRow]:
    """Crossing fractions of the N^gamma threshold for each N under both generators."""
    gamma = require_open_interval(gamma, 0.75, 1.0, name="gamma")
    reps = require_int(reps, name="reps", minimum=MIN_CONSISTENCY_REPS)
    n_list = [require_int(n, name="N", minimum=4) for n in n_list]
    if not n_list:
        raise ArgumentError("n_list must name at least one N.")

    rows = []
    for max_n in n_list:
        threshold = max_n ** gamma
        fractions = []
        for which, dist in ((_NULL, null_gen), (_ALT, alt_gen)):
            task = partial(_crossing_chunk, dist, max_n, threshold, delta, seed, which)
            hits = run_replications(task, reps, threads=threads, chunk_size=chunk_size)
            fractions.append(float(hits.mean()))
        logger.info("consistency N=%d threshold=%.3f null=%.4f alt=%.4f",
                    max_n, threshold, fractions[0], fractions[1])
        rows.append(ConsistencyRow(
            max_n=max_n,
            gamma=gamma,
            threshold=threshold,
            null_fraction=fractions[0],
            alt_fraction=fractions[1],
            reps=reps,
            seed=seed,
        ))
    return rows
