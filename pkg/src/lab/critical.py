"""Monte Carlo critical values for the sequential tests.

Under the symmetry null both stopping statistics are distribution-free, so the
upper alpha-percentile of DBTS_N = max_{n<=N} log V_n (or W_N = max_{n<=N} TS_n)
can be estimated from standard normal replications. Every replication draws
max(N) values once and records the running maximum at each requested N, so a
table over several N uses common random numbers and is monotone in N.
"""

import logging
from dataclasses import dataclass
from functools import partial
from typing import Iterable, List, Mapping, Optional, Tuple

import numpy as np

from config import CHUNK_SIZE, DEFAULT_DELTA, QUANTILE_METHOD, WORKER_THREADS
from lab.distributions import STANDARD_NULLS, draw
from lab.pool import run_replications
from lab.rng import RngStream, StreamPurpose
from sequential.engine import TestKind, resolve_test
from stats.dbel import dbel_trajectory
from stats.signed_rank import signed_rank_trajectory
from utils.table_cache import get_cached_critical, make_key, set_critical_cache
from utils.validation import (
    ArgumentError,
    ConfigurationError,
    require_alphas,
    require_int,
    require_open_interval,
)

logger = logging.getLogger(__name__)

QUANTILE_METHODS = ("order-statistic", "type7")

# numpy's names for the two estimators
_NUMPY_METHOD = {"order-statistic": "inverted_cdf", "type7": "linear"}


def alpha_key(alpha: float) -> float:
    return round(float(alpha), 10)


# ---------------------------
# Table
# ---------------------------

@dataclass(frozen=True)
class CriticalValueTable:
    test: TestKind
    entries: Mapping[Tuple[int, float], float]
    reps: int
    seed: int
    delta: Optional[float] = None
    quantile: str = QUANTILE_METHOD
    null: str = "normal"

    def __post_init__(self):
        object.__setattr__(self, "test", resolve_test(self.test))
        object.__setattr__(
            self,
            "entries",
            {(int(n), alpha_key(a)): float(v) for (n, a), v in dict(self.entries).items()},
        )
        if self.test is TestKind.SSRT:
            object.__setattr__(self, "delta", None)

    def critical(self, max_n: int, alpha: float) -> float:
        key = (int(max_n), alpha_key(alpha))
        if key not in self.entries:
            raise ConfigurationError(
                f"{self.test.value} table has no critical value for N={max_n}, alpha={alpha}."
            )
        return self.entries[key]

    def has(self, max_n: int, alpha: float) -> bool:
        return (int(max_n), alpha_key(alpha)) in self.entries

    @property
    def ns(self) -> List[int]:
        return sorted({n for n, _ in self.entries})

    @property
    def alphas(self) -> List[float]:
        return sorted({a for _, a in self.entries})

    def rows(self) -> List[Tuple[int, float, float]]:
        return [(n, a, self.entries[(n, a)]) for n, a in sorted(self.entries)]

    def merged(self, other: "CriticalValueTable") -> "CriticalValueTable":
        """Entries of both tables; ``other`` wins on overlap."""
        if other.test is not self.test:
            raise ArgumentError(f"cannot merge a {other.test.value} table into a {self.test.value} table.")
        return CriticalValueTable(
            test=self.test,
            entries={**self.entries, **other.entries},
            reps=self.reps,
            seed=self.seed,
            delta=self.delta,
            quantile=self.quantile,
            null=self.null,
        )

    def monotonicity_violations(self) -> List[str]:
        """Breaches of: non-increasing in alpha for fixed N, non-decreasing in N for fixed alpha."""
        problems = []
        for n in self.ns:
            values = [self.entries[(n, a)] for a in self.alphas if (n, a) in self.entries]
            for lo, hi in zip(values, values[1:]):
                if hi > lo:
                    problems.append(f"N={n}: critical value increases with alpha ({lo} -> {hi})")
        for a in self.alphas:
            values = [self.entries[(n, a)] for n in self.ns if (n, a) in self.entries]
            for lo, hi in zip(values, values[1:]):
                if hi < lo:
                    problems.append(f"alpha={a}: critical value decreases with N ({lo} -> {hi})")
        return problems


# ---------------------------
# Quantiles
# ---------------------------

def empirical_quantile(values: np.ndarray, alpha: float, method: str = QUANTILE_METHOD) -> float:
    """Upper alpha-percentile of ``values``.

    ``order-statistic`` returns the ceil((1 - alpha) * reps)-th order statistic;
    ``type7`` interpolates like R's quantile() default. alpha = 1 gives the minimum.
    """
    if method not in _NUMPY_METHOD:
        raise ArgumentError(f"quantile method must be one of {QUANTILE_METHODS}, got {method!r}.")
    return float(np.quantile(values, 1.0 - alpha, method=_NUMPY_METHOD[method]))


# ---------------------------
# Tabulation
# ---------------------------

def max_statistic_path(test: TestKind, z: np.ndarray, delta: float) -> np.ndarray:
    """Running maximum of the statistic over n = 1..len(z)."""
    if test is TestKind.DBEL:
        path = dbel_trajectory(z, delta)
    else:
        path = signed_rank_trajectory(z)
    return np.maximum.accumulate(path)


def _tabulate_chunk(test, ns, seed, delta, null_dist, start, stop):
    max_n = max(ns)
    columns = np.asarray(ns) - 1
    out = np.empty((stop - start, len(ns)))
    for row, index in enumerate(range(start, stop)):
        stream = RngStream.for_replication(seed, StreamPurpose.TABULATE, index)
        z = draw(null_dist, max_n, stream.generator)
        out[row] = max_statistic_path(test, z, delta)[columns]
    return out


def simulate_max_statistics(
    test,
    ns: Iterable[int],
    reps: int,
    seed: int,
    delta: float = DEFAULT_DELTA,
    *,
    null: str = "normal",
    threads: int = WORKER_THREADS,
    chunk_size: int = CHUNK_SIZE,
) -> np.ndarray:
    """Array of shape (reps, len(ns)) with max_{n<=N} statistic per replication."""
    test = resolve_test(test)
    ns = sorted({require_int(n, name="N", minimum=1) for n in ns})
    if not ns:
        raise ArgumentError("at least one N is required.")
    delta = require_open_interval(delta, 0.0, 0.25, name="delta")
    if null not in STANDARD_NULLS:
        raise ArgumentError(f"null generator must be one of {sorted(STANDARD_NULLS)}, got {null!r}.")

    task = partial(_tabulate_chunk, test, tuple(ns), seed, delta, STANDARD_NULLS[null])
    return run_replications(task, reps, threads=threads, chunk_size=chunk_size)


def tabulate_table(
    test,
    ns: Iterable[int],
    alphas: Iterable[float],
    reps: int,
    seed: int,
    delta: float = DEFAULT_DELTA,
    *,
    quantile: str = QUANTILE_METHOD,
    null: str = "normal",
    threads: int = WORKER_THREADS,
    chunk_size: int = CHUNK_SIZE,
) -> CriticalValueTable:
    """Critical values for every (N, alpha) from one common set of replications."""
    test = resolve_test(test)
    reps = require_int(reps, name="reps", minimum=1)
    alphas = require_alphas(alphas)
    ns = sorted({require_int(n, name="N", minimum=1) for n in ns})
    if quantile not in QUANTILE_METHODS:
        raise ArgumentError(f"quantile method must be one of {QUANTILE_METHODS}, got {quantile!r}.")

    logger.info("tabulating %s N=%s alphas=%s reps=%d seed=%d null=%s",
                test.value, ns, alphas, reps, seed, null)
    maxima = simulate_max_statistics(
        test, ns, reps, seed, delta, null=null, threads=threads, chunk_size=chunk_size
    )

    entries = {}
    for col, n in enumerate(ns):
        for alpha in alphas:
            entries[(n, alpha)] = empirical_quantile(maxima[:, col], alpha, quantile)

    return CriticalValueTable(
        test=test,
        entries=entries,
        reps=reps,
        seed=seed,
        delta=delta if test is TestKind.DBEL else None,
        quantile=quantile,
        null=null,
    )


def tabulate_critical(
    test,
    N: int,
    alphas: Iterable[float],
    reps: int,
    seed: int,
    delta: float = DEFAULT_DELTA,
    **kwargs,
) -> CriticalValueTable:
    """One table row: critical values at a single maximum sample size N."""
    return tabulate_table(test, [N], alphas, reps, seed, delta, **kwargs)


def null_rejection_rate(maxima: np.ndarray, critical: float) -> float:
    """Fraction of replications whose max statistic reaches ``critical``."""
    return float(np.mean(maxima >= critical))


# ---------------------------
# Supplied tables + auto-tabulation
# ---------------------------

def resolve_table(
    test,
    required: Iterable[Tuple[int, float]],
    supplied: Optional[CriticalValueTable] = None,
    *,
    reps: int,
    seed: int,
    delta: float = DEFAULT_DELTA,
    quantile: str = QUANTILE_METHOD,
    null: str = "normal",
    threads: int = WORKER_THREADS,
) -> CriticalValueTable:
    """A table covering every required (N, alpha).

    Entries come from ``supplied`` when present; the rest are served from the
    in-process cache or tabulated (one common-random-number run for all
    missing N).
    """
    test = resolve_test(test)
    required = sorted({(int(n), alpha_key(a)) for n, a in required})
    if supplied is not None and supplied.test is not test:
        raise ConfigurationError(f"expected a {test.value} table, got a {supplied.test.value} table.")
    table_delta = delta if test is TestKind.DBEL else None

    entries = {}
    missing = []
    for n, alpha in required:
        if supplied is not None and supplied.has(n, alpha):
            entries[(n, alpha)] = supplied.critical(n, alpha)
            continue
        cached = get_cached_critical(make_key(test, n, alpha, reps, seed, table_delta, quantile, null))
        if cached is not None:
            entries[(n, alpha)] = cached
        else:
            missing.append((n, alpha))

    if missing:
        logger.info("auto-tabulating %d missing %s critical value(s)", len(missing), test.value)
        fresh = tabulate_table(
            test,
            [n for n, _ in missing],
            sorted({a for _, a in missing}),
            reps,
            seed,
            delta,
            quantile=quantile,
            null=null,
            threads=threads,
        )
        for n, alpha, value in fresh.rows():
            set_critical_cache(make_key(test, n, alpha, reps, seed, table_delta, quantile, null), value)
            if (n, alpha) in missing:
                entries[(n, alpha)] = value

    base = supplied
    return CriticalValueTable(
        test=test,
        entries=entries,
        reps=base.reps if base is not None else reps,
        seed=base.seed if base is not None else seed,
        delta=(base.delta if base is not None else table_delta),
        quantile=base.quantile if base is not None else quantile,
        null=base.null if base is not None else null,
    )
