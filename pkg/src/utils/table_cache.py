"""Thread-safe in-process cache of auto-tabulated critical values.

simulate and bootstrap tabulate any (N, alpha) the supplied tables lack. The
cache sits in front of that tabulation so one process never runs the same
Monte Carlo twice. Keys carry everything the value depends on: test, N,
alpha, reps, seed, delta, quantile method and null generator.
"""

from threading import Lock
from typing import Optional, Tuple

CacheKey = Tuple[str, int, float, int, int, Optional[float], str, str]

_critical_cache: dict = {}  # CacheKey -> critical value
_critical_lock = Lock()


def make_key(test, max_n, alpha, reps, seed, delta, quantile, null) -> CacheKey:
    return (
        getattr(test, "value", test),
        int(max_n),
        round(float(alpha), 10),
        int(reps),
        int(seed),
        None if delta is None else float(delta),
        quantile,
        null,
    )


def get_cached_critical(key: CacheKey) -> Optional[float]:
    """Return the cached critical value or None on a miss."""
    with _critical_lock:
        return _critical_cache.get(key)


def set_critical_cache(key: CacheKey, value: float) -> None:
    with _critical_lock:
        _critical_cache[key] = float(value)


def invalidate_critical_cache() -> None:
    with _critical_lock:
        _critical_cache.clear()
