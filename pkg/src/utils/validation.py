"""Error types and argument checks shared by the statistics kernel, the
sequential engine, the Monte Carlo lab and the CLI.

Every public operation validates its inputs up front and raises one of the
errors below; the CLI maps them to exit code 2 (see decorators/errors.py).
"""

import math
from typing import Iterable, List

import numpy as np


class SeqDbelError(Exception):
    """Base class for every error raised by this package."""


class ArgumentError(SeqDbelError, ValueError):
    """An argument is out of range, non-finite or otherwise unusable."""


class MonitorStateError(SeqDbelError, RuntimeError):
    """A monitor was fed after it had already stopped."""


class ConfigurationError(SeqDbelError, KeyError):
    """A table, scenario or family lookup could not be satisfied."""

    def __str__(self) -> str:
        # KeyError quotes its argument; keep messages readable on stderr.
        return str(self.args[0]) if self.args else ""


def require_finite_values(values: Iterable[float], *, name: str = "z") -> np.ndarray:
    """Return ``values`` as a 1-D float64 array, rejecting NaN and +/-inf."""
    if not isinstance(values, (np.ndarray, list, tuple)):
        values = list(values)
    try:
        arr = np.asarray(values, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ArgumentError(f"{name} must contain real numbers: {exc}") from exc

    if arr.ndim != 1:
        raise ArgumentError(f"{name} must be one-dimensional, got shape {arr.shape}.")
    if not np.all(np.isfinite(arr)):
        raise ArgumentError(f"{name} contains NaN or infinite values.")
    return arr


def require_finite(value: float, *, name: str) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError) as exc:
        raise ArgumentError(f"{name} must be a real number.") from exc
    if not math.isfinite(value):
        raise ArgumentError(f"{name} must be finite, got {value}.")
    return value


def require_open_interval(value: float, lo: float, hi: float, *, name: str) -> float:
    value = require_finite(value, name=name)
    if not lo < value < hi:
        raise ArgumentError(f"{name} must lie in ({lo}, {hi}), got {value}.")
    return value


def require_int(value, *, name: str, minimum: int = None, maximum: int = None) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ArgumentError(f"{name} must be an integer, got {value!r}.")
    value = int(value)
    if minimum is not None and value < minimum:
        raise ArgumentError(f"{name} must be >= {minimum}, got {value}.")
    if maximum is not None and value > maximum:
        raise ArgumentError(f"{name} must be <= {maximum}, got {value}.")
    return value


def require_alphas(alphas: Iterable[float]) -> List[float]:
    """Significance levels for tabulation; alpha = 1 is allowed (minimum quantile)."""
    checked = []
    for alpha in alphas:
        alpha = require_finite(alpha, name="alpha")
        if not 0 < alpha <= 1:
            raise ArgumentError(f"alpha must lie in (0, 1], got {alpha}.")
        checked.append(alpha)
    if not checked:
        raise ArgumentError("at least one alpha is required.")
    return checked
