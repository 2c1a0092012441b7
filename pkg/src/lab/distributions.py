"""Parametric families used to generate paired data.

Parameterisations follow R's samplers: Gamma(shape, rate), LogNormal(meanlog,
sdlog), Exponential(rate), ChiSquare(df), Beta(a, b), Cauchy(location, scale),
Uniform(lo, hi), Normal(mean, sd).
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Tuple

import numpy as np

from lab.rng import RngStream
from utils.validation import ArgumentError, ConfigurationError, require_finite, require_int


class Family(str, Enum):
    NORMAL = "normal"
    LOGNORMAL = "lognormal"
    UNIFORM = "uniform"
    EXPONENTIAL = "exponential"
    GAMMA = "gamma"
    BETA = "beta"
    CHISQUARE = "chisquare"
    CAUCHY = "cauchy"


PARAMETER_NAMES: Dict[Family, Tuple[str, ...]] = {
    Family.NORMAL: ("mean", "sd"),
    Family.LOGNORMAL: ("meanlog", "sdlog"),
    Family.UNIFORM: ("lo", "hi"),
    Family.EXPONENTIAL: ("rate",),
    Family.GAMMA: ("shape", "rate"),
    Family.BETA: ("a", "b"),
    Family.CHISQUARE: ("df",),
    Family.CAUCHY: ("location", "scale"),
}

_POSITIVE = {"sd", "sdlog", "scale", "rate", "shape", "a", "b", "df"}

# R sampler names and short labels accepted when parsing
_ALIASES = {
    "norm": Family.NORMAL, "n": Family.NORMAL,
    "lnorm": Family.LOGNORMAL, "logn": Family.LOGNORMAL, "lognorm": Family.LOGNORMAL,
    "unif": Family.UNIFORM, "u": Family.UNIFORM,
    "exp": Family.EXPONENTIAL,
    "chisq": Family.CHISQUARE,
}

_LABELS = {
    Family.NORMAL: "N", Family.LOGNORMAL: "LogN", Family.UNIFORM: "U",
    Family.EXPONENTIAL: "Exp", Family.GAMMA: "Gamma", Family.BETA: "Beta",
    Family.CHISQUARE: "Chisq", Family.CAUCHY: "Cauchy",
}


def resolve_family(name) -> Family:
    if isinstance(name, Family):
        return name
    key = str(name).strip().lower()
    if key in _ALIASES:
        return _ALIASES[key]
    try:
        return Family(key)
    except ValueError:
        raise ConfigurationError(
            f"unknown distribution family {name!r}; expected one of {[f.value for f in Family]}"
        ) from None


@dataclass(frozen=True)
class DistributionSpec:
    family: Family
    params: Tuple[float, ...]

    def __post_init__(self):
        family = resolve_family(self.family)
        names = PARAMETER_NAMES[family]
        params = tuple(require_finite(p, name=f"{family.value} parameter") for p in self.params)
        if len(params) != len(names):
            raise ArgumentError(
                f"{family.value} takes {len(names)} parameters {names}, got {len(params)}."
            )
        for name, value in zip(names, params):
            if name in _POSITIVE and value <= 0:
                raise ArgumentError(f"{family.value} parameter {name} must be > 0, got {value}.")
        if family is Family.UNIFORM and not params[0] < params[1]:
            raise ArgumentError(f"uniform needs lo < hi, got {params}.")

        object.__setattr__(self, "family", family)
        object.__setattr__(self, "params", params)

    @classmethod
    def from_mapping(cls, data: dict) -> "DistributionSpec":
        """Build from ``{"family": ..., "params": [...] or {name: value}}``."""
        if "family" not in data:
            raise ConfigurationError("distribution is missing 'family'.")
        family = resolve_family(data["family"])
        params = data.get("params", [])
        if isinstance(params, dict):
            missing = [n for n in PARAMETER_NAMES[family] if n not in params]
            if missing:
                raise ConfigurationError(f"{family.value} is missing parameters {missing}.")
            params = [params[n] for n in PARAMETER_NAMES[family]]
        return cls(family, tuple(params))

    @classmethod
    def parse(cls, text: str) -> "DistributionSpec":
        """Parse the compact CLI form ``family:p1,p2`` (e.g. ``normal:0,1``)."""
        family, _, rest = str(text).partition(":")
        try:
            params = tuple(float(p) for p in rest.split(",") if p.strip())
        except ValueError:
            raise ArgumentError(f"cannot parse distribution {text!r}; use family:p1,p2") from None
        return cls(resolve_family(family), params)

    def to_dict(self) -> dict:
        return {"family": self.family.value, "params": list(self.params)}

    @property
    def label(self) -> str:
        return f"{_LABELS[self.family]}({','.join(f'{p:g}' for p in self.params)})"


STANDARD_NULLS = {
    "normal": DistributionSpec(Family.NORMAL, (0.0, 1.0)),
    "cauchy": DistributionSpec(Family.CAUCHY, (0.0, 1.0)),
    "uniform": DistributionSpec(Family.UNIFORM, (-1.0, 1.0)),
}


def draw(dist: DistributionSpec, count: int, rng: np.random.Generator) -> np.ndarray:
    p = dist.params
    family = dist.family
    if family is Family.NORMAL:
        return rng.normal(p[0], p[1], count)
    if family is Family.LOGNORMAL:
        return rng.lognormal(p[0], p[1], count)
    if family is Family.UNIFORM:
        return rng.uniform(p[0], p[1], count)
    if family is Family.EXPONENTIAL:
        return rng.exponential(1.0 / p[0], count)
    if family is Family.GAMMA:
        return rng.gamma(p[0], 1.0 / p[1], count)
    if family is Family.BETA:
        return rng.beta(p[0], p[1], count)
    if family is Family.CHISQUARE:
        return rng.chisquare(p[0], count)
    if family is Family.CAUCHY:
        return p[0] + p[1] * rng.standard_cauchy(count)
    raise ConfigurationError(f"no sampler for {family!r}")


def sample(dist: DistributionSpec, count: int, stream: RngStream) -> np.ndarray:
    """``count`` i.i.d. draws from ``dist`` using ``stream``."""
    count = require_int(count, name="count", minimum=0)
    return draw(dist, count, stream.generator)
