"""Scenario files: the generating model of one power-study row.

A scenario file is TOML::

    name = "S1"
    max_n = 50            # or a list, expanded into one scenario per value
    alpha = 0.05
    [x]
    family = "normal"
    params = [0.0, 1.0]
    [y]
    family = "normal"
    params = [0.5, 1.0]

A catalog file holds several of these as ``[[scenario]]`` tables.
"""

import logging

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass
from pathlib import Path
from typing import List

import numpy as np

from lab.distributions import DistributionSpec, sample
from lab.rng import RngStream
from utils.validation import ConfigurationError, require_int, require_open_interval

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    x_dist: DistributionSpec
    y_dist: DistributionSpec
    max_n: int
    alpha: float = 0.05

    def __post_init__(self):
        object.__setattr__(self, "max_n", require_int(self.max_n, name="max_n", minimum=4))
        object.__setattr__(self, "alpha", require_open_interval(self.alpha, 0.0, 1.0, name="alpha"))

    def differences(self, stream: RngStream, count: int = None) -> np.ndarray:
        """z = x - y for ``count`` (default max_n) pairs; x is drawn before y."""
        count = self.max_n if count is None else count
        x = sample(self.x_dist, count, stream)
        y = sample(self.y_dist, count, stream)
        return x - y

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "x": self.x_dist.to_dict(),
            "y": self.y_dist.to_dict(),
            "max_n": self.max_n,
            "alpha": self.alpha,
        }


def scenarios_from_mapping(data: dict, *, source: str = "<mapping>") -> List[ScenarioSpec]:
    for key in ("x", "y", "max_n"):
        if key not in data:
            raise ConfigurationError(f"{source}: scenario is missing '{key}'.")

    x_dist = DistributionSpec.from_mapping(data["x"])
    y_dist = DistributionSpec.from_mapping(data["y"])
    name = str(data.get("name") or f"{x_dist.label} vs {y_dist.label}")
    alpha = data.get("alpha", 0.05)

    max_ns = data["max_n"] if isinstance(data["max_n"], list) else [data["max_n"]]
    expand = len(max_ns) > 1
    return [
        ScenarioSpec(
            name=f"{name}/N={n}" if expand else name,
            x_dist=x_dist,
            y_dist=y_dist,
            max_n=n,
            alpha=alpha,
        )
        for n in max_ns
    ]


def load_scenarios(path) -> List[ScenarioSpec]:
    """Load a scenario file, a catalog file, or every ``*.toml`` in a directory."""
    path = Path(path)
    if path.is_dir():
        found = []
        for child in sorted(path.glob("*.toml")):
            found.extend(load_scenarios(child))
        return found

    if not path.exists():
        raise FileNotFoundError(f"Scenario file not found at: {path}")

    try:
        with path.open("rb") as fh:
            data = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigurationError(f"{path}: not valid TOML ({exc}).") from exc

    entries = data["scenario"] if "scenario" in data else [data]
    scenarios = []
    for entry in entries:
        scenarios.extend(scenarios_from_mapping(entry, source=str(path)))
    logger.debug("loaded %d scenario(s) from %s", len(scenarios), path)
    return scenarios
