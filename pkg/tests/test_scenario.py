"""
Tests for scenario files (lab/scenario.py) and the bundled catalog.

Covers:
- single-scenario and [[scenario]] catalog files
- max_n lists expanding into one scenario per N
- directory loading of the bundled catalog
- malformed and missing files
- z = x - y with x drawn before y
"""

import numpy as np
import pytest

from config import SCENARIO_DIR
from lab.distributions import DistributionSpec, sample
from lab.rng import RngStream
from lab.scenario import ScenarioSpec, load_scenarios
from utils.validation import ArgumentError, ConfigurationError


SINGLE = """
name = "S1"
max_n = 50
alpha = 0.05
[x]
family = "normal"
params = [0.0, 1.0]
[y]
family = "normal"
params = [0.5, 1.0]
"""


def test_single_scenario_file(tmp_path):
    path = tmp_path / "s1.toml"
    path.write_text(SINGLE)

    [scenario] = load_scenarios(path)
    assert scenario.name == "S1"
    assert scenario.max_n == 50
    assert scenario.x_dist == DistributionSpec("normal", (0.0, 1.0))
    assert scenario.y_dist.params == (0.5, 1.0)


def test_max_n_list_expands(tmp_path):
    path = tmp_path / "cat.toml"
    path.write_text(
        '[[scenario]]\nname = "A"\nmax_n = [25, 50]\n'
        'x = { family = "exponential", params = [1.0] }\n'
        'y = { family = "gamma", params = [2.0, 3.0] }\n'
    )
    scenarios = load_scenarios(path)
    assert [s.name for s in scenarios] == ["A/N=25", "A/N=50"]
    assert [s.max_n for s in scenarios] == [25, 50]
    assert all(s.alpha == 0.05 for s in scenarios)


def test_bundled_catalog_loads():
    scenarios = load_scenarios(SCENARIO_DIR)
    names = {s.name for s in scenarios}

    assert len(scenarios) == 3 * 24
    assert "S1 N(0,1) vs N(0.5,1)/N=50" in names
    assert "S3 LogN(0,1) vs U(1,2)/N=75" in names


def test_malformed_toml(tmp_path):
    path = tmp_path / "bad.toml"
    path.write_text("name = [unterminated")
    with pytest.raises(ConfigurationError):
        load_scenarios(path)


def test_missing_keys(tmp_path):
    path = tmp_path / "nox.toml"
    path.write_text('max_n = 10\ny = { family = "normal", params = [0.0, 1.0] }\n')
    with pytest.raises(ConfigurationError):
        load_scenarios(path)


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_scenarios(tmp_path / "nope.toml")


def test_max_n_must_be_at_least_four():
    normal = DistributionSpec("normal", (0, 1))
    with pytest.raises(ArgumentError):
        ScenarioSpec("tiny", normal, normal, max_n=3)


def test_differences_are_x_minus_y():
    x_dist = DistributionSpec("lognormal", (0, 1))
    y_dist = DistributionSpec("uniform", (1, 2))
    scenario = ScenarioSpec("skew", x_dist, y_dist, max_n=30)

    z = scenario.differences(RngStream(4, 1))
    replay = RngStream(4, 1)
    x = sample(x_dist, 30, replay)
    y = sample(y_dist, 30, replay)
    assert np.array_equal(z, x - y)
