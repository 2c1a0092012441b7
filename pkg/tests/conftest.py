from pathlib import Path
import sys

import numpy as np
import pytest


ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"

if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))


@pytest.fixture
def rng():
    """Fresh generator per test so tests do not share draws."""
    return np.random.default_rng(12345)


@pytest.fixture
def runner():
    from click.testing import CliRunner

    return CliRunner()


@pytest.fixture
def cli():
    import app

    return app.cli


@pytest.fixture
def dbel_table():
    """Small hand-made DBEL table; values from the long-run N=15/25/83 tabulations."""
    from lab.critical import CriticalValueTable

    return CriticalValueTable(
        test="dbel",
        entries={(15, 0.05): 4.288, (15, 0.1): 3.514, (25, 0.05): 4.554, (83, 0.05): 5.166},
        reps=25000,
        seed=7,
        delta=0.1,
        quantile="type7",
    )


@pytest.fixture
def ssrt_table():
    from lab.critical import CriticalValueTable

    return CriticalValueTable(
        test="ssrt",
        entries={(15, 0.05): 2.4, (25, 0.05): 2.5, (83, 0.05): 2.676},
        reps=25000,
        seed=7,
        quantile="type7",
    )


@pytest.fixture(autouse=True)
def clear_in_memory_caches():
    """Reset the critical-value cache before every test so tests are isolated."""
    import utils.table_cache as tc

    with tc._critical_lock:
        tc._critical_cache.clear()

    yield


@pytest.fixture(autouse=True)
def reset_logging():
    """Drop the CLI's stderr handler and level after each test."""
    import logging

    root = logging.getLogger()
    level = root.level
    yield
    for handler in [h for h in root.handlers if getattr(h, "_seqdbel", False)]:
        root.removeHandler(handler)
    root.setLevel(level)
