"""Reproducible per-replication random streams.

A stream is a pure function of (seed, purpose, keys..., index): replication i
always sees the same draws no matter which worker runs it or how many workers
there are.
"""

from enum import IntEnum

import numpy as np

from utils.validation import require_int


class StreamPurpose(IntEnum):
    TABULATE = 1
    POWER = 2
    BOOTSTRAP = 3
    CONSISTENCY = 4
    DATASET = 5


class RngStream:
    """A counter-based (Philox) generator keyed by seed and spawn key."""

    def __init__(self, seed: int, *key: int):
        self.seed = require_int(seed, name="seed", minimum=0, maximum=2**64 - 1)
        self.key = tuple(int(k) for k in key)
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=self.key)
        self.generator = np.random.Generator(np.random.Philox(seq))

    @classmethod
    def for_replication(cls, seed: int, purpose: StreamPurpose, index: int, *keys: int) -> "RngStream":
        return cls(seed, int(purpose), *keys, index)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, key={self.key})"
