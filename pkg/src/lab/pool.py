"""Replication fan-out.

Replication indices are split into contiguous chunks and handed to a process
pool; chunk results are stitched back together in index order, so the output
does not depend on the pool width.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

import numpy as np

from config import CHUNK_SIZE, WORKER_THREADS
from utils.validation import require_int

logger = logging.getLogger(__name__)


def chunk_bounds(reps: int, chunk_size: int):
    return [(start, min(start + chunk_size, reps)) for start in range(0, reps, chunk_size)]


def run_replications(
    task: Callable[[int, int], np.ndarray],
    reps: int,
    *,
    threads: int = WORKER_THREADS,
    chunk_size: int = CHUNK_SIZE,
) -> np.ndarray:
    """Evaluate ``task(start, stop)`` over [0, reps) and concatenate in order.

    ``task`` must be picklable (a module-level function or a functools.partial
    of one) and return an array whose first axis has length stop - start.
    """
    reps = require_int(reps, name="reps", minimum=1)
    threads = require_int(threads, name="threads", minimum=1)
    chunk_size = require_int(chunk_size, name="chunk_size", minimum=1)

    bounds = chunk_bounds(reps, chunk_size)
    workers = min(threads, len(bounds))
    logger.debug("running %d replications in %d chunk(s) on %d worker(s)", reps, len(bounds), workers)

    if workers == 1:
        parts = [task(start, stop) for start, stop in bounds]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(task, start, stop) for start, stop in bounds]
            parts = [f.result() for f in futures]

    return np.concatenate(parts, axis=0)
