"""Sequential stopping rules for the DBEL test and the SSRT.

Both tests share one loop: append the next difference, recompute the
statistic on the full prefix, and stop with a rejection the first time the
statistic reaches the critical value (non-strict comparison). A test that
never rejects stops without rejecting at max_n.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from config import DEFAULT_DELTA
from stats.dbel import MIN_DBEL_N, DifferenceSample, log_vn_sorted
from stats.signed_rank import signed_rank_ts
from utils.validation import (
    ArgumentError,
    MonitorStateError,
    require_finite,
    require_int,
    require_open_interval,
)

logger = logging.getLogger(__name__)


class TestKind(str, Enum):
    DBEL = "dbel"
    SSRT = "ssrt"

    # keep pytest from collecting this enum as a test class
    __test__ = False


def resolve_test(test) -> TestKind:
    try:
        return TestKind(test)
    except ValueError:
        raise ArgumentError(f"test must be one of {[t.value for t in TestKind]}, got {test!r}.") from None


class Decision(str, Enum):
    CONTINUE = "continue"
    REJECT_STOP = "reject_stop"
    ACCEPT_STOP = "accept_stop"


# ---------------------------
# Domain types
# ---------------------------

@dataclass(frozen=True)
class StoppingPolicy:
    test: TestKind
    max_n: int
    alpha: float
    critical: float
    delta: float = DEFAULT_DELTA

    def __post_init__(self):
        test = resolve_test(self.test)
        object.__setattr__(self, "test", test)
        object.__setattr__(self, "max_n", require_int(self.max_n, name="max_n", minimum=1))
        object.__setattr__(self, "alpha", require_open_interval(self.alpha, 0.0, 1.0, name="alpha"))
        object.__setattr__(self, "critical", require_finite(self.critical, name="critical"))
        object.__setattr__(self, "delta", require_open_interval(self.delta, 0.0, 0.25, name="delta"))

        if test is TestKind.DBEL and self.max_n < MIN_DBEL_N:
            logger.warning("DBEL policy with max_n=%d: the statistic is 0 before n=%d",
                           self.max_n, MIN_DBEL_N)

    @classmethod
    def from_table(cls, table, max_n: int, alpha: float) -> "StoppingPolicy":
        """Policy whose critical value is looked up in a CriticalValueTable."""
        return cls(
            test=table.test,
            max_n=max_n,
            alpha=alpha,
            critical=table.critical(max_n, alpha),
            delta=table.delta if table.delta is not None else DEFAULT_DELTA,
        )


@dataclass(frozen=True)
class TrajectoryPoint:
    n: int
    statistic: float
    critical: float
    decision: Decision

    def to_dict(self, test: Optional[TestKind] = None) -> dict:
        payload = {"n": self.n}
        if test is not None:
            payload["test"] = TestKind(test).value
        payload.update(statistic=self.statistic, critical=self.critical, decision=self.decision.value)
        return payload


@dataclass(frozen=True)
class SequentialOutcome:
    stopped_at: int
    rejected: bool
    trajectory: Tuple[TrajectoryPoint, ...]
    max_n: int

    @property
    def inconclusive(self) -> bool:
        """Data ran out before max_n without a rejection."""
        return not self.rejected and self.stopped_at < self.max_n

    @property
    def max_statistic(self) -> float:
        return max(p.statistic for p in self.trajectory)

    def summary(self) -> dict:
        return {"stopped_at": self.stopped_at, "rejected": self.rejected}


# ---------------------------
# Statistic trackers
# ---------------------------

class _DbelTracker:
    """Keeps the sorted prefix by insertion; log V_n is recomputed each step."""

    def __init__(self, delta: float):
        self.delta = delta
        self.values = np.empty(0)

    def push(self, value: float) -> float:
        pos = np.searchsorted(self.values, value, side="right")
        self.values = np.insert(self.values, pos, value)
        return log_vn_sorted(self.values, self.delta)


class _SignedRankTracker:
    def __init__(self):
        self.values = np.empty(0)

    def push(self, value: float) -> float:
        self.values = np.append(self.values, value)
        return signed_rank_ts(self.values)


def _tracker(policy: StoppingPolicy):
    if policy.test is TestKind.DBEL:
        return _DbelTracker(policy.delta)
    return _SignedRankTracker()


# ---------------------------
# Monitor
# ---------------------------

class MonitorState:
    """Single-owner state of one sequential trial."""

    def __init__(self, policy: StoppingPolicy):
        self.policy = policy
        self._tracker = _tracker(policy)
        self.trajectory: List[TrajectoryPoint] = []
        self.stopped = False

    @property
    def n(self) -> int:
        return len(self.trajectory)

    @property
    def rejected(self) -> bool:
        return bool(self.trajectory) and self.trajectory[-1].decision is Decision.REJECT_STOP

    def feed(self, z_next: float) -> TrajectoryPoint:
        return feed(self.policy, self, z_next)

    def outcome(self) -> SequentialOutcome:
        if not self.trajectory:
            raise MonitorStateError("no observations have been fed.")
        return SequentialOutcome(
            stopped_at=self.n,
            rejected=self.rejected,
            trajectory=tuple(self.trajectory),
            max_n=self.policy.max_n,
        )


def feed(policy: StoppingPolicy, state: MonitorState, z_next: float) -> TrajectoryPoint:
    """Consume one difference and return the decision at the new n."""
    if state.policy != policy:
        raise ArgumentError("the monitor state was started under a different policy.")
    if state.stopped:
        raise MonitorStateError(f"monitor already stopped at n={state.n}.")
    z_next = require_finite(z_next, name="z_next")

    statistic = state._tracker.push(z_next)
    n = state.n + 1

    if statistic >= policy.critical:
        decision = Decision.REJECT_STOP
    elif n >= policy.max_n:
        decision = Decision.ACCEPT_STOP
    else:
        decision = Decision.CONTINUE

    point = TrajectoryPoint(n=n, statistic=statistic, critical=policy.critical, decision=decision)
    state.trajectory.append(point)
    if decision is not Decision.CONTINUE:
        state.stopped = True
        logger.debug("%s stopped at n=%d (%s)", policy.test.value, n, decision.value)
    return point


def run_to_completion(policy: StoppingPolicy, z) -> SequentialOutcome:
    """Feed ``z`` until the policy stops or the data (or max_n) run out."""
    if not isinstance(z, DifferenceSample):
        z = DifferenceSample(z)

    state = MonitorState(policy)
    for value in z.z[: policy.max_n]:
        if feed(policy, state, value).decision is not Decision.CONTINUE:
            break
    return state.outcome()


def stopping_time(policy: StoppingPolicy, z: np.ndarray) -> Tuple[int, bool]:
    """(stopped_at, rejected) for ``z``; the trajectory-free Monte Carlo path.

    Agrees with run_to_completion on the same input.
    """
    tracker = _tracker(policy)
    limit = min(policy.max_n, z.size)
    for n in range(1, limit + 1):
        if tracker.push(float(z[n - 1])) >= policy.critical:
            return n, True
    return limit, False
