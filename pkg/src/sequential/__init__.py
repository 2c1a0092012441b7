from sequential.engine import (
    Decision,
    MonitorState,
    SequentialOutcome,
    StoppingPolicy,
    TestKind,
    TrajectoryPoint,
    feed,
    resolve_test,
    run_to_completion,
    stopping_time,
)
