from stats.dbel import (
    DbelEvaluation,
    DifferenceSample,
    MGrid,
    SortedDifferences,
    dbel_log_statistic,
    dbel_trajectory,
    delta_jm,
)
from stats.oracle import oracle_dbel
from stats.signed_rank import SignedRankEvaluation, signed_rank_statistic, signed_rank_trajectory
