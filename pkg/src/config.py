import os
from pathlib import Path
from dotenv import load_dotenv

# Project root directory (parent of src/)
BASE_DIR = Path(__file__).resolve().parents[1]

# Load .env from src/ directory before reading any env vars
load_dotenv(BASE_DIR / "src" / ".env", override=True)

# DBEL window-width exponent (m-grid is round(n^(0.5+delta)) .. min(round(n^(1-delta)), round(n/2)))
DEFAULT_DELTA = float(os.getenv("SEQDBEL_DELTA", "0.1"))

# Monte Carlo replication budgets
TABULATE_REPS = int(os.getenv("SEQDBEL_TABULATE_REPS", "25000"))
POWER_REPS = int(os.getenv("SEQDBEL_POWER_REPS", "10000"))
BOOTSTRAP_REPS = int(os.getenv("SEQDBEL_BOOTSTRAP_REPS", "5000"))
CONSISTENCY_REPS = int(os.getenv("SEQDBEL_CONSISTENCY_REPS", "2000"))

DEFAULT_SEED = int(os.getenv("SEQDBEL_SEED", "20240501"))

# Worker pool
WORKER_THREADS = int(os.getenv("SEQDBEL_THREADS", str(os.cpu_count() or 1)))
CHUNK_SIZE = int(os.getenv("SEQDBEL_CHUNK_SIZE", "250"))  # replications per work unit

# "order-statistic" or "type7"
QUANTILE_METHOD = os.getenv("SEQDBEL_QUANTILE", "order-statistic")

LOG_LEVEL = os.getenv("SEQDBEL_LOG_LEVEL", "WARNING")

# Critical-value table documents
TABLE_SCHEMA_VERSION = 1

# Bundled scenario catalog
SCENARIO_DIR = BASE_DIR / "src" / "scenarios"

# CLI exit codes
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3
