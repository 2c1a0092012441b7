"""JSON documents for critical-value tables, JSON-safe conversion of results,
and parsing of paired-data text lines."""

import csv
import io
import json
import math
import re
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import List, Optional

import numpy as np

from config import TABLE_SCHEMA_VERSION
from lab.critical import CriticalValueTable
from utils.validation import ArgumentError, ConfigurationError


def _utc_now_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


def to_jsonable(value):
    """Convert numpy/enum/python values into JSON-safe forms for output."""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value


def dumps_line(payload: dict) -> str:
    return json.dumps(to_jsonable(payload), separators=(", ", ": "))


# ---------------------------
# Critical-value tables
# ---------------------------

def table_to_document(table) -> dict:
    return {
        "schema_version": TABLE_SCHEMA_VERSION,
        "test": table.test.value,
        "delta": table.delta,
        "reps": table.reps,
        "seed": table.seed,
        "quantile": table.quantile,
        "null": table.null,
        "created_at_client_iso": _utc_now_iso(),
        "entries": [
            {"N": n, "alpha": alpha, "critical": critical}
            for n, alpha, critical in table.rows()
        ],
    }


def table_from_document(doc: dict):
    try:
        entries = {(int(e["N"]), float(e["alpha"])): float(e["critical"]) for e in doc["entries"]}
        return CriticalValueTable(
            test=doc["test"],
            entries=entries,
            reps=int(doc["reps"]),
            seed=int(doc["seed"]),
            delta=doc.get("delta"),
            quantile=doc.get("quantile", "type7"),
            null=doc.get("null", "normal"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigurationError(f"malformed critical-value table: {exc!r}") from exc


def dump_table(table, path: Optional[Path] = None) -> str:
    """Serialise a table; written to ``path`` when given. Returns the JSON text."""
    text = json.dumps(table_to_document(table), indent=2)
    if path is not None:
        Path(path).write_text(text + "\n", encoding="utf-8")
    return text


def load_table(path):
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Critical-value table not found at: {path}")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{path}: not valid JSON ({exc}).") from exc
    return table_from_document(doc)


# ---------------------------
# Paired-data lines
# ---------------------------

def is_skippable(line: str) -> bool:
    stripped = line.strip()
    return not stripped or stripped.startswith("#")


def parse_observation(line: str, fmt: str = "diffs", *, negate: bool = False,
                      lineno: int = None) -> float:
    """One difference from an ``x,y`` pair line or a single ``z`` line."""
    where = f"line {lineno}" if lineno is not None else "input"
    fields = [f.strip() for f in line.strip().split(",")]
    expected = 2 if fmt == "pairs" else 1
    if len(fields) != expected:
        raise ArgumentError(f"{where}: expected {expected} value(s) for format '{fmt}', got {len(fields)}.")
    try:
        values = [float(f) for f in fields]
    except ValueError:
        raise ArgumentError(f"{where}: not a number: {line.strip()!r}.") from None
    if not all(math.isfinite(v) for v in values):
        raise ArgumentError(f"{where}: NaN or infinite value: {line.strip()!r}.")

    z = values[0] - values[1] if fmt == "pairs" else values[0]
    return -z if negate else z


def read_differences(path, *, negate: bool = False) -> np.ndarray:
    """Differences from a CSV of ``z`` or ``x,y`` rows.

    Comment lines are skipped. Only the first non-comment row may be a header,
    and only if every cell looks like a column name; any other non-numeric row
    is an error naming its line. The width of the first data row decides
    between the two layouts.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Data file not found at: {path}")

    values: List[float] = []
    fmt = None
    first_row = True
    with path.open(newline="", encoding="utf-8") as fh:
        try:
            for lineno, row in enumerate(csv.reader(fh), start=1):
                if not row or is_skippable(",".join(row)):
                    continue
                if first_row:
                    first_row = False
                    if _is_header_row(row):
                        continue
                if fmt is None:
                    fmt = "pairs" if len(row) == 2 else "diffs"
                values.append(parse_observation(",".join(row), fmt, negate=negate, lineno=lineno))
        except UnicodeDecodeError:
            raise ArgumentError(f"{path}: not valid UTF-8.") from None

    if not values:
        raise ArgumentError(f"{path}: no data rows found.")
    return np.asarray(values)


_HEADER_CELL = re.compile(r"""^\s*["']?[A-Za-z_]""")


def _is_header_row(row: List[str]) -> bool:
    if _is_numeric_row(row):
        return False
    return all(_HEADER_CELL.match(cell) for cell in row)


def _is_numeric_row(row: List[str]) -> bool:
    try:
        [float(cell) for cell in row]
    except ValueError:
        return False
    return True


def format_rows_csv(rows: List[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(to_jsonable(row))
    return buf.getvalue()
