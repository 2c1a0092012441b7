"""
Tests for the command-line front end (app.py, commands/*).

Covers:
- tabulate: JSON output, --out file, validation exit codes
- monitor: per-observation records, summary, exit codes 0/2/3,
  pairs vs diffs, --negate, table files, stream vs batch agreement, bad UTF-8
- simulate: scenario files, --tests filtering, bad TOML
- bootstrap: rows per (N, test), N >= data size, data-file parsing errors
- consistency: option plumbing and validation
"""

import json
from unittest.mock import patch

import numpy as np
import pytest

from config import EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE
from lab.consistency import ConsistencyRow
from sequential.engine import StoppingPolicy, run_to_completion
from stats.dbel import dbel_trajectory
from utils.serialization import dump_table, read_differences
from utils.validation import ArgumentError


def json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


SCENARIO = """
name = "shift"
max_n = 12
alpha = 0.05
x = { family = "normal", params = [1.0, 1.0] }
y = { family = "normal", params = [0.0, 1.0] }
"""


# ---------------------------
# tabulate
# ---------------------------

def test_tabulate_prints_table(runner, cli):
    result = runner.invoke(cli, ["tabulate", "--test", "ssrt", "--max-n", "10", "--alpha", "0.05",
                                 "--reps", "60", "--seed", "1", "--threads", "1"])

    assert result.exit_code == EXIT_OK, result.output
    doc = json.loads(result.stdout)
    assert doc["test"] == "ssrt"
    assert doc["seed"] == 1
    assert doc["reps"] == 60
    assert [(e["N"], e["alpha"]) for e in doc["entries"]] == [(10, 0.05)]
    assert "seed=1" in result.stderr


def test_tabulate_out_file_and_pretty(runner, cli, tmp_path):
    out = tmp_path / "dbel.json"
    result = runner.invoke(cli, ["tabulate", "--test", "dbel", "--max-n", "6", "--max-n", "8",
                                 "--alpha", "0.05", "--alpha", "0.1", "--reps", "40",
                                 "--threads", "1", "--out", str(out), "--pretty"])

    assert result.exit_code == EXIT_OK, result.output
    assert result.stdout == ""
    doc = json.loads(out.read_text())
    assert len(doc["entries"]) == 4
    assert "0.050" in result.stderr


@pytest.mark.parametrize(
    "args",
    [
        ["--reps", "0"],
        ["--alpha", "1.5"],
        ["--delta", "0.4"],
        ["--test", "wilcoxon"],
    ],
)
def test_tabulate_bad_flags_exit_2(runner, cli, args):
    base = ["tabulate", "--test", "dbel", "--max-n", "10", "--reps", "10", "--threads", "1"]
    result = runner.invoke(cli, base + args)
    assert result.exit_code == EXIT_USAGE


# ---------------------------
# monitor
# ---------------------------

def test_monitor_three_lines_continue_then_inconclusive(runner, cli):
    result = runner.invoke(cli, ["monitor", "--test", "dbel", "--critical", "4.288", "--max-n", "15"],
                           input="0.5\n-1.0\n2.0\n")

    assert result.exit_code == EXIT_INCONCLUSIVE
    *records, summary = json_lines(result.stdout)
    assert [r["n"] for r in records] == [1, 2, 3]
    assert all(r["statistic"] == 0.0 and r["decision"] == "continue" for r in records)
    assert all(r["test"] == "dbel" and r["critical"] == 4.288 for r in records)
    assert summary == {"stopped_at": 3, "rejected": False, "inconclusive": True}


def test_monitor_stops_and_ignores_rest(runner, cli):
    # distinct positive values: log V_5 = 3.514, log V_6 = 4.288
    lines = "\n".join(str(v) for v in range(1, 11)) + "\n"
    result = runner.invoke(cli, ["monitor", "--test", "dbel", "--critical", "4.0", "--max-n", "83"],
                           input=lines)

    assert result.exit_code == EXIT_OK
    *records, summary = json_lines(result.stdout)
    assert len(records) == 6
    assert records[-1]["decision"] == "reject_stop"
    assert summary == {"stopped_at": 6, "rejected": True, "inconclusive": False}


def test_monitor_first_crossing_at_fifty(runner, cli):
    # find a stream whose statistic sets a new running maximum at n = 50
    for seed in range(500):
        z = np.random.default_rng(seed).normal(loc=0.3, size=60)
        path = dbel_trajectory(z)
        if path[49] > path[:49].max():
            break
    else:
        pytest.fail("no stream with a record at n = 50")

    lines = "".join(f"{v!r}\n" for v in z.tolist())
    result = runner.invoke(cli, ["monitor", "--test", "dbel", "--critical", repr(float(path[49])),
                                 "--max-n", "83"], input=lines)

    assert result.exit_code == EXIT_OK
    assert json_lines(result.stdout)[-1] == {"stopped_at": 50, "rejected": True, "inconclusive": False}


def test_monitor_accepts_at_max_n(runner, cli):
    z = np.random.default_rng(2).normal(size=20)
    lines = "".join(f"{v!r}\n" for v in z.tolist())
    result = runner.invoke(cli, ["monitor", "--test", "ssrt", "--critical", "50", "--max-n", "20"],
                           input=lines)

    assert result.exit_code == EXIT_OK
    *records, summary = json_lines(result.stdout)
    assert records[-1]["decision"] == "accept_stop"
    assert summary == {"stopped_at": 20, "rejected": False, "inconclusive": False}


def test_monitor_pairs_and_negate(runner, cli):
    pairs = "# pre,post\n3,1\n\n1,4\n2,2.5\n"
    args = ["monitor", "--test", "ssrt", "--critical", "50", "--max-n", "10"]

    from_pairs = runner.invoke(cli, args + ["--format", "pairs"], input=pairs)
    negated = runner.invoke(cli, args + ["--format", "pairs", "--negate"], input=pairs)

    assert from_pairs.stdout == runner.invoke(cli, args, input="2\n-3\n-0.5\n").stdout
    assert negated.stdout == runner.invoke(cli, args, input="-2\n3\n0.5\n").stdout


def test_monitor_malformed_line_exit_2(runner, cli):
    result = runner.invoke(cli, ["monitor", "--test", "ssrt", "--critical", "2.5", "--max-n", "10"],
                           input="1.0\nabc\n2.0\n")

    assert result.exit_code == EXIT_USAGE
    assert len(json_lines(result.stdout)) == 1
    assert "line 2" in result.stderr


def test_monitor_invalid_utf8_exit_2(runner, cli):
    result = runner.invoke(cli, ["monitor", "--test", "ssrt", "--critical", "2.5", "--max-n", "10"],
                           input=b"1.0\n2.0\n\xff\xfe\n")

    assert result.exit_code == EXIT_USAGE
    assert len(json_lines(result.stdout)) == 2
    assert "line 3: not valid UTF-8" in result.stderr


def test_monitor_wrong_width_for_pairs(runner, cli):
    result = runner.invoke(cli, ["monitor", "--test", "ssrt", "--critical", "2.5", "--max-n", "10",
                                 "--format", "pairs"], input="1.0\n")
    assert result.exit_code == EXIT_USAGE
    assert "line 1" in result.stderr


def test_monitor_empty_input(runner, cli):
    result = runner.invoke(cli, ["monitor", "--test", "ssrt", "--critical", "2.5", "--max-n", "10"],
                           input="# nothing yet\n")
    assert result.exit_code == EXIT_INCONCLUSIVE
    assert json_lines(result.stdout) == [{"stopped_at": 0, "rejected": False, "inconclusive": True}]


@pytest.mark.parametrize("extra", [[], ["--critical", "2.5", "--table", "t.json"]])
def test_monitor_needs_exactly_one_critical_source(runner, cli, extra):
    result = runner.invoke(cli, ["monitor", "--test", "ssrt", "--max-n", "10"] + extra, input="1\n")
    assert result.exit_code == EXIT_USAGE


def test_monitor_with_table_file(runner, cli, tmp_path, dbel_table, ssrt_table):
    path = tmp_path / "dbel.json"
    dump_table(dbel_table, path)
    result = runner.invoke(cli, ["monitor", "--test", "dbel", "--table", str(path), "--max-n", "15"],
                           input="1\n2\n")
    assert json_lines(result.stdout)[0]["critical"] == 4.288

    wrong = tmp_path / "ssrt.json"
    dump_table(ssrt_table, wrong)
    result = runner.invoke(cli, ["monitor", "--test", "dbel", "--table", str(wrong), "--max-n", "15"],
                           input="1\n")
    assert result.exit_code == EXIT_USAGE

    missing = runner.invoke(cli, ["monitor", "--test", "dbel", "--table", str(path), "--max-n", "40"],
                            input="1\n")
    assert missing.exit_code == EXIT_USAGE


def test_monitor_file_matches_batch_run(runner, cli, tmp_path):
    rng = np.random.default_rng(17)
    corpus = [rng.normal(loc=shift, size=40) for shift in (0.0, 0.4, 0.8, 1.2)]
    policy = StoppingPolicy(test="dbel", max_n=30, alpha=0.05, critical=4.7)

    for k, z in enumerate(corpus):
        path = tmp_path / f"stream{k}.txt"
        path.write_text("".join(f"{v!r}\n" for v in z.tolist()))

        result = runner.invoke(cli, ["monitor", str(path), "--test", "dbel", "--critical", "4.7",
                                     "--max-n", "30"])
        *records, summary = json_lines(result.stdout)
        outcome = run_to_completion(policy, z)

        assert summary["stopped_at"] == outcome.stopped_at
        assert summary["rejected"] == outcome.rejected
        assert [r["statistic"] for r in records] == [p.statistic for p in outcome.trajectory]


def test_tabulated_table_feeds_monitor(runner, cli, tmp_path):
    out = tmp_path / "ssrt.json"
    runner.invoke(cli, ["tabulate", "--test", "ssrt", "--max-n", "12", "--reps", "50",
                        "--threads", "1", "--out", str(out)])
    critical = json.loads(out.read_text())["entries"][0]["critical"]

    result = runner.invoke(cli, ["monitor", "--test", "ssrt", "--table", str(out), "--max-n", "12"],
                           input="1\n")
    assert json_lines(result.stdout)[0]["critical"] == critical


# ---------------------------
# simulate
# ---------------------------

def test_simulate_single_test_row(runner, cli, tmp_path):
    path = tmp_path / "shift.toml"
    path.write_text(SCENARIO)
    result = runner.invoke(cli, ["simulate", "--scenario", str(path), "--reps", "20", "--tab-reps", "40",
                                 "--tests", "ssrt", "--seed", "5", "--threads", "1"])

    assert result.exit_code == EXIT_OK, result.output
    header, *rows = result.stdout.strip().splitlines()
    assert header.split(",")[:4] == ["scenario", "x", "y", "test"]
    assert len(rows) == 1
    assert ",ssrt," in rows[0]


def test_simulate_json_with_supplied_table(runner, cli, tmp_path):
    from lab.critical import CriticalValueTable

    path = tmp_path / "shift.toml"
    path.write_text(SCENARIO)
    table = tmp_path / "dbel.json"
    dump_table(CriticalValueTable(test="dbel", entries={(12, 0.05): 4.4}, reps=1, seed=1, delta=0.1), table)

    result = runner.invoke(cli, ["simulate", "--scenario", str(path), "--reps", "15", "--tab-reps", "40",
                                 "--table", str(table), "--format", "json", "--threads", "1"])

    assert result.exit_code == EXIT_OK, result.output
    rows = json_lines(result.stdout)
    assert [r["test"] for r in rows] == ["dbel", "ssrt"]
    assert rows[0]["critical"] == 4.4
    assert all(r["reps"] == 15 and 1 <= r["asn"] <= 12 for r in rows)


def test_simulate_bad_toml(runner, cli, tmp_path):
    path = tmp_path / "bad.toml"
    path.write_text("max_n = [oops")
    result = runner.invoke(cli, ["simulate", "--scenario", str(path), "--reps", "5", "--threads", "1"])
    assert result.exit_code == EXIT_USAGE


def test_simulate_bad_tests_flag(runner, cli, tmp_path):
    path = tmp_path / "shift.toml"
    path.write_text(SCENARIO)
    result = runner.invoke(cli, ["simulate", "--scenario", str(path), "--tests", "dbel,foo", "--threads", "1"])
    assert result.exit_code == EXIT_USAGE


# ---------------------------
# bootstrap
# ---------------------------

@pytest.fixture
def data_csv(tmp_path):
    rng = np.random.default_rng(4)
    path = tmp_path / "pairs.csv"
    rows = ["pre,post"] + [f"{x:.17g},{y:.17g}" for x, y in zip(rng.normal(1, 1, 30), rng.normal(0, 1, 30))]
    path.write_text("\n".join(rows) + "\n")
    return path


def test_bootstrap_rows(runner, cli, data_csv):
    result = runner.invoke(cli, ["bootstrap", "--data", str(data_csv), "--n-list", "10,15", "--reps", "10",
                                 "--tab-reps", "30", "--format", "json", "--threads", "1"])

    assert result.exit_code == EXIT_OK, result.output
    rows = json_lines(result.stdout)
    assert [(r["N"], r["test"]) for r in rows] == [(10, "dbel"), (10, "ssrt"), (15, "dbel"), (15, "ssrt")]
    assert all(r["replacement"] is False for r in rows)


def test_bootstrap_n_too_large(runner, cli, data_csv):
    result = runner.invoke(cli, ["bootstrap", "--data", str(data_csv), "--n-list", "100", "--threads", "1"])
    assert result.exit_code == EXIT_USAGE
    assert "data size 30" in result.stderr


def test_bootstrap_missing_data(runner, cli, tmp_path):
    result = runner.invoke(cli, ["bootstrap", "--data", str(tmp_path / "none.csv"), "--threads", "1"])
    assert result.exit_code == EXIT_USAGE


def test_read_differences_skips_one_header_and_comments(tmp_path):
    path = tmp_path / "z.csv"
    path.write_text("# pilot\nz\n1.5\n-2\n# mid-file note\n0.25\n")
    assert read_differences(path).tolist() == [1.5, -2.0, 0.25]


def test_read_differences_pairs_negate(tmp_path):
    path = tmp_path / "xy.csv"
    path.write_text("3,1\n0,2\n")
    assert read_differences(path).tolist() == [2.0, -2.0]
    assert read_differences(path, negate=True).tolist() == [-2.0, 2.0]


@pytest.mark.parametrize("text, lineno", [
    ("1.5x\n1\n2\n3\n", 1),
    ("z\n1\noops\n3\n", 3),
    ("pre,post\nx,y\n1,2\n", 2),
    ("1\n2\n\n# note\n3,4\n", 5),
])
def test_read_differences_names_bad_line(tmp_path, text, lineno):
    path = tmp_path / "bad.csv"
    path.write_text(text)
    with pytest.raises(ArgumentError, match=f"line {lineno}"):
        read_differences(path)


def test_read_differences_invalid_utf8(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_bytes(b"1\n\xff\n")
    with pytest.raises(ArgumentError, match="UTF-8"):
        read_differences(path)


def test_bootstrap_typo_row_exit_2(runner, cli, tmp_path):
    path = tmp_path / "z.csv"
    path.write_text("".join(f"{v}\n" for v in range(1, 21)).replace("7\n", "7..\n", 1))
    result = runner.invoke(cli, ["bootstrap", "--data", str(path), "--n-list", "10", "--threads", "1"])
    assert result.exit_code == EXIT_USAGE
    assert "line 7" in result.stderr


# ---------------------------
# consistency
# ---------------------------

def test_consistency_passes_options(runner, cli):
    row = ConsistencyRow(max_n=25, gamma=0.9, threshold=25 ** 0.9, null_fraction=0.01,
                         alt_fraction=0.5, reps=1000, seed=3)
    with patch("commands.consistency.cli.empirical_consistency_check", return_value=[row]) as check:
        result = runner.invoke(cli, ["consistency", "--n-list", "25", "--gamma", "0.9", "--reps", "1000",
                                     "--alt", "lognormal:0,1", "--seed", "3", "--threads", "1"])

    assert result.exit_code == EXIT_OK, result.output
    args, kwargs = check.call_args
    assert args[0] == [25]
    assert args[4].label == "LogN(0,1)"
    assert kwargs["seed"] == 3
    assert result.stdout.startswith("N,gamma,threshold")
    assert result.stdout.splitlines()[0].endswith(",reps,seed")


def test_consistency_too_few_reps(runner, cli):
    result = runner.invoke(cli, ["consistency", "--n-list", "25", "--reps", "10", "--threads", "1"])
    assert result.exit_code == EXIT_USAGE


def test_verbose_flag(runner, cli):
    result = runner.invoke(cli, ["-vv", "monitor", "--test", "ssrt", "--critical", "2.5", "--max-n", "2"],
                           input="1\n2\n")
    assert result.exit_code == EXIT_OK
