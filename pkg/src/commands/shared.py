"""Flag parsing and critical-value table options shared by several commands."""

import click

from config import DEFAULT_DELTA, QUANTILE_METHOD, TABULATE_REPS
from lab.critical import QUANTILE_METHODS, resolve_table
from sequential.engine import resolve_test
from utils.serialization import dumps_line, format_rows_csv, load_table
from utils.validation import ArgumentError


def parse_tests(value: str):
    tests = [resolve_test(part.strip()) for part in value.split(",") if part.strip()]
    if not tests:
        raise ArgumentError("--tests must name at least one of dbel, ssrt.")
    return list(dict.fromkeys(tests))


def table_options(f):
    f = click.option("--quantile", type=click.Choice(QUANTILE_METHODS), default=QUANTILE_METHOD,
                     show_default=True, help="Estimator for auto-tabulated critical values.")(f)
    f = click.option("--delta", type=float, default=DEFAULT_DELTA, show_default=True,
                     help="DBEL m-grid exponent for auto-tabulated tables.")(f)
    f = click.option("--tab-reps", "tab_reps", type=click.IntRange(min=1), default=TABULATE_REPS,
                     show_default=True, help="Replications for missing critical values.")(f)
    f = click.option("--table", "table_paths", type=click.Path(dir_okay=False), multiple=True,
                     help="Critical-value table JSON (repeatable, one per test).")(f)
    return f


def tables_for(tests, required, table_paths, *, tab_reps, seed, delta, quantile, threads):
    """One table per test covering ``required`` (N, alpha) pairs; gaps are tabulated."""
    supplied = {}
    for path in table_paths:
        table = load_table(path)
        if table.test in supplied:
            table = supplied[table.test].merged(table)
        supplied[table.test] = table

    return {
        test: resolve_table(
            test, required, supplied.get(test),
            reps=tab_reps, seed=seed, delta=delta, quantile=quantile, threads=threads,
        )
        for test in tests
    }


def emit_rows(rows, fmt: str):
    if fmt == "csv":
        click.echo(format_rows_csv(rows), nl=False)
    else:
        for row in rows:
            click.echo(dumps_line(row))


def parse_n_list(value: str):
    try:
        n_list = [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise ArgumentError(f"--n-list must be comma-separated integers, got {value!r}.") from None
    if not n_list:
        raise ArgumentError("--n-list must name at least one N.")
    return n_list
