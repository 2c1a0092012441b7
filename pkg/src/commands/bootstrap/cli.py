import logging

import click

from config import BOOTSTRAP_REPS
from commands.shared import emit_rows, parse_n_list, parse_tests, table_options, tables_for
from decorators import exit_on_error, monte_carlo_options
from lab.bootstrap import bootstrap_study
from utils.serialization import read_differences
from utils.validation import ArgumentError

logger = logging.getLogger(__name__)


@click.command("bootstrap")
@click.option("--data", "data_path", type=click.Path(dir_okay=False), required=True,
              help="CSV of differences z or pairs x,y (one row per subject).")
@click.option("--n-list", "n_list", default="15,25,35,50,65,75", show_default=True)
@click.option("--reps", type=click.IntRange(min=1), default=BOOTSTRAP_REPS, show_default=True)
@click.option("--replacement", type=click.Choice(["on", "off"]), default="off", show_default=True,
              help="Resample subjects with replacement.")
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--tests", "tests", default="dbel,ssrt", show_default=True)
@click.option("--negate", is_flag=True, help="Use y - x instead of x - y.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@table_options
@monte_carlo_options
@exit_on_error
def bootstrap_cmd(data_path, n_list, reps, replacement, alpha, tests, negate, fmt,
                  table_paths, tab_reps, delta, quantile, seed, threads):
    """Rejection rate and ASN of each test on subsamples of an observed dataset."""
    n_list = parse_n_list(n_list)
    tests = parse_tests(tests)
    data = read_differences(data_path, negate=negate)
    logger.info("bootstrap on %d observations from %s", data.size, data_path)

    too_big = [n for n in n_list if n >= data.size]
    if too_big:
        raise ArgumentError(f"every N must be smaller than the data size {data.size}; got {too_big}.")

    tables = tables_for(tests, {(n, alpha) for n in n_list}, table_paths, tab_reps=tab_reps,
                        seed=seed, delta=delta, quantile=quantile, threads=threads)
    rows = bootstrap_study(data, n_list, reps, tables, seed, alpha=alpha,
                           replacement=replacement == "on", tests=tests, threads=threads)
    emit_rows([row.to_row() for row in rows], fmt)
