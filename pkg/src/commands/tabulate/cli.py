import logging

import click

from config import DEFAULT_DELTA, QUANTILE_METHOD, TABULATE_REPS
from decorators import exit_on_error, monte_carlo_options
from lab.critical import QUANTILE_METHODS, tabulate_table
from lab.distributions import STANDARD_NULLS
from utils.serialization import dump_table

logger = logging.getLogger(__name__)


@click.command("tabulate")
@click.option("--test", "test", type=click.Choice(["dbel", "ssrt"]), required=True)
@click.option("--max-n", "max_n", type=click.IntRange(min=1), multiple=True, required=True,
              help="Maximum sample size N (repeatable; one run serves every N).")
@click.option("--alpha", "alphas", type=float, multiple=True, default=(0.05,), show_default=True,
              help="Significance level (repeatable).")
@click.option("--reps", type=click.IntRange(min=1), default=TABULATE_REPS, show_default=True)
@click.option("--delta", type=float, default=DEFAULT_DELTA, show_default=True,
              help="m-grid exponent for the DBEL statistic.")
@click.option("--quantile", type=click.Choice(QUANTILE_METHODS), default=QUANTILE_METHOD,
              show_default=True)
@click.option("--null", "null", type=click.Choice(sorted(STANDARD_NULLS)), default="normal",
              show_default=True, help="Symmetric null generator for the replications.")
@click.option("--out", "out", type=click.Path(dir_okay=False, writable=True), default=None,
              help="Write the table here instead of stdout.")
@click.option("--pretty", is_flag=True, help="Also print an N x alpha grid on stderr.")
@monte_carlo_options
@exit_on_error
def tabulate_cmd(test, max_n, alphas, reps, delta, quantile, null, out, pretty, seed, threads):
    """Tabulate Monte Carlo critical values of a sequential test."""
    table = tabulate_table(
        test, max_n, alphas, reps, seed, delta,
        quantile=quantile, null=null, threads=threads,
    )
    for problem in table.monotonicity_violations():
        logger.warning("table not monotone: %s", problem)

    text = dump_table(table, out)
    if out is None:
        click.echo(text)
    else:
        logger.info("wrote %s table to %s", table.test.value, out)

    if pretty:
        header = "N".rjust(5) + "".join(f"{a:>10.3f}" for a in table.alphas)
        click.echo(header, err=True)
        for n in table.ns:
            cells = "".join(
                f"{table.critical(n, a):>10.3f}" if table.has(n, a) else " " * 10
                for a in table.alphas
            )
            click.echo(f"{n:>5}{cells}", err=True)
