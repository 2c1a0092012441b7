import click

from config import CONSISTENCY_REPS, DEFAULT_DELTA
from commands.shared import emit_rows, parse_n_list
from decorators import exit_on_error, monte_carlo_options
from lab.consistency import empirical_consistency_check
from lab.distributions import DistributionSpec



@click.command("consistency")
@click.option("--n-list", "n_list", default="25,50,100,200", show_default=True)
@click.option("--gamma", type=float, default=0.95, show_default=True,
              help="Threshold exponent: crossing means max log V_n > N^gamma.")
@click.option("--reps", type=click.IntRange(min=1), default=CONSISTENCY_REPS, show_default=True)
@click.option("--null", "null_gen", default="normal:0,1", show_default=True,
              help="Null generator of differences, as family:params.")
@click.option("--alt", "alt_gen", default="normal:1,1", show_default=True,
              help="Alternative generator of differences, as family:params.")
@click.option("--delta", type=float, default=DEFAULT_DELTA, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@monte_carlo_options
@exit_on_error
def consistency_cmd(n_list, gamma, reps, null_gen, alt_gen, delta, fmt, seed, threads):
    """Crossing fractions of the DBEL stopping statistic under a null and an alternative."""
    rows = empirical_consistency_check(
        parse_n_list(n_list), gamma, reps,
        DistributionSpec.parse(null_gen), DistributionSpec.parse(alt_gen),
        seed=seed, delta=delta, threads=threads,
    )
    emit_rows([row.to_row() for row in rows], fmt)
