import click

from config import LOG_LEVEL
from extensions import configure_logging

# Command imports
from commands.tabulate.cli import tabulate_cmd
from commands.monitor.cli import monitor_cmd
from commands.simulate.cli import simulate_cmd
from commands.bootstrap.cli import bootstrap_cmd
from commands.consistency.cli import consistency_cmd

_VERBOSITY = {0: LOG_LEVEL, 1: "INFO"}


@click.group()
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for debug output (stderr).")
def cli(verbose):
    """Sequential DBEL and signed-rank tests for paired data."""
    configure_logging(_VERBOSITY.get(verbose, "DEBUG"))


# Register commands
cli.add_command(tabulate_cmd)
cli.add_command(monitor_cmd)
cli.add_command(simulate_cmd)
cli.add_command(bootstrap_cmd)
cli.add_command(consistency_cmd)


if __name__ == "__main__":
    cli()
