import logging

import click

from config import POWER_REPS
from commands.shared import emit_rows, parse_tests, table_options, tables_for
from decorators import exit_on_error, monte_carlo_options
from lab.power import power_study
from lab.scenario import load_scenarios
from utils.validation import ArgumentError

logger = logging.getLogger(__name__)


@click.command("simulate")
@click.option("--scenario", "scenario_paths", type=click.Path(), multiple=True,
              required=True, help="Scenario TOML file or directory of them (repeatable).")
@click.option("--reps", type=click.IntRange(min=1), default=POWER_REPS, show_default=True)
@click.option("--tests", "tests", default="dbel,ssrt", show_default=True,
              help="Comma-separated tests to run on the same replications.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@table_options
@monte_carlo_options
@exit_on_error
def simulate_cmd(scenario_paths, reps, tests, fmt, table_paths, tab_reps, delta, quantile, seed, threads):
    """Monte Carlo power and ASN for each scenario and test."""
    tests = parse_tests(tests)
    scenarios = []
    for path in scenario_paths:
        scenarios.extend(load_scenarios(path))
    if not scenarios:
        raise ArgumentError("no scenarios found in " + ", ".join(scenario_paths))

    required = {(s.max_n, s.alpha) for s in scenarios}
    tables = tables_for(tests, required, table_paths, tab_reps=tab_reps, seed=seed,
                        delta=delta, quantile=quantile, threads=threads)

    rows = []
    for scenario in scenarios:
        results = power_study(scenario, tables, reps, seed, tests=tests, threads=threads)
        for test in tests:
            rows.append(results[test].to_row())
    logger.info("simulated %d scenario(s), %d row(s)", len(scenarios), len(rows))
    emit_rows(rows, fmt)
