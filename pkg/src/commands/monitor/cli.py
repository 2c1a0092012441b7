import logging

import click

from config import DEFAULT_DELTA, EXIT_INCONCLUSIVE
from decorators import exit_on_error
from sequential.engine import Decision, MonitorState, StoppingPolicy, resolve_test
from utils.serialization import dumps_line, is_skippable, load_table, parse_observation
from utils.validation import ArgumentError, ConfigurationError

logger = logging.getLogger(__name__)


def build_policy(test, max_n, alpha, table_path, critical, delta) -> StoppingPolicy:
    """Policy from either a table file or an explicit critical value."""
    if (table_path is None) == (critical is None):
        raise ArgumentError("give exactly one of --table or --critical.")
    test = resolve_test(test)
    if critical is not None:
        return StoppingPolicy(test=test, max_n=max_n, alpha=alpha, critical=critical, delta=delta)

    table = load_table(table_path)
    if table.test is not test:
        raise ConfigurationError(f"{table_path} is a {table.test.value} table, not {test.value}.")
    return StoppingPolicy.from_table(table, max_n, alpha)


def _decoded(lines):
    """(lineno, text) for str or UTF-8 byte lines."""
    for lineno, line in enumerate(lines, start=1):
        if isinstance(line, bytes):
            try:
                line = line.decode("utf-8")
            except UnicodeDecodeError:
                raise ArgumentError(f"line {lineno}: not valid UTF-8.") from None
        yield lineno, line


def monitor_stream(policy: StoppingPolicy, lines, fmt: str = "diffs", *, negate: bool = False):
    """Yield one record per consumed observation, then the summary record.

    Lines after a stop are not read.
    """
    state = MonitorState(policy)
    for lineno, line in _decoded(lines):
        if is_skippable(line):
            continue
        z = parse_observation(line, fmt, negate=negate, lineno=lineno)
        point = state.feed(z)
        yield point.to_dict(policy.test)
        if point.decision is not Decision.CONTINUE:
            break

    if state.n == 0:
        yield {"stopped_at": 0, "rejected": False, "inconclusive": True}
        return
    outcome = state.outcome()
    yield {**outcome.summary(), "inconclusive": outcome.inconclusive}


@click.command("monitor")
@click.argument("source", type=click.File("rb"), default="-")
@click.option("--test", "test", type=click.Choice(["dbel", "ssrt"]), required=True)
@click.option("--table", "table_path", type=click.Path(dir_okay=False), default=None,
              help="Critical-value table JSON written by `tabulate`.")
@click.option("--critical", type=float, default=None, help="Explicit critical value.")
@click.option("--max-n", "max_n", type=click.IntRange(min=1), required=True)
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["pairs", "diffs"]), default="diffs",
              show_default=True, help="Input lines are 'x,y' pairs or single differences.")
@click.option("--delta", type=float, default=DEFAULT_DELTA, show_default=True,
              help="DBEL m-grid exponent (ignored with --table).")
@click.option("--negate", is_flag=True, help="Use y - x instead of x - y.")
@click.option("--pretty", is_flag=True, help="Human-readable summary on stderr.")
@exit_on_error
def monitor_cmd(source, test, table_path, critical, max_n, alpha, fmt, delta, negate, pretty):
    """Run a sequential test over a stream of paired observations (file or stdin)."""
    policy = build_policy(test, max_n, alpha, table_path, critical, delta)
    logger.info("monitoring %s N=%d alpha=%s critical=%.4f", policy.test.value, policy.max_n,
                policy.alpha, policy.critical)

    summary = None
    for record in monitor_stream(policy, source, fmt, negate=negate):
        click.echo(dumps_line(record))
        summary = record

    if pretty:
        if summary["rejected"]:
            verdict = f"rejected H0 at n={summary['stopped_at']}"
        elif summary["inconclusive"]:
            verdict = f"input ended at n={summary['stopped_at']} before N={policy.max_n}; inconclusive"
        else:
            verdict = f"did not reject H0 by N={policy.max_n}"
        click.echo(f"{policy.test.value.upper()} (critical {policy.critical:.4f}): {verdict}", err=True)

    if summary["inconclusive"]:
        raise click.exceptions.Exit(EXIT_INCONCLUSIVE)
