from functools import wraps

import click

from config import DEFAULT_SEED, WORKER_THREADS


def seed_option(f):
    return click.option(
        "--seed", type=int, default=DEFAULT_SEED, show_default=True,
        help="Master seed; replication i's stream depends only on (seed, i).",
    )(f)


def threads_option(f):
    return click.option(
        "--threads", type=click.IntRange(min=1), default=WORKER_THREADS, show_default=True,
        help="Worker processes for the replication pool.",
    )(f)


def monte_carlo_options(f):
    """--seed and --threads, with the seed echoed to stderr before the run."""
    @wraps(f)
    def decorated(*args, **kwargs):
        click.echo(f"# seed={kwargs['seed']} threads={kwargs['threads']}", err=True)
        return f(*args, **kwargs)
    return seed_option(threads_option(decorated))
