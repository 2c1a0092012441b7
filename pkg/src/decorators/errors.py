import logging
from functools import wraps

import click

from config import EXIT_USAGE
from utils.validation import SeqDbelError

logger = logging.getLogger(__name__)


def exit_on_error(f):
    """For CLI commands. Library errors and missing files become a one-line
    message on stderr and exit code 2; anything else is logged and re-raised."""
    @wraps(f)
    def decorated(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except (SeqDbelError, FileNotFoundError) as exc:
            click.echo(f"Error: {exc}", err=True)
            raise click.exceptions.Exit(EXIT_USAGE)
        except (click.exceptions.ClickException, click.exceptions.Exit):
            raise
        except Exception:
            logger.exception("Unexpected error in %s", f.__name__)
            raise
    return decorated
