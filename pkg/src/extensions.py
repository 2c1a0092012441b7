# Shared logging setup. Configured once per invocation by the CLI group in app.py.
import logging
import sys

from config import LOG_LEVEL

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level=LOG_LEVEL) -> logging.Logger:
    """Route package logs to stderr so stdout stays machine-readable."""
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.WARNING

    root = logging.getLogger()
    # sys.stderr may have been swapped since the last call; bind a fresh handler to it
    for old in [h for h in root.handlers if getattr(h, "_seqdbel", False)]:
        root.removeHandler(old)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler._seqdbel = True
    root.addHandler(handler)
    root.setLevel(level)
    return root
