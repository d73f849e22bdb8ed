"""Standard logging configuration for the netcorr CLI.

Reports are written to stdout (or ``--output``) and must stay byte-identical
between runs, so every log record goes to stderr and nothing here ever
writes a timestamp into a report.
"""

import logging
import sys

DEFAULT_FORMAT = "%(levelname)-8s %(asctime)s %(filename)s:%(lineno)d %(message)s"
DEFAULT_DATEFMT = "%Y-%m-%d %H:%M:%S"


def log_level(verbose: bool = False, quiet: bool = False) -> int:
    """Map the CLI's ``--verbose`` / ``--quiet`` pair to a logging level.

    ``verbose`` wins when both are set.
    """
    if verbose:
        return logging.DEBUG
    if quiet:
        return logging.WARNING
    return logging.INFO


def setup_logging(verbose: bool = False, quiet: bool = False) -> None:
    """Configure the root logger with netcorr's standard format on stderr.

    Args:
        verbose: Log at DEBUG (per-trial scan detail, eigenvalue dumps).
        quiet: Log at WARNING; milestones are suppressed.
    """
    logging.basicConfig(
        level=log_level(verbose, quiet),
        format=DEFAULT_FORMAT,
        datefmt=DEFAULT_DATEFMT,
        stream=sys.stderr,
        force=True,
    )
