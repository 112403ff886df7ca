"""
Logging helpers used across the decision procedures.

Modules call ``log`` for progress messages and ``log_error`` when a
recoverable failure is swallowed; the command line flips verbosity with
``set_debug_mode``.
"""

import logging
import sys

from src.core.constants import LOG_FORMAT, LOG_LEVEL

ROOT_LOGGER = "datawords"

_configured = False


def _configure():
    global _configured
    if _configured:
        return
    root = logging.getLogger(ROOT_LOGGER)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(getattr(logging, LOG_LEVEL, logging.WARNING))
    root.propagate = False
    _configured = True


def get_logger(name):
    """Child logger under the package root, e.g. ``datawords.adc.search``."""
    _configure()
    if name.startswith("src."):
        name = name[len("src."):]
    return logging.getLogger(f"{ROOT_LOGGER}.{name}")


def log(message, *args, name="core", level=logging.DEBUG):
    get_logger(name).log(level, message, *args)


def log_error(message, error=None, name="core"):
    if error is not None:
        get_logger(name).error("%s: %s", message, error)
    else:
        get_logger(name).error(message)


def log_search(kind, name="search", **stats):
    """One line of enumeration statistics, e.g. ``[adc] partitions=12 supports=40``."""
    rendered = " ".join(f"{key}={stats[key]}" for key in sorted(stats))
    get_logger(name).debug("[%s] %s", kind, rendered)


def set_debug_mode(enabled):
    _configure()
    logging.getLogger(ROOT_LOGGER).setLevel(logging.DEBUG if enabled else getattr(logging, LOG_LEVEL, logging.WARNING))
    return enabled
