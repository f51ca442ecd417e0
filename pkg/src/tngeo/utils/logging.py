# src/tngeo/utils/logging.py
"""
Logger helpers.

Library modules call :func:`get_logger` and never attach handlers; the CLI
calls :func:`configure_logging` once.  Records carry the bracketed component
tag used throughout the package, e.g. ``[tngeo.states.mps] normalized chi=4``.
"""
from __future__ import annotations

import logging
import sys
from typing import Optional, TextIO

_FORMAT = "[%(name)s] %(message)s"


def get_logger(name: str) -> logging.Logger:
    """Return the package logger for ``name`` (usually ``__name__``)."""
    logger = logging.getLogger(name)
    if name.startswith("tngeo") and not logging.getLogger("tngeo").handlers:
        logging.getLogger("tngeo").addHandler(logging.NullHandler())
    return logger


def configure_logging(verbose: bool = False, stream: Optional[TextIO] = None) -> None:
    """Attach a single stderr handler to the ``tngeo`` logger tree."""
    root = logging.getLogger("tngeo")
    for h in list(root.handlers):
        root.removeHandler(h)
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(logging.Formatter(_FORMAT))
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)
    root.propagate = False
