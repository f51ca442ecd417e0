# src/tngeo/errors.py
"""
Exception hierarchy for TNGeo.

Class Hierarchy:
    TNGeoError (Exception)
    ├── ConfigError            - invalid experiment configuration (CLI exit 2)
    └── NumericError           - numerical failure (CLI exit 3)
        ├── ConvergenceError   - iterative solver hit its iteration cap
        └── DegenerateSpectrumError - eigenvalue moduli tie where a gap is needed

    SizeLimitError (ValueError) - explicit state vector would exceed the cap
"""
from __future__ import annotations

from typing import List, Optional


class TNGeoError(Exception):
    """Base class for all TNGeo errors."""


class ConfigError(TNGeoError):
    """Raised when an experiment configuration is rejected.

    Parameters
    ----------
    message : str
        Summary line.
    diagnostics : list of str, optional
        One entry per offending field (``"geometry.N: ..."``) or JSON
        location (``"line 3, column 7: ..."``).
    """

    exit_code = 2

    def __init__(self, message: str, diagnostics: Optional[List[str]] = None):
        self.diagnostics: List[str] = list(diagnostics or [])
        if self.diagnostics:
            message = message + "\n" + "\n".join(f"  {d}" for d in self.diagnostics)
        super().__init__(message)


class NumericError(TNGeoError):
    """Raised when a numerical routine cannot produce a trustworthy result."""

    exit_code = 3


class ConvergenceError(NumericError):
    """Raised when an iterative eigensolver exhausts its iteration budget."""


class DegenerateSpectrumError(NumericError):
    """Raised when eigenvalue moduli tie where a spectral gap is required."""


class SizeLimitError(ValueError):
    """Raised when an explicit state vector would exceed the amplitude cap."""
