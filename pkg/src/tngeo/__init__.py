# src/tngeo/__init__.py
"""
TNGeo: a desk-scale lab for the geometry of tensor-network states.

Builds MPS, PEPS, MERA, finite-range and branching MERA geometries, measures
geodesics and min-cuts on them, evaluates correlators and entropies of
random instances, and fits the resulting scaling laws.
"""

__version__ = "0.1.0"

from tngeo.errors import (
    ConfigError,
    ConvergenceError,
    DegenerateSpectrumError,
    NumericError,
    SizeLimitError,
    TNGeoError,
)

__all__ = [
    "__version__",
    "ConfigError",
    "ConvergenceError",
    "DegenerateSpectrumError",
    "NumericError",
    "SizeLimitError",
    "TNGeoError",
]
