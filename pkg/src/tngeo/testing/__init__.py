# src/tngeo/testing/__init__.py
"""
TNGeo Testing Utilities.

Brute-force oracles and instance helpers shared by the test suite.

Usage
-----
>>> from tngeo.testing import dense_correlator, dense_block_entropy
>>> from tngeo.testing import well_conditioned_mera
"""

from .testing_utils import (
    SpectrumGap,
    central_blocks,
    dense_block_entropy,
    dense_correlator,
    dense_expectation,
    entropy_bound_violations,
    log_slope,
    random_hermitian,
    scaling_gap,
    well_conditioned_mera,
)

__all__ = [
    "SpectrumGap",
    "central_blocks",
    "dense_block_entropy",
    "dense_correlator",
    "dense_expectation",
    "entropy_bound_violations",
    "log_slope",
    "random_hermitian",
    "scaling_gap",
    "well_conditioned_mera",
]
