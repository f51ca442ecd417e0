# src/tngeo/utils/__init__.py
"""Logging, seeding and configuration helpers."""
from tngeo.utils.logging import configure_logging, get_logger
from tngeo.utils.seeding import SeedLike, derive_seed, make_rng

__all__ = ["configure_logging", "get_logger", "SeedLike", "derive_seed", "make_rng"]
