# src/tngeo/utils/seeding.py
"""Seed derivation: one PCG64 stream per (master seed, point key)."""
from __future__ import annotations

from typing import Sequence, Union

import numpy as np

SeedLike = Union[int, Sequence[int]]


def make_rng(seed: SeedLike) -> np.random.Generator:
    """PCG64 generator for an integer seed or an integer key path."""
    if isinstance(seed, (int, np.integer)):
        if seed < 0:
            raise ValueError(f"seed must be non-negative, got {seed}")
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(s) for s in seed])))


def derive_seed(master: int, *keys: int) -> int:
    """Deterministic 63-bit child seed for ``master`` and integer ``keys``.

    Independent of the order in which sweep points are executed.
    """
    ss = np.random.SeedSequence([int(master), *[int(k) for k in keys]])
    return int(ss.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))
