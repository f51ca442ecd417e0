# src/tngeo/tensors/random.py
"""
Seeded random tensors.

All generators draw complex standard Gaussian entries (real and imaginary
parts independent N(0, 1/2)) from a PCG64 stream, so a given seed produces
bitwise-identical output on every platform numpy supports.
"""
from __future__ import annotations

from typing import Union

import numpy as np

from tngeo.tensors.tensor import LocalOperator, Tensor
from tngeo.utils.seeding import SeedLike, make_rng

RandomSource = Union[SeedLike, np.random.Generator]


def as_generator(seed: RandomSource) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return make_rng(seed)


def complex_gaussian(shape, seed: RandomSource) -> np.ndarray:
    rng = as_generator(seed)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_isometry(rows: int, cols: int, seed: RandomSource) -> Tensor:
    """Random isometry ``W`` (rows × cols) with ``W†W = I_cols``.

    A Gaussian matrix is orthonormalized by QR; each column is then multiplied
    by the phase of the matching diagonal entry of R so that R has a real
    positive diagonal, which makes the factorization (and the output) unique.

    Returns a Tensor labelled ``("row", "col")``.
    """
    if rows < 1 or cols < 1:
        raise ValueError(f"random_isometry needs positive sizes, got {rows}x{cols}")
    if rows < cols:
        raise ValueError(f"random_isometry needs rows >= cols, got {rows} < {cols}")
    g = complex_gaussian((rows, cols), seed)
    q, r = np.linalg.qr(g)
    diag = np.diag(r)
    phases = np.where(np.abs(diag) > 0, diag / np.abs(diag), 1.0)
    q = q * phases[None, :]
    return Tensor(q, ("row", "col"))


def random_unitary(dim: int, seed: RandomSource) -> Tensor:
    return random_isometry(dim, dim, seed)


def random_local_operator(dim: int, seed: RandomSource, traceless: bool = True) -> LocalOperator:
    """Seeded random Hermitian operator (traceless by default), unit Frobenius norm."""
    if dim < 1:
        raise ValueError(f"operator dimension must be positive, got {dim}")
    g = complex_gaussian((dim, dim), seed)
    h = 0.5 * (g + g.conj().T)
    if traceless:
        h = h - np.trace(h) / dim * np.eye(dim)
    nrm = np.linalg.norm(h)
    if nrm > 0:
        h = h / nrm
    return LocalOperator(h)
