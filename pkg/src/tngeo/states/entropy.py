# src/tngeo/states/entropy.py
"""Entanglement entropy of explicit state vectors (the brute-force oracle)."""
from __future__ import annotations

from typing import Iterable, Sequence, Union

import numpy as np

from tngeo.tensors.eigen import hermitian_eig
from tngeo.tensors.tensor import Tensor

PROB_FLOOR = 1e-15


def entropy_bits(probabilities: Iterable[float]) -> float:
    """Shannon entropy in bits of a (renormalised) probability vector."""
    p = np.clip(np.asarray(list(probabilities), dtype=float), 0.0, None)
    total = p.sum()
    if total <= 0:
        raise ValueError("probabilities sum to zero")
    p = p / total
    p = p[p > PROB_FLOOR]
    return float(-(p * np.log2(p)).sum()) if p.size else 0.0


def _as_array(psi: Union[Tensor, np.ndarray]) -> np.ndarray:
    return np.asarray(psi.data if isinstance(psi, Tensor) else psi, dtype=np.complex128)


def schmidt_spectrum(psi: Union[Tensor, np.ndarray], dims: Sequence[int], block: Iterable[int]) -> np.ndarray:
    """Eigenvalues of the reduced density matrix of ``block`` (descending, sum 1).

    ``psi`` holds ``prod(dims)`` amplitudes in row-major site order.  The
    Gram matrix of whichever side of the cut is smaller is diagonalised, so
    the cost depends on the smaller subsystem only.
    """
    dims = [int(d) for d in dims]
    amps = _as_array(psi).reshape(dims)
    block = sorted(set(int(i) for i in block))
    if not block or any(not 0 <= i < len(dims) for i in block):
        raise ValueError(f"block {block} is not a nonempty subset of sites 0..{len(dims) - 1}")
    rest = [i for i in range(len(dims)) if i not in block]
    if not rest:
        return np.array([1.0])
    da = int(np.prod([dims[i] for i in block]))
    db = int(np.prod([dims[i] for i in rest]))
    m = np.transpose(amps, block + rest).reshape(da, db)
    gram = m @ m.conj().T if da <= db else m.conj().T @ m
    vals, _ = hermitian_eig(gram)
    vals = np.clip(vals, 0.0, None)
    total = vals.sum()
    if total <= 0:
        raise ValueError("state vector has zero norm")
    return vals / total


def subsystem_entropy(psi: Union[Tensor, np.ndarray], dims: Sequence[int], block: Iterable[int]) -> float:
    """von Neumann entropy (bits) of ``block`` for the pure state ``psi``."""
    return entropy_bits(schmidt_spectrum(psi, dims, block))


def central_block(N: int, L: int) -> range:
    """Sites of the length-``L`` block centred in an ``N``-site chain."""
    if not 1 <= L < N:
        raise ValueError(f"block length L={L} must satisfy 1 <= L < N={N}")
    start = (N - L) // 2
    return range(start, start + L)
