# src/tngeo/tensors/eigen.py
"""
Eigensolvers for the two spectral problems the lab needs.

1. :func:`hermitian_eig` - full spectrum of a Hermitian matrix (reduced density
   matrices, Gram matrices).  Cyclic complex Jacobi rotations for small
   matrices; LAPACK (``numpy.linalg.eigh``) above ``JACOBI_MAX_DIM``.
2. :func:`dominant_eigs` - the ``k`` largest-modulus eigenpairs of a general
   square matrix (transfer matrices, scaling superoperators).  Power iteration
   with two-sided deflation; if an iteration stalls (typically a complex
   conjugate pair of equal modulus) the full dense spectrum is used instead.

Ties in modulus (within ``TIE_TOL``) are reported, never silently resolved.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, List, Tuple, Union

import numpy as np

from tngeo.errors import ConvergenceError
from tngeo.tensors.tensor import Tensor
from tngeo.utils.logging import get_logger

logger = get_logger(__name__)

JACOBI_MAX_DIM = 16
JACOBI_MAX_SWEEPS = 100
POWER_TOL = 1e-12
POWER_MAX_ITER = 100_000
TIE_TOL = 1e-10

MatrixLike = Union[Tensor, np.ndarray]


def _as_matrix(m: MatrixLike) -> np.ndarray:
    a = m.data if isinstance(m, Tensor) else np.asarray(m)
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def _fix_phases(vecs: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-modulus entry is real positive."""
    out = vecs.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        i = int(np.argmax(np.abs(col) - 1e-12 * np.arange(col.size)))
        if abs(col[i]) > 0:
            out[:, j] = col * (abs(col[i]) / col[i])
    return out


# =============================================================================
# Hermitian eigensolver
# =============================================================================

def _jacobi_hermitian(a: np.ndarray, tol: float) -> Tuple[np.ndarray, np.ndarray]:
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n, dtype=np.complex128)
    scale = max(float(np.linalg.norm(a)), 1e-300)
    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= tol * scale:
            return np.real(np.diag(a)).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mod = abs(apq)
                if mod <= 1e-300 or mod <= 1e-18 * scale:
                    continue
                phase = np.conj(apq) / mod
                theta = 0.5 * np.arctan2(2.0 * mod, (a[q, q] - a[p, p]).real)
                c, s = np.cos(theta), np.sin(theta)
                # G = diag(1, e^{-i phi}) @ [[c, s], [-s, c]]
                g = np.array([[c, s], [-s * phase, c * phase]], dtype=np.complex128)
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ g
    raise ConvergenceError(
        f"Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps (n={n})"
    )


def hermitian_eig(
    m: MatrixLike,
    *,
    method: str = "auto",
    tol: float = 1e-14,
) -> Tuple[np.ndarray, Tensor]:
    """Eigen-decomposition of a Hermitian matrix.

    Parameters
    ----------
    m : Tensor or np.ndarray
        Square Hermitian matrix (Hermitian within 1e-10 relative to its norm).
    method : {"auto", "jacobi", "lapack"}
        ``auto`` uses Jacobi for dimensions up to ``JACOBI_MAX_DIM``.
    tol : float
        Jacobi stopping threshold on the off-diagonal norm (relative).

    Returns
    -------
    eigenvalues : np.ndarray
        Real eigenvalues in descending order.
    eigenvectors : Tensor
        Labels ``("row", "k")``; column ``k`` is the unit eigenvector of
        ``eigenvalues[k]``.
    """
    a = _as_matrix(m)
    norm = max(1.0, float(np.linalg.norm(a)))
    if not np.allclose(a, a.conj().T, atol=1e-10 * norm, rtol=0.0):
        raise ValueError("hermitian_eig: input is not Hermitian within 1e-10")
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    if method == "auto":
        method = "jacobi" if n <= JACOBI_MAX_DIM else "lapack"
    if method == "jacobi":
        vals, vecs = _jacobi_hermitian(a, tol)
    elif method == "lapack":
        vals, vecs = np.linalg.eigh(a)
    else:
        raise ValueError(f"unknown hermitian_eig method '{method}'")
    order = np.argsort(-vals, kind="stable")
    vals = np.asarray(vals[order], dtype=float)
    vecs = _fix_phases(vecs[:, order])
    return vals, Tensor(vecs, ("row", "k"))


# =============================================================================
# Dominant eigenpairs of a general matrix
# =============================================================================

@dataclass
class EigenResult:
    """Dominant eigenpairs, modulus-descending.

    ``ties`` lists index pairs ``(i, i+1)`` whose moduli agree within ``TIE_TOL``.
    Iterating yields ``(eigenvalue, right_vector)`` pairs.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    ties: List[Tuple[int, int]] = field(default_factory=list)
    method: str = "power"

    @property
    def degenerate(self) -> bool:
        return bool(self.ties)

    def __iter__(self) -> Iterator[Tuple[complex, np.ndarray]]:
        for j, lam in enumerate(self.eigenvalues):
            yield complex(lam), self.eigenvectors[:, j]

    def __len__(self) -> int:
        return len(self.eigenvalues)


def _start_vector(n: int) -> np.ndarray:
    rng = np.random.default_rng(20240607)
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return x / np.linalg.norm(x)


def _power(b: np.ndarray, tol: float, max_iter: int) -> Tuple[complex, np.ndarray, bool]:
    """Power iteration; returns (lambda, unit vector, converged)."""
    n = b.shape[0]
    x = _start_vector(n)
    bnorm = max(float(np.linalg.norm(b)), 1e-300)
    best = np.inf
    last_check = np.inf
    lam = 0.0 + 0.0j
    for it in range(1, max_iter + 1):
        y = b @ x
        lam = complex(np.vdot(x, y))
        res = float(np.linalg.norm(y - lam * x))
        if res <= tol * bnorm:
            return lam, x, True
        ny = np.linalg.norm(y)
        if ny <= 1e-300:
            # x lies in the kernel: the remaining spectrum is zero
            return 0.0j, x, True
        x = y / ny
        best = min(best, res)
        if it % 400 == 0:
            if best > 0.5 * last_check:
                return lam, x, False
            last_check = best
    return lam, x, False


def _dense_dominant(a: np.ndarray, k: int) -> Tuple[np.ndarray, np.ndarray]:
    w, v = np.linalg.eig(a)
    order = sorted(range(len(w)), key=lambda i: (-round(abs(w[i]), 12), -w[i].real, -w[i].imag))
    order = order[:k]
    vecs = v[:, order]
    vecs = vecs / np.linalg.norm(vecs, axis=0, keepdims=True)
    return w[order], vecs


def _ties(vals: np.ndarray) -> List[Tuple[int, int]]:
    mods = np.abs(vals)
    return [(i, i + 1) for i in range(len(vals) - 1) if abs(mods[i] - mods[i + 1]) <= TIE_TOL]


def dominant_eigs(
    m: MatrixLike,
    k: int,
    *,
    tol: float = POWER_TOL,
    max_iter: int = POWER_MAX_ITER,
) -> EigenResult:
    """Return the ``k`` eigenvalues of largest modulus with right eigenvectors.

    Each pair satisfies ``m @ v = lam * v`` within ``1e-8 * ||m||``.

    Raises
    ------
    ValueError
        If ``k`` is not in ``[1, dim]``.
    ConvergenceError
        If neither power iteration nor the dense fallback meets the residual bound.
    """
    a = _as_matrix(m)
    n = a.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    anorm = max(float(np.linalg.norm(a)), 1e-300)

    vals: List[complex] = []
    vecs: List[np.ndarray] = []
    b = a.copy()
    method = "power"
    for _ in range(k):
        lam, v, ok = _power(b, tol, max_iter)
        if not ok:
            method = "dense"
            break
        lam_l, u, ok_l = _power(b.T, tol, max_iter)
        if not ok_l or abs(lam_l - lam) > 1e-8 * anorm:
            method = "dense"
            break
        overlap = complex(u @ v)
        if abs(overlap) < 1e-10:
            method = "dense"
            break
        vals.append(lam)
        vecs.append(v)
        b = b - lam * np.outer(v, u) / overlap

    if method == "power":
        w = np.asarray(vals, dtype=np.complex128)
        V = np.stack(vecs, axis=1)
        # deflation order can differ from modulus order when moduli are close
        order = sorted(range(k), key=lambda i: (-round(abs(w[i]), 12), -w[i].real, -w[i].imag))
        w, V = w[order], V[:, order]
    else:
        logger.debug("power iteration stalled (n=%d, k=%d); using dense spectrum", n, k)
        w, V = _dense_dominant(a, k)

    res = np.linalg.norm(a @ V - V * w[None, :], axis=0)
    if np.any(res > 1e-8 * anorm):
        if method == "power":
            logger.debug("power residual %.2e too large; using dense spectrum", float(res.max()))
            w, V = _dense_dominant(a, k)
            method = "dense"
            res = np.linalg.norm(a @ V - V * w[None, :], axis=0)
        if np.any(res > 1e-8 * anorm):
            raise ConvergenceError(
                f"dominant_eigs residual {float(res.max()):.3e} exceeds 1e-8*||m||"
            )
    return EigenResult(eigenvalues=w, eigenvectors=_fix_phases(V), ties=_ties(w), method=method)
