# src/tngeo/states/mps.py
"""
Matrix product states.

Conventions
-----------
- Site tensors have shape ``(chi_left, d, chi_right)``.
- The transfer matrix is ``T[(a, c), (b, d)] = Σ_s A[a, s, b] · conj(A[c, s, d])``
  (ket index first in each pair); an operator-dressed version inserts
  ``P[t, s]`` between ket ``s`` and bra ``t``.
- Row vectors act from the left: a chain of ``N`` sites has norm
  ``(l ⊗ l̄) T^N (r ⊗ r̄)``.
- A homogeneous MPS carries boundary vectors ``l`` and ``r``; by default they
  are the leading eigenvectors of the transfer-matrix fixed points, so finite
  chains mimic the infinite state near their centre.

Two entropy routes are provided: the environment route (Gram matrices built
from transfer-matrix powers, any N) and the explicit state-vector route
(``d**N <= 2**20``), which serves as the oracle.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from tngeo.errors import DegenerateSpectrumError, NumericError, SizeLimitError
from tngeo.states.entropy import central_block, entropy_bits, subsystem_entropy
from tngeo.tensors.eigen import EigenResult, TIE_TOL, dominant_eigs, hermitian_eig
from tngeo.tensors.random import RandomSource, as_generator, complex_gaussian
from tngeo.tensors.tensor import LocalOperator, Tensor
from tngeo.utils.logging import get_logger

logger = get_logger(__name__)

MAX_AMPLITUDES = 2 ** 20


def _check_state_size(d: int, N: int) -> None:
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if float(d) ** N > MAX_AMPLITUDES:
        raise SizeLimitError(f"state vector of {d}^{N} amplitudes exceeds the 2^20 cap")


# =============================================================================
# Transfer matrices
# =============================================================================

@dataclass(frozen=True, eq=False)
class TransferMatrix:
    """``chi² × chi²`` transfer matrix, optionally dressed by a site operator."""

    matrix: np.ndarray
    chi: int
    operator: Optional[LocalOperator] = None

    @classmethod
    def from_tensor(cls, A: np.ndarray, op: Optional[LocalOperator] = None) -> "TransferMatrix":
        chi_l, d, chi_r = A.shape
        if chi_l != chi_r:
            raise ValueError(f"transfer matrix needs a square site tensor, got {A.shape}")
        if op is None:
            t = np.einsum("asb,csd->acbd", A, A.conj())
        else:
            if op.dim != d:
                raise ValueError(f"operator dimension {op.dim} does not match site dimension {d}")
            t = np.einsum("asb,ts,ctd->acbd", A, op.matrix, A.conj())
        return cls(t.reshape(chi_l * chi_l, chi_r * chi_r), chi_l, op)

    def power_apply(self, vec: np.ndarray, n: int) -> np.ndarray:
        """Row vector ``vec @ T^n``."""
        out = vec
        for _ in range(n):
            out = out @ self.matrix
        return out


# =============================================================================
# State containers
# =============================================================================

def _fixed_point_vector(vec: np.ndarray, chi: int) -> np.ndarray:
    """Leading eigenvector of a transfer fixed point reshaped to ``chi × chi``."""
    mat = vec.reshape(chi, chi)
    tr = np.trace(mat)
    if abs(tr) > 1e-14:
        mat = mat * (abs(tr) / tr)
    mat = 0.5 * (mat + mat.conj().T)
    _, vecs = hermitian_eig(mat)
    return np.asarray(vecs.data[:, 0])


@dataclass(frozen=True, eq=False)
class HomogeneousMPS:
    """Translation-invariant MPS: one site tensor plus boundary vectors.

    Attributes
    ----------
    A : np.ndarray
        Site tensor of shape ``(chi, d, chi)``.
    left, right : np.ndarray
        Unit-norm boundary vectors of length ``chi``.
    scale : float
        Product of the factors divided out by :func:`normalize`.
    """

    A: np.ndarray
    left: np.ndarray
    right: np.ndarray
    scale: float = 1.0

    def __post_init__(self) -> None:
        A = np.array(self.A, dtype=np.complex128, copy=True)
        if A.ndim != 3 or A.shape[0] != A.shape[2]:
            raise ValueError(f"site tensor must have shape (chi, d, chi), got {A.shape}")
        if not np.all(np.isfinite(A)):
            raise ValueError("site tensor has non-finite entries")
        if not np.any(A):
            raise ValueError("site tensor is zero")
        vecs = []
        for name, v in (("left", self.left), ("right", self.right)):
            v = np.array(v, dtype=np.complex128, copy=True).reshape(-1)
            if v.shape != (A.shape[0],):
                raise ValueError(f"{name} boundary vector must have length {A.shape[0]}")
            nrm = np.linalg.norm(v)
            if nrm == 0:
                raise ValueError(f"{name} boundary vector is zero")
            v = v / nrm
            v.setflags(write=False)
            vecs.append(v)
        A.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "left", vecs[0])
        object.__setattr__(self, "right", vecs[1])

    @classmethod
    def from_tensor(
        cls,
        A: np.ndarray,
        left: Optional[np.ndarray] = None,
        right: Optional[np.ndarray] = None,
    ) -> "HomogeneousMPS":
        """Build from a site tensor; missing boundary vectors come from the fixed points."""
        A = np.asarray(A, dtype=np.complex128)
        if left is None or right is None:
            chi = A.shape[0]
            if chi == 1:
                fl = fr = np.ones(1)
            else:
                t = TransferMatrix.from_tensor(A).matrix
                fr = _fixed_point_vector(dominant_eigs(t, 1).eigenvectors[:, 0], chi)
                fl = _fixed_point_vector(dominant_eigs(t.T, 1).eigenvectors[:, 0], chi)
            left = fl if left is None else left
            right = fr if right is None else right
        return cls(A, left, right)

    @property
    def chi(self) -> int:
        return int(self.A.shape[0])

    @property
    def d(self) -> int:
        return int(self.A.shape[1])

    def transfer(self, op: Optional[LocalOperator] = None) -> TransferMatrix:
        return TransferMatrix.from_tensor(self.A, op)

    def to_finite(self, N: int) -> "FiniteMPS":
        """Open chain of ``N`` copies with the boundary vectors absorbed."""
        if N < 1:
            raise ValueError(f"N must be >= 1, got {N}")
        tensors = [self.A.copy() for _ in range(N)]
        tensors[0] = np.einsum("a,asb->sb", self.left, tensors[0])[None, :, :]
        tensors[-1] = np.einsum("asb,b->as", tensors[-1], self.right)[:, :, None]
        return FiniteMPS(tensors)


@dataclass(frozen=True, eq=False)
class FiniteMPS:
    """Open-boundary MPS with site-dependent tensors ``(chi_{i-1}, d_i, chi_i)``."""

    tensors: Tuple[np.ndarray, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        ts = tuple(np.array(t, dtype=np.complex128, copy=True) for t in self.tensors)
        if not ts:
            raise ValueError("FiniteMPS needs at least one site")
        for i, t in enumerate(ts):
            if t.ndim != 3:
                raise ValueError(f"site {i} tensor must be rank 3, got shape {t.shape}")
            if not np.all(np.isfinite(t)):
                raise ValueError(f"site {i} tensor has non-finite entries")
        if ts[0].shape[0] != 1 or ts[-1].shape[2] != 1:
            raise ValueError("open boundary requires outer bond dimensions of 1")
        for i in range(len(ts) - 1):
            if ts[i].shape[2] != ts[i + 1].shape[0]:
                raise ValueError(
                    f"bond {i}: right dim {ts[i].shape[2]} != left dim {ts[i + 1].shape[0]}"
                )
        for t in ts:
            t.setflags(write=False)
        object.__setattr__(self, "tensors", ts)
        nrm = self.norm()
        if not np.isfinite(nrm) or nrm <= 0:
            raise ValueError("FiniteMPS norm must be finite and nonzero")

    @property
    def num_sites(self) -> int:
        return len(self.tensors)

    @property
    def phys_dims(self) -> List[int]:
        return [int(t.shape[1]) for t in self.tensors]

    @property
    def bond_dims(self) -> List[int]:
        """Internal bond dimensions ``chi_1 .. chi_{N-1}``."""
        return [int(t.shape[2]) for t in self.tensors[:-1]]

    def norm(self) -> float:
        env = np.ones((1, 1), dtype=np.complex128)
        for t in self.tensors:
            env = np.einsum("ac,asb,csd->bd", env, t, t.conj())
        return float(np.sqrt(abs(env[0, 0])))

    def state_vector(self) -> Tensor:
        size = int(np.prod(self.phys_dims))
        if size > MAX_AMPLITUDES:
            raise SizeLimitError(f"state vector of {size} amplitudes exceeds the 2^20 cap")
        psi = self.tensors[0][0]
        for t in self.tensors[1:]:
            psi = np.tensordot(psi, t, axes=([-1], [0]))
        psi = psi[..., 0]
        return Tensor(psi, tuple(f"s{i}" for i in range(self.num_sites)))

    @classmethod
    def from_state_vector(
        cls,
        psi: np.ndarray,
        dims: Sequence[int],
        rtol: float = 1e-12,
    ) -> "FiniteMPS":
        """Exact MPS by sequential SVD, dropping only numerically zero Schmidt values."""
        dims = [int(d) for d in dims]
        rest = np.asarray(psi, dtype=np.complex128).reshape(-1)
        if rest.size != int(np.prod(dims)):
            raise ValueError(f"state has {rest.size} amplitudes, dims {dims} need {int(np.prod(dims))}")
        tensors = []
        chi = 1
        for i, d in enumerate(dims[:-1]):
            mat = rest.reshape(chi * d, -1)
            u, s, vh = np.linalg.svd(mat, full_matrices=False)
            keep = max(1, int(np.sum(s > rtol * s[0]))) if s.size and s[0] > 0 else 1
            tensors.append(u[:, :keep].reshape(chi, d, keep))
            rest = s[:keep, None] * vh[:keep]
            chi = keep
        tensors.append(rest.reshape(chi, dims[-1], 1))
        return cls(tuple(tensors))


# =============================================================================
# Construction
# =============================================================================

def product_mps(vector: np.ndarray) -> HomogeneousMPS:
    """χ = 1 MPS of the product state ``vector ⊗ vector ⊗ ...`` (normalised)."""
    v = np.asarray(vector, dtype=np.complex128).reshape(-1)
    nrm = np.linalg.norm(v)
    if nrm == 0:
        raise ValueError("product vector is zero")
    return HomogeneousMPS(v.reshape(1, -1, 1) / nrm, np.ones(1), np.ones(1))


DEFAULT_COUPLING = 0.2


def random_homogeneous_mps(
    chi: int,
    d: int,
    seed: RandomSource,
    coupling: Optional[float] = None,
) -> HomogeneousMPS:
    """Seeded random normalised homogeneous MPS.

    With ``coupling=None`` every entry is an independent complex Gaussian.
    With a coupling ``eps`` the bond space splits into two sectors of size
    ``chi/2``: each diagonal block is a normalised random MPS tensor and the
    off-diagonal blocks are random tensors of the same scale multiplied by
    ``eps``.  The subleading transfer eigenvalue is then real and isolated,
    ``1 - |lambda_2| = O(eps²)``.
    """
    if chi < 1 or d < 1:
        raise ValueError(f"chi and d must be positive, got chi={chi}, d={d}")
    rng = as_generator(seed)
    if coupling is None:
        A = complex_gaussian((chi, d, chi), rng)
    else:
        if chi < 2 or chi % 2:
            raise ValueError(f"two-sector ensemble needs an even chi >= 2, got {chi}")
        if coupling < 0:
            raise ValueError(f"coupling must be non-negative, got {coupling}")
        h = chi // 2
        blocks = [normalize(HomogeneousMPS(complex_gaussian((h, d, h), rng), np.ones(h), np.ones(h))).A
                  for _ in range(2)]
        off = [complex_gaussian((h, d, h), rng) for _ in range(2)]
        off = [o / np.sqrt(_spectral_radius(o)) for o in off]
        A = np.zeros((chi, d, chi), dtype=np.complex128)
        A[:h, :, :h] = blocks[0]
        A[h:, :, h:] = blocks[1]
        A[:h, :, h:] = coupling * off[0]
        A[h:, :, :h] = coupling * off[1]
    return normalize(HomogeneousMPS.from_tensor(A))


def _spectral_radius(A: np.ndarray) -> float:
    t = TransferMatrix.from_tensor(A).matrix
    return float(abs(dominant_eigs(t, 1).eigenvalues[0]))


# =============================================================================
# Operations
# =============================================================================

def normalize(m: HomogeneousMPS) -> HomogeneousMPS:
    """Rescale ``A`` so the dominant transfer eigenvalue is exactly 1.

    Raises
    ------
    ValueError
        If the dominant transfer eigenvalue vanishes.
    """
    lam = _spectral_radius(m.A)
    if lam <= 1e-300:
        raise ValueError("cannot normalise: dominant transfer eigenvalue is zero")
    factor = np.sqrt(lam)
    logger.debug("normalize chi=%d d=%d lambda1=%.6g", m.chi, m.d, lam)
    return HomogeneousMPS(m.A / factor, m.left, m.right, m.scale * float(factor))


def transfer_spectrum(m: HomogeneousMPS, k: int = 2) -> EigenResult:
    """The ``k`` dominant transfer eigenvalues (capped at chi²)."""
    t = m.transfer().matrix
    return dominant_eigs(t, min(k, t.shape[0]))


def correlation_length(m: HomogeneousMPS) -> float:
    """``xi = -1/ln|lambda_2|`` of a normalised MPS (``0`` when chi = 1).

    Raises
    ------
    ValueError
        If ``m`` is not normalised.
    DegenerateSpectrumError
        If ``|lambda_2|`` ties with ``|lambda_1|`` within 1e-10.
    """
    spec = transfer_spectrum(m, 2)
    lam1 = abs(spec.eigenvalues[0])
    if abs(lam1 - 1.0) > 1e-8:
        raise ValueError(f"correlation_length needs a normalised MPS (|lambda_1| = {lam1:.6g})")
    if len(spec) < 2:
        return 0.0
    lam2 = abs(spec.eigenvalues[1])
    if abs(lam1 - lam2) <= TIE_TOL:
        raise DegenerateSpectrumError(
            f"|lambda_2| = {lam2:.12g} ties with |lambda_1|; correlation length is ambiguous"
        )
    if lam2 <= 1e-300:
        return 0.0
    return float(-1.0 / np.log(lam2))


def _check_operators(m: HomogeneousMPS, *ops: LocalOperator) -> None:
    for op in ops:
        if op.dim != m.d:
            raise ValueError(f"operator dimension {op.dim} does not match site dimension {m.d}")


def _fixed_points(m: HomogeneousMPS) -> Tuple[np.ndarray, np.ndarray, float]:
    t = m.transfer().matrix
    right = dominant_eigs(t, 1)
    left = dominant_eigs(t.T, 1)
    lam = complex(right.eigenvalues[0])
    vl, vr = left.eigenvectors[:, 0], right.eigenvectors[:, 0]
    overlap = complex(vl @ vr)
    if abs(overlap) < 1e-14:
        raise NumericError("left and right transfer fixed points are orthogonal")
    return vl / overlap, vr, lam


def _finite_expectation(m: HomogeneousMPS, N: int, inserts: Dict[int, LocalOperator]) -> complex:
    t = m.transfer().matrix
    vec = np.kron(m.left, m.left.conj())
    for x in range(N):
        op = inserts.get(x)
        vec = vec @ (t if op is None else m.transfer(op).matrix)
    return complex(vec @ np.kron(m.right, m.right.conj()))


def two_point_correlator(
    m: HomogeneousMPS,
    P: LocalOperator,
    Q: LocalOperator,
    x1: int,
    x2: int,
    N: Optional[int] = None,
) -> complex:
    """Connected correlator ``<P_x1 Q_x2> - <P_x1><Q_x2>``.

    ``N=None`` evaluates the infinite chain from the transfer fixed points;
    otherwise the open ``N``-site chain with the boundary vectors of ``m``.
    """
    _check_operators(m, P, Q)
    if x1 == x2:
        raise ValueError("two_point_correlator needs x1 != x2")
    if x1 > x2:
        x1, x2, P, Q = x2, x1, Q, P
    if N is not None:
        if x1 < 0 or x2 >= N:
            raise ValueError(f"sites ({x1}, {x2}) outside chain of length {N}")
        norm = _finite_expectation(m, N, {})
        if abs(norm) <= 1e-300:
            raise NumericError("finite chain has zero norm")
        pq = _finite_expectation(m, N, {x1: P, x2: Q}) / norm
        p = _finite_expectation(m, N, {x1: P}) / norm
        q = _finite_expectation(m, N, {x2: Q}) / norm
        return complex(pq - p * q)
    vl, vr, lam = _fixed_points(m)
    t = m.transfer().matrix / lam
    tp = m.transfer(P).matrix / lam
    tq = m.transfer(Q).matrix / lam
    left = vl @ tp
    mid = left
    for _ in range(x2 - x1 - 1):
        mid = mid @ t
    pq = complex(mid @ tq @ vr)
    p = complex(left @ vr)
    q = complex(vl @ tq @ vr)
    return complex(pq - p * q)


def correlator_profile(
    m: HomogeneousMPS,
    P: LocalOperator,
    Q: LocalOperator,
    separations: Sequence[int],
) -> np.ndarray:
    """Infinite-chain connected correlators ``C(r)`` for each separation ``r >= 1``."""
    _check_operators(m, P, Q)
    rs = [int(r) for r in separations]
    if any(r < 1 for r in rs):
        raise ValueError("separations must be >= 1")
    vl, vr, lam = _fixed_points(m)
    t = m.transfer().matrix / lam
    tq_vr = (m.transfer(Q).matrix / lam) @ vr
    left = vl @ (m.transfer(P).matrix / lam)
    mean = complex(left @ vr) * complex(vl @ tq_vr)
    out = {}
    vec = left
    for r in range(1, max(rs) + 1):
        if r > 1:
            vec = vec @ t
        out[r] = complex(vec @ tq_vr) - mean
    return np.array([out[r] for r in rs])


def state_vector(m: HomogeneousMPS, N: int, normalize_state: bool = True) -> Tensor:
    """Explicit amplitudes of the ``N``-site chain (``d**N <= 2**20``)."""
    _check_state_size(m.d, N)
    psi = m.to_finite(N).state_vector()
    if not normalize_state:
        return psi
    nrm = psi.norm()
    if nrm <= 1e-300:
        raise NumericError("state vector has zero norm")
    return psi.scale(1.0 / nrm)


def _gram_sqrt(mat: np.ndarray) -> np.ndarray:
    vals, vecs = hermitian_eig(0.5 * (mat + mat.conj().T))
    v = vecs.data
    return (v * np.sqrt(np.clip(vals, 0.0, None))[None, :]) @ v.conj().T


def block_entropy(
    m: HomogeneousMPS,
    L: int,
    N: int,
    method: str = "environment",
) -> float:
    """Entropy (bits) of the ``L`` central sites of the ``N``-site chain.

    ``method="environment"`` builds the left/right environment Gram matrices
    from transfer-matrix powers (any N); ``method="state"`` partial-traces the
    explicit state vector.
    """
    block = central_block(N, L)
    if method == "state":
        _check_state_size(m.d, N)
        return subsystem_entropy(state_vector(m, N), [m.d] * N, block)
    if method != "environment":
        raise ValueError(f"unknown block_entropy method {method!r}")
    chi = m.chi
    tm = m.transfer()
    gl = tm.power_apply(np.kron(m.left, m.left.conj()), block.start).reshape(chi, chi)
    tr = m.right
    vr = np.kron(tr, tr.conj())
    for _ in range(N - block.stop):
        vr = tm.matrix @ vr
    gr = vr.reshape(chi, chi)
    tL = np.linalg.matrix_power(tm.matrix, L)
    gamma = tL.reshape(chi, chi, chi, chi).transpose(1, 3, 0, 2).reshape(chi * chi, chi * chi)
    w_half = _gram_sqrt(np.kron(gl, gr))
    rho = w_half @ gamma @ w_half
    vals, _ = hermitian_eig(0.5 * (rho + rho.conj().T))
    return entropy_bits(np.clip(vals, 0.0, None))
