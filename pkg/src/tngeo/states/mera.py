# src/tngeo/states/mera.py
"""
Binary MERA states on a periodic ring.

Layer z maps a ring of width W/2 (scale z+1) to width W (scale z):

    psi_z = U_z W_z psi_{z+1}

Isometry i maps coarse site i to fine sites (2i, 2i+1); disentangler i then
acts on fine sites (2i+1, 2i+2 mod W), the same pairing the geometry
builders use (:mod:`tngeo.graphs.builders`).

Tensor layouts
--------------
- ``u[o1, o2, i1, i2]`` - unitary, lower (fine) legs first.
- ``w[o1, o2, c]``      - isometry ``sum_{o1,o2} conj(w[o1,o2,c]) w[o1,o2,c'] = delta``.

Site dimensions are ``d`` on the physical ring and ``chi`` above it, so a
scale-invariant MERA (one (u, w) pair reused at every layer) needs ``d == chi``.
The top is either a dense unit vector on the ``n_top`` top sites or an explicit
product of per-site unit vectors.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from tngeo.errors import SizeLimitError
from tngeo.states.entropy import central_block, subsystem_entropy
from tngeo.tensors.random import RandomSource, as_generator, complex_gaussian, random_isometry, random_unitary
from tngeo.tensors.tensor import Tensor, contract_network
from tngeo.utils.logging import get_logger

logger = get_logger(__name__)

MAX_AMPLITUDES = 2 ** 20
ISOMETRY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class MERALayer:
    """One disentangler/isometry pair shared by every position of a layer."""

    u: np.ndarray
    w: np.ndarray

    def __post_init__(self) -> None:
        u = np.array(self.u, dtype=np.complex128, copy=True)
        w = np.array(self.w, dtype=np.complex128, copy=True)
        if u.ndim != 4 or len(set(u.shape)) != 1:
            raise ValueError(f"disentangler must have shape (d, d, d, d), got {u.shape}")
        if w.ndim != 3 or w.shape[0] != w.shape[1]:
            raise ValueError(f"isometry must have shape (d, d, chi), got {w.shape}")
        if w.shape[0] != u.shape[0]:
            raise ValueError("disentangler and isometry lower legs differ in dimension")
        u.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "w", w)

    @property
    def fine_dim(self) -> int:
        return int(self.u.shape[0])

    @property
    def coarse_dim(self) -> int:
        return int(self.w.shape[2])

    def u_matrix(self) -> np.ndarray:
        d = self.fine_dim
        return self.u.reshape(d * d, d * d)

    def w_matrix(self) -> np.ndarray:
        d = self.fine_dim
        return self.w.reshape(d * d, self.coarse_dim)

    def constraint_errors(self) -> Tuple[float, float]:
        """``(||u†u - I||_max, ||w†w - I||_max)``."""
        um, wm = self.u_matrix(), self.w_matrix()
        eu = float(np.max(np.abs(um.conj().T @ um - np.eye(um.shape[1]))))
        ew = float(np.max(np.abs(wm.conj().T @ wm - np.eye(wm.shape[1]))))
        return eu, ew


@dataclass(frozen=True, eq=False)
class BinaryMERA:
    """
    Binary MERA with ``T`` layers on ``N = n_top * 2^T`` sites.

    Parameters
    ----------
    N : int
        Number of physical sites.
    layers : tuple of MERALayer
        ``layers[z]`` acts between scale z and z+1.
    top : np.ndarray, optional
        Dense unit vector on the ``n_top`` top sites.
    top_sites : tuple of np.ndarray, optional
        Per-site unit vectors of a product top (exactly one of ``top`` /
        ``top_sites`` is given).
    scale_invariant : bool
        All layers share one (u, w) pair.
    """

    N: int
    layers: Tuple[MERALayer, ...]
    top: Optional[np.ndarray] = None
    top_sites: Optional[Tuple[np.ndarray, ...]] = None
    scale_invariant: bool = False

    def __post_init__(self) -> None:
        layers = tuple(self.layers)
        object.__setattr__(self, "layers", layers)
        T = len(layers)
        if self.N < 1 or self.N % (2 ** T):
            raise ValueError(f"N={self.N} is not compatible with {T} layers")
        if self.N // 2 ** T < 1:
            raise ValueError("top width must be at least one site")
        for z in range(1, T):
            if layers[z].fine_dim != layers[z - 1].coarse_dim:
                raise ValueError(f"layer {z} fine dim does not match layer {z - 1} coarse dim")
        for z, layer in enumerate(layers):
            eu, ew = layer.constraint_errors()
            if eu > ISOMETRY_TOL or ew > ISOMETRY_TOL:
                raise ValueError(f"layer {z} violates isometric constraints (u: {eu:.2e}, w: {ew:.2e})")
        if self.scale_invariant and any(
            not (np.array_equal(l.u, layers[0].u) and np.array_equal(l.w, layers[0].w))
            for l in layers[1:]
        ):
            raise ValueError("scale-invariant MERA must reuse one (u, w) pair")
        if self.scale_invariant and layers and layers[0].fine_dim != layers[0].coarse_dim:
            raise ValueError("scale-invariant MERA needs d == chi")
        if (self.top is None) == (self.top_sites is None):
            raise ValueError("give exactly one of a dense top or product top sites")
        dt = self.top_dim
        if self.top is not None:
            top = np.array(self.top, dtype=np.complex128, copy=True).reshape(-1)
            if top.size != dt ** self.n_top:
                raise ValueError(f"dense top needs {dt}^{self.n_top} amplitudes, got {top.size}")
            nrm = np.linalg.norm(top)
            if nrm == 0:
                raise ValueError("top vector is zero")
            top = top / nrm
            top.setflags(write=False)
            object.__setattr__(self, "top", top)
        else:
            vecs = []
            for v in self.top_sites:
                v = np.array(v, dtype=np.complex128, copy=True).reshape(-1)
                if v.size != dt or np.linalg.norm(v) == 0:
                    raise ValueError(f"product top vectors must be nonzero of length {dt}")
                v = v / np.linalg.norm(v)
                v.setflags(write=False)
                vecs.append(v)
            if len(vecs) != self.n_top:
                raise ValueError(f"product top needs {self.n_top} vectors, got {len(vecs)}")
            object.__setattr__(self, "top_sites", tuple(vecs))

    # --- shape ------------------------------------------------------------------

    @property
    def T(self) -> int:
        return len(self.layers)

    @property
    def n_top(self) -> int:
        return self.N // 2 ** self.T

    @property
    def d(self) -> int:
        return self.layers[0].fine_dim if self.layers else self.top_dim

    @property
    def chi(self) -> int:
        return self.layers[-1].coarse_dim if self.layers else self.top_dim

    @property
    def top_dim(self) -> int:
        if self.layers:
            return self.layers[-1].coarse_dim
        if self.top_sites is not None:
            return int(np.asarray(self.top_sites[0]).size)
        return int(round(np.asarray(self.top).size ** (1.0 / self.N)))

    @property
    def product_top(self) -> bool:
        return self.top_sites is not None

    def width(self, z: int) -> int:
        return self.N // 2 ** z

    def site_dim(self, z: int) -> int:
        """Dimension of a site at scale ``z`` (``z = T`` is the top)."""
        return self.layers[z].fine_dim if z < self.T else self.top_dim

    def dense_top(self) -> np.ndarray:
        """Top amplitudes as a dense vector (product tops are expanded)."""
        if self.top is not None:
            return np.asarray(self.top)
        out = np.ones(1, dtype=np.complex128)
        for v in self.top_sites:
            out = np.kron(out, v)
        return out


# =============================================================================
# Construction
# =============================================================================

def random_layer(fine: int, coarse: int, rng: np.random.Generator) -> MERALayer:
    u = random_unitary(fine * fine, rng).data.reshape(fine, fine, fine, fine)
    w = random_isometry(fine * fine, coarse, rng).data.reshape(fine, fine, coarse)
    return MERALayer(u, w)


def _check_sizes(N: int, T: int, chi: int, d: int) -> None:
    if T < 0:
        raise ValueError(f"T must be >= 0, got {T}")
    if N < 2 or N % (2 ** T):
        raise ValueError(f"N={N} is not compatible with T={T} (N must be a multiple of 2^T)")
    if chi < d:
        raise ValueError(f"need chi >= d, got chi={chi}, d={d}")
    if T and chi > d * d:
        raise ValueError(f"isometry needs chi <= d^2, got chi={chi}, d={d}")


def random_mera(
    N: int,
    T: int,
    chi: int,
    seed: RandomSource,
    scale_invariant: bool = False,
    d: Optional[int] = None,
) -> BinaryMERA:
    """Seeded random MERA with Haar-like unitaries/isometries and a random dense top.

    ``d`` defaults to ``chi``; scale-invariant MERAs require ``d == chi``.
    """
    d = chi if d is None else d
    _check_sizes(N, T, chi, d)
    if scale_invariant and d != chi:
        raise ValueError(f"scale-invariant MERA needs d == chi, got d={d}, chi={chi}")
    rng = as_generator(seed)
    if scale_invariant:
        shared = random_layer(chi, chi, rng)
        layers = tuple(shared for _ in range(T))
    else:
        layers = tuple(random_layer(d if z == 0 else chi, chi, rng) for z in range(T))
    n_top = N // 2 ** T
    top_dim = chi if T else d
    top = complex_gaussian(top_dim ** n_top, rng)
    logger.debug("random_mera N=%d T=%d chi=%d d=%d scale_invariant=%s", N, T, chi, d, scale_invariant)
    return BinaryMERA(N, layers, top=top, scale_invariant=scale_invariant)


def product_layer(d: int) -> MERALayer:
    """Identity disentangler and the embedding ``w|i> = |i>|0>``."""
    u = np.eye(d * d).reshape(d, d, d, d)
    w = np.zeros((d, d, d))
    for i in range(d):
        w[i, 0, i] = 1.0
    return MERALayer(u, w)


def product_mera(N: int, T: int, d: int = 2, seed: RandomSource = 0) -> BinaryMERA:
    """Scale-invariant MERA of the product fixed point: an unentangled state."""
    _check_sizes(N, T, d, d)
    rng = as_generator(seed)
    layer = product_layer(d)
    tops = tuple(complex_gaussian(d, rng) for _ in range(N // 2 ** T))
    return BinaryMERA(N, tuple(layer for _ in range(T)), top_sites=tops, scale_invariant=True)


# =============================================================================
# State vectors
# =============================================================================

def _apply_pair(psi: np.ndarray, gate: np.ndarray, p: int, q: int) -> np.ndarray:
    """Apply a two-site gate ``gate[o1, o2, i1, i2]`` to axes ``(p, q)``."""
    out = np.tensordot(gate, psi, axes=([2, 3], [p, q]))
    return np.moveaxis(out, [0, 1], [p, q])


def _descend(m: BinaryMERA, psi: np.ndarray, z: int) -> np.ndarray:
    """Map amplitudes at scale z+1 (one axis per site) to scale z."""
    layer = m.layers[z]
    d = layer.fine_dim
    wm = layer.w_matrix()
    width = psi.ndim * 2
    for i in range(psi.ndim):
        psi = np.moveaxis(np.tensordot(wm, psi, axes=([1], [i])), 0, i)
    psi = psi.reshape((d,) * width)
    for i in range(width // 2):
        psi = _apply_pair(psi, layer.u, 2 * i + 1, (2 * i + 2) % width)
    return psi


def _check_size(m: BinaryMERA) -> None:
    if float(m.d) ** m.N > MAX_AMPLITUDES:
        raise SizeLimitError(f"state vector of {m.d}^{m.N} amplitudes exceeds the 2^20 cap")


def _network_tensors(m: BinaryMERA) -> List[Tensor]:
    tensors: List[Tensor] = []
    T = m.T
    if m.product_top:
        for i, v in enumerate(m.top_sites):
            tensors.append(Tensor(v, (f"z{T}_s{i}",)))
    else:
        shape = (m.top_dim,) * m.n_top
        tensors.append(Tensor(np.asarray(m.top).reshape(shape), tuple(f"z{T}_s{i}" for i in range(m.n_top))))
    for z, layer in enumerate(m.layers):
        W = m.width(z)
        for i in range(W // 2):
            tensors.append(Tensor(layer.w, (f"m{z}_s{2 * i}", f"m{z}_s{2 * i + 1}", f"z{z + 1}_s{i}")))
        for i in range(W // 2):
            p, q = 2 * i + 1, (2 * i + 2) % W
            tensors.append(Tensor(layer.u, (f"z{z}_s{p}", f"z{z}_s{q}", f"m{z}_s{p}", f"m{z}_s{q}")))
    return tensors


def state_vector(m: BinaryMERA, method: str = "layers") -> Tensor:
    """Explicit amplitudes (``d**N <= 2**20``).

    ``method="layers"`` descends layer by layer from the top;
    ``method="network"`` contracts the whole network in one opt_einsum call.
    """
    _check_size(m)
    labels = tuple(f"s{i}" for i in range(m.N))
    if method == "network":
        out = contract_network(_network_tensors(m), [f"z0_s{i}" for i in range(m.N)])
        return Tensor(out.data, labels)
    if method != "layers":
        raise ValueError(f"unknown state_vector method {method!r}")
    psi = m.dense_top().reshape((m.top_dim,) * m.n_top)
    for z in range(m.T - 1, -1, -1):
        psi = _descend(m, psi, z)
    return Tensor(psi, labels)


def block_entropy(m: BinaryMERA, L: int, start: Optional[int] = None) -> float:
    """Entropy (bits) of ``L`` contiguous sites, central by default."""
    _check_size(m)
    if start is None:
        block = list(central_block(m.N, L))
    else:
        if not 1 <= L < m.N:
            raise ValueError(f"block length L={L} must satisfy 1 <= L < N={m.N}")
        block = [(start + k) % m.N for k in range(L)]
    return subsystem_entropy(state_vector(m), [m.d] * m.N, block)
