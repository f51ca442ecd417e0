# src/tngeo/states/causal_cone.py
"""
Causal-cone evaluation of local expectation values in a binary MERA.

A product of local operators is lifted layer by layer with the ascending
map ``O -> W† U† O U W``.  Only disentanglers and isometries that touch the
current support are applied, so the cost depends on the support width and
on T, never on N.  Operators with disjoint supports are kept as separate
factors until a tensor couples them, at which point they are merged.

Every operator is stored as a tensor with the output axes of its sites
followed by their input axes, i.e. ``t[o_1..o_k, i_1..i_k]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from tngeo.states.mera import BinaryMERA, MERALayer
from tngeo.tensors.eigen import EigenResult, dominant_eigs
from tngeo.tensors.tensor import LocalOperator
from tngeo.utils.logging import get_logger

logger = get_logger(__name__)

OperatorLike = Union[LocalOperator, np.ndarray]


@dataclass
class _ConeOp:
    """Operator factor on the listed sites of the current scale."""

    sites: List[int]
    t: np.ndarray

    @property
    def k(self) -> int:
        return len(self.sites)

    @classmethod
    def single(cls, site: int, matrix: np.ndarray) -> "_ConeOp":
        return cls([site], np.asarray(matrix, dtype=np.complex128))

    def merge(self, other: "_ConeOp") -> "_ConeOp":
        k1, k2 = self.k, other.k
        t = np.multiply.outer(self.t, other.t)
        perm = (
            list(range(k1))
            + list(range(2 * k1, 2 * k1 + k2))
            + list(range(k1, 2 * k1))
            + list(range(2 * k1 + k2, 2 * k1 + 2 * k2))
        )
        return _ConeOp(self.sites + other.sites, np.transpose(t, perm))

    def extend(self, site: int, dim: int) -> None:
        if site in self.sites:
            return
        k = self.k
        t = np.multiply.outer(self.t, np.eye(dim))
        perm = list(range(k)) + [2 * k] + list(range(k, 2 * k)) + [2 * k + 1]
        self.t = np.transpose(t, perm)
        self.sites.append(site)

    def conj_gate(self, g: np.ndarray, p: int, q: int) -> None:
        """``O -> G† O G`` for a two-site gate ``g[o1, o2, i1, i2]`` on (p, q)."""
        k = self.k
        ip, iq = self.sites.index(p), self.sites.index(q)
        t = np.tensordot(self.t, g, axes=([k + ip, k + iq], [0, 1]))
        t = np.moveaxis(t, [-2, -1], [k + ip, k + iq])
        t = np.tensordot(g.conj(), t, axes=([0, 1], [ip, iq]))
        self.t = np.moveaxis(t, [0, 1], [ip, iq])

    def conj_isometry(self, w: np.ndarray, a: int, b: int, coarse: int) -> None:
        """``O -> W† O W`` for ``w[a, b, c]``; sites a, b are replaced by ``coarse``."""
        k = self.k
        ia, ib = self.sites.index(a), self.sites.index(b)
        t = np.tensordot(self.t, w, axes=([k + ia, k + ib], [0, 1]))
        t = np.tensordot(w.conj(), t, axes=([0, 1], [ia, ib]))
        self.t = np.moveaxis(t, 0, k - 2)
        self.sites = [s for s in self.sites if s not in (a, b)] + [coarse]

    def matrix(self) -> np.ndarray:
        n = int(np.prod(self.t.shape[: self.k]))
        return self.t.reshape(n, n)


def _merge_groups(factors: List[_ConeOp], groups: Dict[int, List[int]]) -> List[_ConeOp]:
    """Merge factors that share a key; ``groups`` maps key -> factor indices."""
    parent = list(range(len(factors)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for members in groups.values():
        for j in members[1:]:
            ra, rb = find(members[0]), find(j)
            if ra != rb:
                parent[rb] = ra
    merged: Dict[int, _ConeOp] = {}
    for i, f in enumerate(factors):
        root = find(i)
        merged[root] = f if root not in merged else merged[root].merge(f)
    return [merged[r] for r in sorted(merged)]


def _gate_of(site: int, width: int) -> int:
    """Index of the disentangler acting on ``site`` (pairs (2i+1, 2i+2 mod W))."""
    if site % 2:
        return (site - 1) // 2
    return ((site - 2) % width) // 2


def _ascend_layer(factors: List[_ConeOp], layer: MERALayer, width: int) -> List[_ConeOp]:
    d = layer.fine_dim

    groups: Dict[int, List[int]] = {}
    for idx, f in enumerate(factors):
        for g in {_gate_of(s, width) for s in f.sites}:
            groups.setdefault(g, []).append(idx)
    factors = _merge_groups(factors, groups)
    for f in factors:
        for g in sorted({_gate_of(s, width) for s in f.sites}):
            p, q = 2 * g + 1, (2 * g + 2) % width
            f.extend(p, d)
            f.extend(q, d)
            f.conj_gate(layer.u, p, q)

    groups = {}
    for idx, f in enumerate(factors):
        for c in {s // 2 for s in f.sites}:
            groups.setdefault(c, []).append(idx)
    factors = _merge_groups(factors, groups)
    for f in factors:
        for c in sorted({s // 2 for s in f.sites}):
            f.extend(2 * c, d)
            f.extend(2 * c + 1, d)
        # fine sites are labelled by their non-negative index, coarse ones by ~c until done
        for c in sorted({s // 2 for s in f.sites if s >= 0}):
            f.conj_isometry(layer.w, 2 * c, 2 * c + 1, ~c)
        f.sites = [~s for s in f.sites]
    return factors


def _as_factors(m: BinaryMERA, ops: Mapping[int, OperatorLike]) -> List[_ConeOp]:
    factors = []
    for site, op in sorted(ops.items()):
        mat = op.matrix if isinstance(op, LocalOperator) else np.asarray(op, dtype=np.complex128)
        if not 0 <= site < m.N:
            raise ValueError(f"site {site} outside the lattice 0..{m.N - 1}")
        if mat.shape != (m.d, m.d):
            raise ValueError(f"operator on site {site} has shape {mat.shape}, expected ({m.d}, {m.d})")
        factors.append(_ConeOp.single(site, mat))
    return factors


def ascend(m: BinaryMERA, ops: Mapping[int, OperatorLike], n_layers: Optional[int] = None) -> List[Tuple[List[int], np.ndarray]]:
    """Lift single-site operators through ``n_layers`` layers (all by default).

    Returns ``(sites, matrix)`` factors at the reached scale.
    """
    n_layers = m.T if n_layers is None else n_layers
    if not 0 <= n_layers <= m.T:
        raise ValueError(f"n_layers must be in [0, {m.T}], got {n_layers}")
    factors = _as_factors(m, ops)
    for z in range(n_layers):
        factors = _ascend_layer(factors, m.layers[z], m.width(z))
    return [(list(f.sites), f.matrix()) for f in factors]


def _top_value(m: BinaryMERA, factors: List[_ConeOp]) -> complex:
    dt = m.top_dim
    if m.product_top:
        value = 1.0 + 0.0j
        for f in factors:
            v = np.ones(1, dtype=np.complex128)
            for s in f.sites:
                v = np.kron(v, m.top_sites[s])
            value *= complex(np.vdot(v, f.matrix() @ v))
        return value
    op = factors[0]
    for f in factors[1:]:
        op = op.merge(f)
    rest = [s for s in range(m.n_top) if s not in op.sites]
    top = np.asarray(m.top).reshape((dt,) * m.n_top)
    M = np.transpose(top, op.sites + rest).reshape(dt ** op.k, -1)
    return complex(np.einsum("ar,ab,br->", M.conj(), op.matrix(), M))


def expectation(m: BinaryMERA, ops: Mapping[int, OperatorLike]) -> complex:
    """``<psi| prod_x O_x |psi>`` for single-site operators on distinct sites."""
    factors = _as_factors(m, ops)
    if not factors:
        return 1.0 + 0.0j
    for z in range(m.T):
        factors = _ascend_layer(factors, m.layers[z], m.width(z))
    return _top_value(m, factors)


def correlator_causal_cone(
    m: BinaryMERA,
    P: OperatorLike,
    Q: OperatorLike,
    x1: int,
    x2: int,
) -> complex:
    """Connected correlator ``<P_x1 Q_x2> - <P_x1><Q_x2>`` from causal cones only."""
    Pm = P.matrix if isinstance(P, LocalOperator) else np.asarray(P, dtype=np.complex128)
    Qm = Q.matrix if isinstance(Q, LocalOperator) else np.asarray(Q, dtype=np.complex128)
    if x1 == x2:
        joint = expectation(m, {x1: Pm @ Qm})
    else:
        joint = expectation(m, {x1: Pm, x2: Qm})
    return joint - expectation(m, {x1: Pm}) * expectation(m, {x2: Qm})


def causal_cone_profile(
    m: BinaryMERA,
    P: OperatorLike,
    Q: OperatorLike,
    separations: Sequence[int],
    origin: int = 0,
) -> List[Tuple[int, complex]]:
    """``[(r, C(origin, origin + r)), ...]`` on the ring."""
    return [(int(r), correlator_causal_cone(m, P, Q, origin, (origin + r) % m.N)) for r in separations]


# =============================================================================
# Scaling superoperator
# =============================================================================

@dataclass(frozen=True, eq=False)
class ScalingSuperoperator:
    """
    Ascending channel of a scale-invariant layer on the two-site window
    ``(W-1, 0)``.

    The disentangler on ``(W-1, 0)`` and the isometries on ``(W-2, W-1)`` and
    ``(0, 1)`` map an operator on the window to an operator on the coarse
    window ``(W/2-1, 0)``, so the map closes on ``chi^2 x chi^2`` operators.
    ``matrix`` acts on row-major vectorized operators ``O[o1, o2, i1, i2]``.
    """

    layer: MERALayer
    matrix: np.ndarray

    @classmethod
    def from_layer(cls, layer: MERALayer) -> "ScalingSuperoperator":
        u, w = layer.u, layer.w
        if layer.fine_dim != layer.coarse_dim:
            raise ValueError("scaling superoperator needs a layer with equal fine and coarse dims")
        chi = layer.fine_dim
        n = chi ** 4
        umap = np.einsum("ghbe,GHBE->beBEghGH", u.conj(), u).reshape(n, n)
        wmap = np.einsum("abc,aBC,efd,EfD->cdCDbeBE", w.conj(), w, w.conj(), w).reshape(n, n)
        return cls(layer, wmap @ umap)

    @property
    def chi(self) -> int:
        return self.layer.fine_dim

    def apply(self, op: np.ndarray) -> np.ndarray:
        """Ascend a ``chi^2 x chi^2`` window operator by one layer."""
        chi = self.chi
        vec = np.asarray(op, dtype=np.complex128).reshape(-1)
        return (self.matrix @ vec).reshape(chi * chi, chi * chi)

    def spectrum(self, k: Optional[int] = None) -> EigenResult:
        n = self.matrix.shape[0]
        return dominant_eigs(self.matrix, n if k is None else k)


@dataclass
class ScalingSpectrum:
    eigenvalues: np.ndarray
    exponents: np.ndarray
    degenerate: bool = False

    def to_dict(self) -> Dict[str, list]:
        return {
            "eigenvalues": [[float(z.real), float(z.imag)] for z in self.eigenvalues],
            "exponents": [float(q) for q in self.exponents],
        }


def scaling_superoperator(m: BinaryMERA) -> ScalingSuperoperator:
    if not m.scale_invariant or not m.layers:
        raise ValueError("scaling spectrum needs a scale-invariant MERA with at least one layer")
    return ScalingSuperoperator.from_layer(m.layers[0])


def scaling_spectrum(m: BinaryMERA, k: Optional[int] = None) -> ScalingSpectrum:
    """Modulus-descending eigenvalues and exponents ``q = -2 log2 |lambda|``.

    Zero eigenvalues get ``q = inf``.
    """
    res = scaling_superoperator(m).spectrum(k)
    mods = np.abs(res.eigenvalues)
    with np.errstate(divide="ignore"):
        q = np.where(mods > 1e-14, -2.0 * np.log2(np.maximum(mods, 1e-300)), np.inf)
    logger.debug("scaling spectrum |lambda| = %s", np.round(mods[:4], 6))
    return ScalingSpectrum(eigenvalues=res.eigenvalues, exponents=q, degenerate=res.degenerate)
