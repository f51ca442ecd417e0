# src/tngeo/states/finite_range.py
"""
Finite-range MERA: the state of a gapped chain.

``z_xi`` layers repeat one (u, w) pair, ``delta_z`` further layers carry
their own random tensors, and the network is closed at ``z0 = z_xi + delta_z``
by an unentangled product of per-site vectors.  Above ``z0`` nothing couples
distinct coarse sites, so correlations and block entropies stop growing once
a region is wider than about ``2**z0`` sites.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from tngeo.states.mera import BinaryMERA, MERALayer, random_layer
from tngeo.tensors.random import RandomSource, as_generator, complex_gaussian
from tngeo.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class FiniteRangeMERA:
    mera: BinaryMERA
    z_xi: int
    delta_z: int

    def __post_init__(self) -> None:
        if self.z_xi < 0 or self.delta_z < 0:
            raise ValueError(f"z_xi and delta_z must be >= 0, got {self.z_xi}, {self.delta_z}")
        if self.mera.T != self.z0:
            raise ValueError(f"MERA has {self.mera.T} layers, expected z0 = {self.z0}")
        if not self.mera.product_top:
            raise ValueError("finite-range MERA must be closed by a product top")
        shared = self.mera.layers[: self.z_xi]
        if any(l is not shared[0] for l in shared[1:]):
            raise ValueError("the first z_xi layers must share one (u, w) pair")

    @property
    def z0(self) -> int:
        return self.z_xi + self.delta_z

    @property
    def N(self) -> int:
        return self.mera.N

    @property
    def d(self) -> int:
        return self.mera.d

    @property
    def chi(self) -> int:
        return self.mera.chi

    @property
    def shared_layer(self) -> Optional[MERALayer]:
        return self.mera.layers[0] if self.z_xi else None


def build_finite_range_mera(
    N: int,
    z_xi: int,
    delta_z: int = 1,
    chi: int = 2,
    seed: RandomSource = 0,
    d: Optional[int] = None,
    source: Optional[BinaryMERA] = None,
) -> FiniteRangeMERA:
    """Seeded finite-range MERA on ``N`` sites.

    The shared pair is taken from ``source`` (a scale-invariant MERA) when
    given, otherwise drawn at random.  Free layers are random; the product
    top holds one random unit vector per site at scale ``z0``.

    Raises
    ------
    ValueError
        If ``z0`` exceeds ``log2 N`` or N is not a multiple of ``2**z0``.
    """
    d = chi if d is None else d
    z0 = z_xi + delta_z
    if z_xi < 0 or delta_z < 0:
        raise ValueError(f"z_xi and delta_z must be >= 0, got {z_xi}, {delta_z}")
    if N < 2 or N % (2 ** z0) or N < 2 ** z0:
        raise ValueError(f"depth z0={z0} exceeds the lattice (N={N} must be a multiple of 2^{z0})")
    if z0 and (chi < d or chi > d * d):
        raise ValueError(f"need d <= chi <= d^2, got chi={chi}, d={d}")
    if z_xi and d != chi:
        raise ValueError(f"shared layers need d == chi, got d={d}, chi={chi}")
    rng = as_generator(seed)

    if z_xi:
        if source is not None:
            if not source.scale_invariant or source.chi != chi:
                raise ValueError("source must be a scale-invariant MERA with matching chi")
            shared = source.layers[0]
        else:
            shared = random_layer(chi, chi, rng)
        layers = [shared] * z_xi
    else:
        layers = []
    for z in range(z_xi, z0):
        layers.append(random_layer(d if z == 0 else chi, chi, rng))

    top_dim = chi if z0 else d
    tops = tuple(complex_gaussian(top_dim, rng) for _ in range(N // 2 ** z0))
    logger.debug("finite-range MERA N=%d z_xi=%d delta_z=%d chi=%d", N, z_xi, delta_z, chi)
    mera = BinaryMERA(N, tuple(layers), top_sites=tops)
    return FiniteRangeMERA(mera, z_xi, delta_z)
