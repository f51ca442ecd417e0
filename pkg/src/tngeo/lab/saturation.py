# src/tngeo/lab/saturation.py
"""Entropy saturation of finite-range MERA states against their min-cuts."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from tngeo.graphs.abstract_graph import Region
from tngeo.graphs.analysis import min_cut
from tngeo.graphs.builders import build_finite_range_mera_graph
from tngeo.states.finite_range import FiniteRangeMERA
from tngeo.states.mera import MAX_AMPLITUDES, block_entropy
from tngeo.utils.logging import get_logger

logger = get_logger(__name__)

BOUND_TOL = 1e-9


@dataclass
class SaturationRow:
    L: int
    entropy: Optional[float]
    n_bonds: int
    weight: float

    @property
    def within_bound(self) -> bool:
        return self.entropy is None or self.entropy <= self.weight + BOUND_TOL

    def to_dict(self) -> Dict[str, object]:
        return {"L": self.L, "entropy": self.entropy, "n_bonds": self.n_bonds, "weight": self.weight}


@dataclass
class SaturationTable:
    z0: int
    start: int
    rows: List[SaturationRow]

    @property
    def bound_holds(self) -> bool:
        return all(r.within_bound for r in self.rows)

    def min_cuts(self) -> Dict[int, int]:
        return {r.L: r.n_bonds for r in self.rows}

    def saturation_length(self) -> Optional[int]:
        """Smallest L from which the min-cut stays constant, if any."""
        cuts = [r.n_bonds for r in self.rows]
        for i in range(len(cuts) - 1):
            if all(c == cuts[i] for c in cuts[i:]):
                return self.rows[i].L
        return None

    def to_dict(self) -> Dict[str, object]:
        return {"z0": self.z0, "start": self.start, "rows": [r.to_dict() for r in self.rows]}


def entropy_saturation(m: FiniteRangeMERA, Ls: Sequence[int], start: int = 1) -> SaturationTable:
    """Block entropies and min-cuts of ``[start, start + L)`` for each ``L``.

    Entropies are computed only when the state vector fits under the
    amplitude cap (``None`` otherwise); min-cuts come from the matching
    finite-range geometry for any N.  Blocks wrap around the ring.
    """
    N = m.N
    Ls = sorted({int(L) for L in Ls})
    if not Ls:
        raise ValueError("entropy_saturation needs at least one block length")
    for L in Ls:
        if not 1 <= L < N:
            raise ValueError(f"block length L={L} must satisfy 1 <= L < N={N}")
    g = build_finite_range_mera_graph(N, m.z0, chi=m.chi, d=m.d)
    with_state = float(m.d) ** N <= MAX_AMPLITUDES
    rows = []
    for L in Ls:
        region = Region(frozenset((start + k) % N for k in range(L)))
        cut = min_cut(g, region)
        s = block_entropy(m.mera, L, start=start % N) if with_state else None
        rows.append(SaturationRow(L, s, cut.n_bonds, cut.weight))
        logger.debug("saturation L=%d S=%s n=%d", L, s, cut.n_bonds)
    table = SaturationTable(m.z0, start, rows)
    if not table.bound_holds:
        logger.warning("entropy exceeds the min-cut bound for some block (z0=%d)", m.z0)
    return table
