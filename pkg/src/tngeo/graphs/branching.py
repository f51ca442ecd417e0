# src/tngeo/graphs/branching.py
"""
Branching holographic trees and the layer-sum predictor for min-cut scaling.

The min-cut of a hypercubic block of linear size L in a D-dimensional
holographic geometry is estimated as a sum of per-scale contributions

    n(A) ≈ Σ_{z=0}^{min(T, log2 L)} m(z) · c · (L / 2^z)^(D-1)

where ``m(z)`` counts the independent branches alive at scale z.  The sum is
capped by the volume term ``c · L^D`` (cutting every physical leg).

Branch multiplicity convention
------------------------------
- gapped: one branch on scales ``[0, z_end)``  -> m(z) = 1 below z_end, else 0
- Γ = 0 : one unbounded branch                  -> m(z) = 1
- Γ ≥ 1 : every branch splits into 2^Γ children at every scale -> m(z) = 2^(Γz)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

# Depth at which self-similar trees are truncated (covers L up to 2^64).
MAX_TREE_DEPTH = 64


class ScalingClass(str, Enum):
    CONSTANT = "constant"
    LOG = "log L"
    BOUNDARY = "boundary"
    BOUNDARY_LOG = "boundary log"
    VOLUME = "volume"


def class_label(cls: ScalingClass, D: int) -> str:
    """Human-readable law, e.g. ``"L"`` or ``"L²·log L"`` for D = 3."""
    power = {1: "", 2: "L", 3: "L²"}
    if cls == ScalingClass.CONSTANT:
        return "constant"
    if cls == ScalingClass.LOG:
        return "log L"
    if cls == ScalingClass.BOUNDARY:
        return power[D] if D > 1 else "constant"
    if cls == ScalingClass.BOUNDARY_LOG:
        return f"{power[D]}·log L" if D > 1 else "log L"
    return {1: "L", 2: "L²", 3: "L³"}[D]


@dataclass(frozen=True, eq=False)
class Branch:
    """One branch of the holographic tree, alive on ``[z_start, z_end)``.

    ``z_end = None`` means the branch extends to arbitrarily large scales.
    Children start where the parent ends; the same child object may be
    listed several times (self-similar trees are stored as DAGs).
    """
    z_start: int
    z_end: Optional[int] = None
    children: Tuple["Branch", ...] = ()


@dataclass
class BranchingTree:
    """Rooted branching tree in spatial dimension ``D``."""

    root: Branch
    D: int
    _cache: Dict[Tuple[int, int], int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.D not in (1, 2, 3):
            raise ValueError(f"spatial dimension D must be 1, 2 or 3, got {self.D}")
        if self.root.z_start != 0:
            raise ValueError("root branch must start at scale 0")
        self._validate()

    def _validate(self) -> None:
        seen = set()
        stack = [self.root]
        while stack:
            b = stack.pop()
            if id(b) in seen:
                continue
            seen.add(id(b))
            if b.z_start < 0:
                raise ValueError(f"branch scale {b.z_start} is negative")
            if b.z_end is not None and b.z_end <= b.z_start:
                raise ValueError(f"branch [{b.z_start}, {b.z_end}) is empty")
            if b.children and b.z_end is None:
                raise ValueError("an unbounded branch cannot have children")
            for c in b.children:
                if c.z_start != b.z_end:
                    raise ValueError(
                        f"child starts at z={c.z_start} but parent ends at z={b.z_end}"
                    )
                stack.append(c)

    # --- constructors -------------------------------------------------------------

    @classmethod
    def single(cls, D: int, z_end: Optional[int] = None) -> "BranchingTree":
        """One branch: finite (gapped) if ``z_end`` is given, else unbounded."""
        return cls(Branch(0, z_end), D)

    @classmethod
    def every_scale(cls, D: int, gamma: int, depth: int = MAX_TREE_DEPTH) -> "BranchingTree":
        """Split into ``2**gamma`` children at every scale up to ``depth``."""
        if gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {gamma}")
        if gamma == 0:
            return cls.single(D)
        fanout = 2 ** gamma
        node = Branch(depth, None)
        for z in range(depth - 1, -1, -1):
            node = Branch(z, z + 1, (node,) * fanout)
        return cls(node, D)

    @classmethod
    def from_schedule(cls, D: int, schedule: Iterable[int], fanout: int = 2) -> "BranchingTree":
        """Unbounded tree that splits into ``fanout`` copies at each listed scale."""
        scales = sorted(set(int(z) for z in schedule))
        if scales and scales[0] < 1:
            raise ValueError("branching scales must be >= 1")
        starts = [0] + scales
        node = Branch(starts[-1], None)
        for z0, z1 in zip(reversed(starts[:-1]), reversed(starts[1:])):
            node = Branch(z0, z1, (node,) * fanout)
        return cls(node, D)

    # --- queries ------------------------------------------------------------------

    def multiplicity(self, z: int) -> int:
        """Number of branches alive at scale ``z``."""
        return self._count(self.root, int(z))

    def _count(self, b: Branch, z: int) -> int:
        key = (id(b), z)
        if key in self._cache:
            return self._cache[key]
        if z < b.z_start:
            n = 0
        elif b.z_end is None or z < b.z_end:
            n = 1
        else:
            n = sum(self._count(c, z) for c in b.children)
        self._cache[key] = n
        return n

    @property
    def is_gapped(self) -> bool:
        """True when every root-to-leaf path ends at a finite scale."""
        return self.multiplicity(MAX_TREE_DEPTH + 1) == 0


def table_tree(D: int, entry: str) -> BranchingTree:
    """Tree for one entry of the entropy-scaling table.

    ``entry`` is ``"gapped"`` (single branch ending at scale 2), ``"gamma0"``
    (single unbounded branch) or ``"gammaK"`` for fanout 2^K at every scale.
    """
    if entry == "gapped":
        return BranchingTree.single(D, z_end=2)
    if entry.startswith("gamma"):
        try:
            gamma = int(entry[5:])
        except ValueError:
            raise ValueError(f"unknown table entry {entry!r}") from None
        return BranchingTree.every_scale(D, gamma)
    raise ValueError(f"unknown table entry {entry!r}")


# =============================================================================
# Layer-sum predictor
# =============================================================================

@dataclass
class LayerSumPrediction:
    n: float
    scaling_class: ScalingClass
    label: str
    terms: List[Tuple[int, int, float]]
    expression: str


def _layer_sum(D: int, L: float, depth: Optional[int], tree: Optional[BranchingTree], c: float) -> Tuple[float, List[Tuple[int, int, float]]]:
    top = int(np.floor(np.log2(L) + 1e-12))
    if depth is not None:
        top = min(top, depth)
    terms = []
    total = 0.0
    for z in range(top + 1):
        m = 1 if tree is None else tree.multiplicity(z)
        term = float(m) * c * (L / 2.0 ** z) ** (D - 1)
        terms.append((z, m, term))
        total += term
    return min(total, c * L ** D), terms


def classify(D: int, tree: Optional[BranchingTree] = None, c: float = 1.0) -> ScalingClass:
    """Asymptotic class of the layer sum with depth growing as log2 L.

    The ratio ``q(L) = n(L) / L^(D-1)`` is sampled at L = 2^30, 2^31, 2^32:
    converging q means a boundary law (constant for D = 1), a constant
    increment per doubling means a logarithmic correction, and q doubling
    means volume scaling.
    """
    ks = (30, 31, 32)
    q = [_layer_sum(D, 2.0 ** k, None, tree, c)[0] / (2.0 ** k) ** (D - 1) for k in ks]
    d1, d2 = q[1] - q[0], q[2] - q[1]
    scale = max(abs(q[2]), 1e-300)
    if q[1] > 0 and q[2] / q[1] > 1.5:
        return ScalingClass.VOLUME
    if abs(d2) <= 1e-6 * scale:
        return ScalingClass.CONSTANT if D == 1 else ScalingClass.BOUNDARY
    if d1 > 0 and abs(d2 - d1) <= 1e-6 * abs(d1):
        return ScalingClass.LOG if D == 1 else ScalingClass.BOUNDARY_LOG
    raise ValueError(f"layer sum does not fall in a known class (q={q})")


def layer_sum_predictor(
    D: int,
    L: int,
    T: Optional[int] = None,
    branch: Optional[BranchingTree] = None,
    c: float = 1.0,
) -> LayerSumPrediction:
    """Predicted min-cut size of a block of size ``L`` and its scaling class.

    ``T`` bounds the scales summed for this ``L`` (default ``log2 L``); the
    class is a property of the geometry and is computed with depth growing
    with ``L`` and multiplicities from ``branch``.
    """
    if D not in (1, 2, 3):
        raise ValueError(f"D must be 1, 2 or 3, got {D}")
    if L < 2:
        raise ValueError(f"L must be >= 2, got {L}")
    if T is not None and T < 0:
        raise ValueError(f"T must be >= 0, got {T}")
    if branch is not None and branch.D != D:
        raise ValueError(f"tree dimension {branch.D} does not match D={D}")
    n, terms = _layer_sum(D, float(L), T, branch, c)
    cls = classify(D, branch, c)
    power = "" if D == 1 else ("·(L/2^z)" if D == 2 else "·(L/2^z)^2")
    mult = "1" if branch is None else "m(z)"
    expression = f"Σ_{{z=0}}^{{{terms[-1][0]}}} {mult}·{c:g}{power}"
    return LayerSumPrediction(n, cls, class_label(cls, D), terms, expression)
