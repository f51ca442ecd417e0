# src/tngeo/graphs/builders.py
"""
Builders for the network geometries: MPS chain, PEPS grid, binary MERA,
finite-range MERA and the 1D branching MERA.

MERA connectivity convention (periodic pairing at every layer)
--------------------------------------------------------------
A layer acting on a ring of width ``W`` has ``W/2`` disentanglers, the i-th
acting on sites ``(2i+1, 2i+2 mod W)``, followed by ``W/2`` isometries, the
i-th mapping sites ``(2i, 2i+1)`` to coarse site ``i`` of the next layer.
Physical legs attach to the layer-0 disentanglers.  Bonds entering a layer-0
isometry carry the site dimension ``d``; every other internal bond carries
``chi``.
"""
from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from tngeo.graphs.abstract_graph import Bond, NodeRole, TNGraph, TNNode


class _Builder:
    """Accumulates nodes/bonds/legs in build order."""

    def __init__(self) -> None:
        self.nodes: List[TNNode] = []
        self.bonds: List[Bond] = []
        self.site_legs: Dict[object, int] = {}

    def add(self, role: NodeRole, layer: int = 0, index: int = 0, branch: int = 0) -> int:
        nid = len(self.nodes)
        self.nodes.append(TNNode(nid, role, layer, index, branch))
        return nid

    def bond(self, u: int, v: int, chi: int) -> None:
        self.bonds.append(Bond(u, v, chi))


def _log2_exact(n: int) -> Optional[int]:
    if n < 1 or n & (n - 1):
        return None
    return n.bit_length() - 1


def _check_mera_sizes(N: int, layers: int) -> int:
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    if layers < 0:
        raise ValueError(f"number of layers must be >= 0, got {layers}")
    if N % (2 ** layers):
        raise ValueError(f"N={N} is not a multiple of 2^{layers}: incompatible with {layers} layers")
    return N // 2 ** layers


def _mera_layers(
    b: _Builder,
    N: int,
    layers: int,
    chi: int,
    d: int,
    branch_schedule: FrozenSet[int] = frozenset(),
) -> List[List[Optional[int]]]:
    """Add ``layers`` binary layers; return the open coarse legs of every branch."""
    branches: List[List[Optional[int]]] = [[None] * N]
    width = N
    for z in range(layers):
        in_dim = d if z == 0 else chi
        half = width // 2
        next_branches: List[List[Optional[int]]] = []
        for br, current in enumerate(branches):
            cur = list(current)
            for i in range(half):
                u = b.add(NodeRole.DISENTANGLER, z, i, br)
                for s in (2 * i + 1, (2 * i + 2) % width):
                    if cur[s] is None:
                        b.site_legs[s] = u
                    else:
                        b.bond(cur[s], u, chi)
                    cur[s] = u
            coarse: List[Optional[int]] = []
            for i in range(half):
                w = b.add(NodeRole.ISOMETRY, z, i, br)
                b.bond(cur[2 * i], w, in_dim)
                b.bond(cur[2 * i + 1], w, in_dim)
                coarse.append(w)
            next_branches.append(coarse)
            if (z + 1) in branch_schedule:
                # both continuations hang off the same isometry outputs
                next_branches.append(list(coarse))
        branches = next_branches
        width = half
    return branches


def build_mps_graph(N: int, chi: int = 2, d: int = 2) -> TNGraph:
    """Open chain of ``N`` site tensors; ``site_legs[i] = i``."""
    if N < 2:
        raise ValueError(f"MPS graph needs N >= 2, got {N}")
    b = _Builder()
    for i in range(N):
        b.add(NodeRole.SITE, 0, i)
        b.site_legs[i] = i
    for i in range(N - 1):
        b.bond(i, i + 1, chi)
    return TNGraph(b.nodes, b.bonds, b.site_legs, {"kind": "mps", "N": N, "chi": chi, "d": d}, phys_dim=d)


def build_peps_graph(Lx: int, Ly: int, chi: int = 2, d: int = 2) -> TNGraph:
    """``Lx × Ly`` open grid; node ``x*Ly + y`` carries site ``(x, y)``."""
    if Lx < 2 or Ly < 2:
        raise ValueError(f"PEPS graph needs Lx, Ly >= 2, got {Lx}x{Ly}")
    b = _Builder()
    for x in range(Lx):
        for y in range(Ly):
            nid = b.add(NodeRole.PEPS_SITE, 0, x * Ly + y)
            b.site_legs[(x, y)] = nid
    for x in range(Lx):
        for y in range(Ly):
            if x + 1 < Lx:
                b.bond(x * Ly + y, (x + 1) * Ly + y, chi)
            if y + 1 < Ly:
                b.bond(x * Ly + y, x * Ly + y + 1, chi)
    meta = {"kind": "peps", "Lx": Lx, "Ly": Ly, "chi": chi, "d": d}
    return TNGraph(b.nodes, b.bonds, b.site_legs, meta, phys_dim=d)


def build_mera_graph(
    N: int,
    T: int,
    scale_invariant: bool = False,
    chi: int = 2,
    d: int = 2,
) -> TNGraph:
    """Binary MERA on ``N = 2^T * n_top`` sites with a single top node.

    Examples
    --------
    >>> build_mera_graph(16, 4).num_nodes
    31
    """
    if T < 1:
        raise ValueError(f"MERA graph needs T >= 1, got {T}")
    n_top = _check_mera_sizes(N, T)
    b = _Builder()
    (current,) = _mera_layers(b, N, T, chi, d)
    top = b.add(NodeRole.TOP, T, 0)
    for leg in current:
        b.bond(leg, top, chi)
    meta = {
        "kind": "mera", "N": N, "T": T, "n_top": n_top,
        "scale_invariant": bool(scale_invariant), "chi": chi, "d": d,
    }
    return TNGraph(b.nodes, b.bonds, b.site_legs, meta, phys_dim=d)


def build_finite_range_mera_graph(N: int, z0: int, chi: int = 2, d: int = 2) -> TNGraph:
    """``z0`` MERA layers topped by one product-state node per coarse site.

    The top nodes share no bonds.  ``z0 = 0`` gives the bare product geometry
    (every site leg on its own top node), the only disconnected graph the
    package builds.
    """
    width = _check_mera_sizes(N, z0)
    b = _Builder()
    if z0 == 0:
        for s in range(N):
            b.site_legs[s] = b.add(NodeRole.TOP, 0, s)
        meta = {"kind": "finite_range", "N": N, "z0": 0, "chi": chi, "d": d}
        return TNGraph(b.nodes, b.bonds, b.site_legs, meta, phys_dim=d, require_connected=False)
    (current,) = _mera_layers(b, N, z0, chi, d)
    for i in range(width):
        top = b.add(NodeRole.TOP, z0, i)
        b.bond(current[i], top, chi)
    meta = {"kind": "finite_range", "N": N, "z0": z0, "chi": chi, "d": d}
    return TNGraph(b.nodes, b.bonds, b.site_legs, meta, phys_dim=d)


def build_branching_mera_graph_1d(
    N: int,
    branch_schedule: Iterable[int] = (),
    chi: int = 2,
    d: int = 2,
) -> TNGraph:
    """Binary MERA on ``N = 2^T`` sites that splits at every listed scale.

    At a branching scale z★ each branch continues as two independent copies of
    the remaining layers, both fed by the same isometry outputs of layer
    z★ - 1.  Every branch ends in its own top node.  Valid scales are
    ``1 .. T-1``; an empty schedule reproduces :func:`build_mera_graph`.
    """
    T = _log2_exact(N)
    if T is None or T < 1:
        raise ValueError(f"branching MERA graph needs N a power of two >= 2, got {N}")
    schedule = frozenset(int(z) for z in branch_schedule)
    bad = sorted(z for z in schedule if not 1 <= z <= T - 1)
    if bad:
        raise ValueError(f"branch scales {bad} exceed the available depth 1..{T - 1}")
    b = _Builder()
    branches = _mera_layers(b, N, T, chi, d, schedule)
    for br, current in enumerate(branches):
        top = b.add(NodeRole.TOP, T, 0, br)
        for leg in current:
            b.bond(leg, top, chi)
    meta = {
        "kind": "branching", "N": N, "T": T, "branch_schedule": sorted(schedule),
        "chi": chi, "d": d,
    }
    return TNGraph(b.nodes, b.bonds, b.site_legs, meta, phys_dim=d)


def mera_widths(N: int, T: int) -> Tuple[int, ...]:
    """Ring widths from the physical layer up to the top, e.g. (4, 2, 1)."""
    _check_mera_sizes(N, T)
    return tuple(N // 2 ** z for z in range(T + 1))
