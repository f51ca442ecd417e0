# src/tngeo/graphs/abstract_graph.py
"""
Abstract tensor-network geometry.

A :class:`TNGraph` records only the *shape* of a network: which tensors exist,
which pairs share a bond (and its dimension), and which tensor carries each
physical site leg.  No tensor data lives here; geodesic and min-cut analysis
(:mod:`tngeo.graphs.analysis`) work on this structure alone.

Key Design Principles:
1. Node ids are consecutive integers in build order, so exports are stable.
2. Bonds are kept as a list; parallel bonds between the same pair of tensors
   are legal (a MERA layer of width 2 has them) and are aggregated into edge
   multiplicities in :attr:`TNGraph.nx_graph`.
3. Physical legs are cuttable: each leg has dimension ``phys_dim``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

SiteCoord = Hashable  # int for D=1, (x, y) for D=2


class NodeRole(str, Enum):
    SITE = "site-tensor"
    DISENTANGLER = "disentangler"
    ISOMETRY = "isometry"
    TOP = "top"
    PEPS_SITE = "peps-site"


@dataclass(frozen=True)
class TNNode:
    """One tensor of the network.

    ``layer`` is the MERA scale z (0 for chains and grids); ``index`` is the
    position within the layer; ``branch`` labels the branching-MERA copy.
    """
    id: int
    role: NodeRole
    layer: int = 0
    index: int = 0
    branch: int = 0


@dataclass(frozen=True)
class Bond:
    u: int
    v: int
    chi: int


class TNGraph:
    """
    Tensor-network geometry: nodes, weighted bonds and the site-leg map.

    Parameters
    ----------
    nodes : sequence of TNNode
        Node ``i`` must have ``id == i``.
    bonds : sequence of Bond
        Internal bonds; ``chi >= 1``; no self loops.
    site_legs : mapping
        Physical site coordinate -> id of the node carrying that open leg.
    metadata : dict, optional
        Geometry kind and parameters (``kind``, ``N``, ``T``, ``z0`` ...).
    phys_dim : int
        Dimension of every physical leg.
    require_connected : bool
        Enforce connectivity (only the depth-zero product geometry opts out).
    """

    def __init__(
        self,
        nodes: Sequence[TNNode],
        bonds: Sequence[Bond],
        site_legs: Mapping[SiteCoord, int],
        metadata: Optional[Dict[str, Any]] = None,
        phys_dim: int = 2,
        require_connected: bool = True,
    ):
        self._nodes: Tuple[TNNode, ...] = tuple(nodes)
        self._bonds: Tuple[Bond, ...] = tuple(bonds)
        self._site_legs: Dict[SiteCoord, int] = dict(site_legs)
        self._metadata: Dict[str, Any] = dict(metadata or {})
        self.phys_dim = int(phys_dim)
        self._nx: Optional[nx.Graph] = None
        self._validate(require_connected)

    def _validate(self, require_connected: bool) -> None:
        n = len(self._nodes)
        for i, node in enumerate(self._nodes):
            if node.id != i:
                raise ValueError(f"node ids must be consecutive from 0; position {i} has id {node.id}")
        for b in self._bonds:
            if not (0 <= b.u < n and 0 <= b.v < n):
                raise ValueError(f"bond {b} references an unknown node")
            if b.u == b.v:
                raise ValueError(f"bond {b} is a self loop")
            if b.chi < 1:
                raise ValueError(f"bond {b} has dimension < 1")
        if not self._site_legs:
            raise ValueError("graph has no physical sites")
        for s, node in self._site_legs.items():
            if not 0 <= node < n:
                raise ValueError(f"site {s!r} maps to unknown node {node}")
        if self.phys_dim < 1:
            raise ValueError("phys_dim must be >= 1")
        if require_connected and not nx.is_connected(self.nx_graph):
            raise ValueError("tensor-network graph must be connected")

    # --- accessors ---------------------------------------------------------------

    @property
    def nodes(self) -> Tuple[TNNode, ...]:
        return self._nodes

    @property
    def bonds(self) -> Tuple[Bond, ...]:
        return self._bonds

    @property
    def site_legs(self) -> Dict[SiteCoord, int]:
        return dict(self._site_legs)

    @property
    def metadata(self) -> Dict[str, Any]:
        return dict(self._metadata)

    @property
    def kind(self) -> str:
        return str(self._metadata.get("kind", "custom"))

    @property
    def num_nodes(self) -> int:
        return len(self._nodes)

    @property
    def num_bonds(self) -> int:
        return len(self._bonds)

    @property
    def sites(self) -> List[SiteCoord]:
        return sorted(self._site_legs)

    def node(self, node_id: int) -> TNNode:
        return self._nodes[node_id]

    def leg_node(self, site: SiteCoord) -> int:
        try:
            return self._site_legs[site]
        except KeyError:
            raise ValueError(f"unknown site {site!r}") from None

    def nodes_with_role(self, role: NodeRole) -> List[TNNode]:
        return [n for n in self._nodes if n.role == role]

    def bond_dims(self) -> List[int]:
        return [b.chi for b in self._bonds]

    @property
    def nx_graph(self) -> nx.Graph:
        """Simple graph over node ids; parallel bonds are merged.

        Edge attributes: ``count`` (number of bonds) and ``weight``
        (sum of log2 chi over the merged bonds).
        """
        if self._nx is None:
            g = nx.Graph()
            g.add_nodes_from(range(len(self._nodes)))
            for b in self._bonds:
                w = math.log2(b.chi)
                if g.has_edge(b.u, b.v):
                    g[b.u][b.v]["count"] += 1
                    g[b.u][b.v]["weight"] += w
                else:
                    g.add_edge(b.u, b.v, count=1, weight=w)
            self._nx = g
        return self._nx

    def __repr__(self) -> str:
        return (
            f"TNGraph(kind={self.kind!r}, nodes={self.num_nodes}, "
            f"bonds={self.num_bonds}, sites={len(self._site_legs)})"
        )


def _is_contiguous(sites: FrozenSet[SiteCoord]) -> bool:
    if all(isinstance(s, int) for s in sites):
        ordered = sorted(sites)
        return ordered[-1] - ordered[0] + 1 == len(ordered)
    # 2D: connected under nearest-neighbour adjacency
    g = nx.Graph()
    g.add_nodes_from(sites)
    for (x, y) in sites:
        for nb in ((x + 1, y), (x, y + 1)):
            if nb in sites:
                g.add_edge((x, y), nb)
    return nx.is_connected(g)


@dataclass(frozen=True)
class Region:
    """A set of physical sites (region A).  ``contiguous`` is derived."""

    sites: FrozenSet[SiteCoord]
    contiguous: bool = field(init=False)

    def __post_init__(self) -> None:
        sites = frozenset(
            tuple(s) if isinstance(s, (list, tuple)) else int(s) for s in self.sites
        )
        if not sites:
            raise ValueError("Region must contain at least one site")
        object.__setattr__(self, "sites", sites)
        object.__setattr__(self, "contiguous", _is_contiguous(sites))

    @classmethod
    def block(cls, start: int, length: int) -> "Region":
        """Contiguous 1D block ``[start, start+length)``."""
        if length < 1:
            raise ValueError(f"block length must be >= 1, got {length}")
        return cls(frozenset(range(start, start + length)))

    @classmethod
    def rectangle(cls, x0: int, y0: int, wx: int, wy: int) -> "Region":
        """Contiguous 2D block with lower corner ``(x0, y0)``."""
        if wx < 1 or wy < 1:
            raise ValueError("rectangle sides must be >= 1")
        return cls(frozenset((x, y) for x in range(x0, x0 + wx) for y in range(y0, y0 + wy)))

    def complement(self, lattice: Iterable[SiteCoord]) -> "Region":
        rest = frozenset(lattice) - self.sites
        return Region(rest)

    def __len__(self) -> int:
        return len(self.sites)
