# src/tngeo/graphs/analysis.py
"""
Geometric measurements on a :class:`~tngeo.graphs.abstract_graph.TNGraph`.

- :func:`geodesic` - shortest path between two site legs, counted in tensors
  (both endpoint tensors included) or in links.
- :func:`min_cut` - minimal number of bonds (and minimal Σ log2 chi) whose
  removal separates a region's legs from the rest, solved as a max-flow
  problem with networkx.

Physical legs take part in the cut: each site is attached to its tensor by an
edge of capacity 1 (weight log2 d), and the super source / super sink attach
to the site vertices with unbounded capacity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from tngeo.graphs.abstract_graph import Region, SiteCoord, TNGraph
from tngeo.utils.logging import get_logger

logger = get_logger(__name__)

_SOURCE = "__source__"
_SINK = "__sink__"

GEODESIC_COUNTS = ("tensors", "links")


# =============================================================================
# Geodesics
# =============================================================================

def geodesic(g: TNGraph, x1: SiteCoord, x2: SiteCoord, count: str = "tensors") -> int:
    """Length of the shortest path between the tensors carrying ``x1`` and ``x2``.

    ``count="tensors"`` (default) returns the number of tensors on the path,
    endpoints included, so ``geodesic(g, x, x) == 1``; ``count="links"``
    returns the number of bonds traversed.

    Raises
    ------
    ValueError
        Unknown site, unknown ``count`` mode, or no connecting path.
    """
    if count not in GEODESIC_COUNTS:
        raise ValueError(f"count must be one of {GEODESIC_COUNTS}, got {count!r}")
    u, v = g.leg_node(x1), g.leg_node(x2)
    try:
        links = nx.shortest_path_length(g.nx_graph, u, v)
    except nx.NetworkXNoPath:
        raise ValueError(f"no path between sites {x1!r} and {x2!r}") from None
    return int(links) + 1 if count == "tensors" else int(links)


def geodesic_profile(
    g: TNGraph,
    separations: Sequence[int],
    origins: Optional[Iterable[int]] = None,
    count: str = "tensors",
) -> Dict[int, float]:
    """Mean geodesic length at each separation ``r`` on a 1D ring of sites.

    Averages ``geodesic(x, x + r mod N)`` over ``origins`` (all sites by
    default), with one breadth-first search per origin.
    """
    if count not in GEODESIC_COUNTS:
        raise ValueError(f"count must be one of {GEODESIC_COUNTS}, got {count!r}")
    sites = g.sites
    n = len(sites)
    origins = list(sites if origins is None else origins)
    if not origins:
        raise ValueError("geodesic_profile needs at least one origin")
    offset = 1 if count == "tensors" else 0
    totals = {int(r): 0.0 for r in separations}
    for x in origins:
        dist = nx.single_source_shortest_path_length(g.nx_graph, g.leg_node(x))
        for r in totals:
            target = g.leg_node((x + r) % n)
            if target not in dist:
                raise ValueError(f"no path between sites {x} and {(x + r) % n}")
            totals[r] += dist[target] + offset
    return {r: totals[r] / len(origins) for r in sorted(totals)}


# =============================================================================
# Min-cut
# =============================================================================

@dataclass(frozen=True)
class MinCutResult:
    """Minimal cut separating a region from its complement.

    ``n_bonds`` minimises the number of crossed bonds (unit capacities);
    ``weight`` minimises Σ log2 chi (physical legs count log2 d).  The two
    minima may be realised by different cuts.  ``cut_bonds`` lists the edges
    of the unit-capacity cut; site legs appear as ``("site", coord)``.
    """

    n_bonds: int
    weight: float
    cut_bonds: Tuple[Tuple[object, object], ...] = ()
    whole_lattice: bool = False


def _flow_graph(g: TNGraph, region: Region, weighted: bool) -> nx.Graph:
    key = "weight" if weighted else "count"
    leg_cap = math.log2(g.phys_dim) if weighted else 1
    flow = nx.Graph()
    for u, v, data in g.nx_graph.edges(data=True):
        flow.add_edge(u, v, capacity=data[key])
    for s, node in g.site_legs.items():
        flow.add_edge(("site", s), node, capacity=leg_cap)
        # no capacity attribute: networkx treats the edge as unbounded
        if s in region.sites:
            flow.add_edge(_SOURCE, ("site", s))
        else:
            flow.add_edge(("site", s), _SINK)
    return flow


def _check_region(g: TNGraph, region: Region) -> bool:
    lattice = set(g.site_legs)
    unknown = [s for s in region.sites if s not in lattice]
    if unknown:
        raise ValueError(f"region contains sites not in the lattice: {sorted(unknown, key=repr)[:5]}")
    return len(region.sites) == len(lattice)


def min_cut(g: TNGraph, region: Region) -> MinCutResult:
    """Min-cut boundary size ``n(A)`` and weight for ``region``.

    A region covering the whole lattice has no complement; the result is
    ``n_bonds = 0`` with ``whole_lattice=True``.
    """
    if _check_region(g, region):
        logger.info("min_cut: region covers the whole lattice; returning 0")
        return MinCutResult(0, 0.0, (), whole_lattice=True)

    unit = _flow_graph(g, region, weighted=False)
    n_value, (side_a, _) = nx.minimum_cut(unit, _SOURCE, _SINK)
    cut = sorted(
        (
            (a, b) if a in side_a else (b, a)
            for a, b in unit.edges()
            if (a in side_a) != (b in side_a) and _SOURCE not in (a, b) and _SINK not in (a, b)
        ),
        key=repr,
    )

    weighted = _flow_graph(g, region, weighted=True)
    w_value, _ = nx.minimum_cut(weighted, _SOURCE, _SINK)
    return MinCutResult(int(round(n_value)), float(w_value), tuple(cut))


def cut_size(g: TNGraph, region: Region, omega: Iterable[int]) -> Tuple[int, float]:
    """Size (bond count, Σ log2 chi) of the explicit cut around tensor set ``omega``.

    ``omega`` is the set of tensors placed on the region's side; legs of
    region sites outside ``omega`` and legs of other sites inside ``omega``
    are cut as well.  Any ``omega`` gives an upper bound on :func:`min_cut`.
    """
    _check_region(g, region)
    inside: Set[int] = set(omega)
    count, weight = 0, 0.0
    for b in g.bonds:
        if (b.u in inside) != (b.v in inside):
            count += 1
            weight += math.log2(b.chi)
    leg_w = math.log2(g.phys_dim)
    for s, node in g.site_legs.items():
        if (s in region.sites) != (node in inside):
            count += 1
            weight += leg_w
    return count, weight


def upward_closure(g: TNGraph, region: Region) -> Set[int]:
    """Tensors reachable from the region's legs by moving to later-built nodes.

    Builders create MERA tensors bottom-up, so this is the region's past
    causal cone up to the top.
    """
    _check_region(g, region)
    start = {g.leg_node(s) for s in region.sites}
    seen = set(start)
    frontier = list(start)
    nxg = g.nx_graph
    while frontier:
        node = frontier.pop()
        for nb in nxg.neighbors(node):
            if nb > node and nb not in seen:
                seen.add(nb)
                frontier.append(nb)
    return seen


def block_min_cuts(
    g: TNGraph,
    lengths: Sequence[int],
    starts: Optional[Sequence[int]] = None,
) -> Dict[int, float]:
    """Mean ``n(A)`` of contiguous 1D blocks of each length over ``starts``."""
    sites = g.sites
    n = len(sites)
    starts = list(starts) if starts is not None else [max(0, (n - max(lengths)) // 2)]
    out: Dict[int, float] = {}
    for L in lengths:
        if not 1 <= L < n:
            raise ValueError(f"block length {L} must be in [1, {n - 1}]")
        values: List[int] = []
        for x in starts:
            region = Region(frozenset((x + k) % n for k in range(L)))
            values.append(min_cut(g, region).n_bonds)
        out[int(L)] = float(np.mean(values))
    return out
