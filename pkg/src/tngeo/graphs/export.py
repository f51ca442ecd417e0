# src/tngeo/graphs/export.py
"""
Line-oriented text format for graphs.

    # tngeo-graph {"kind": "mps", "N": 3, ..., "phys_dim": 2}
    node 0 site-tensor
    bond 0 1 2
    site 0 0

One ``node id role`` line per node (id order), one ``bond u v chi`` line per
bond (build order), one ``site coord node`` line per leg (sorted coordinates;
2D coordinates are written ``x,y``).  The header comment carries metadata as
JSON and is optional on import.
"""
from __future__ import annotations

import json
from typing import Dict, List, Union

from tngeo.graphs.abstract_graph import Bond, NodeRole, TNGraph, TNNode

_HEADER = "# tngeo-graph "


def _coord_str(coord) -> str:
    if isinstance(coord, tuple):
        return ",".join(str(c) for c in coord)
    return str(coord)


def _parse_coord(token: str) -> Union[int, tuple]:
    if "," in token:
        return tuple(int(c) for c in token.split(","))
    return int(token)


def to_text(g: TNGraph) -> str:
    meta = dict(g.metadata)
    meta["phys_dim"] = g.phys_dim
    lines = [_HEADER + json.dumps(meta, sort_keys=True)]
    lines += [f"node {n.id} {n.role.value}" for n in g.nodes]
    lines += [f"bond {b.u} {b.v} {b.chi}" for b in g.bonds]
    legs = g.site_legs
    lines += [f"site {_coord_str(s)} {legs[s]}" for s in g.sites]
    return "\n".join(lines) + "\n"


def from_text(text: str) -> TNGraph:
    """Parse :func:`to_text` output.  Node layer/index fields are not stored."""
    meta: Dict = {}
    nodes: List[TNNode] = []
    bonds: List[Bond] = []
    legs: Dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(_HEADER):
            meta = json.loads(line[len(_HEADER):])
            continue
        if line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "node" and len(parts) == 3:
                nodes.append(TNNode(int(parts[1]), NodeRole(parts[2])))
            elif parts[0] == "bond" and len(parts) == 4:
                bonds.append(Bond(int(parts[1]), int(parts[2]), int(parts[3])))
            elif parts[0] == "site" and len(parts) == 3:
                legs[_parse_coord(parts[1])] = int(parts[2])
            else:
                raise ValueError("unrecognised record")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: cannot parse {raw!r} ({exc})") from None
    phys_dim = int(meta.pop("phys_dim", 2))
    connected = not (meta.get("kind") == "finite_range" and meta.get("z0") == 0)
    return TNGraph(nodes, bonds, legs, meta, phys_dim=phys_dim, require_connected=connected)
