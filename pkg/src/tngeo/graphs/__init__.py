# src/tngeo/graphs/__init__.py
"""
Tensor-network geometries and their geodesic / min-cut analysis.
"""
from tngeo.graphs.abstract_graph import Bond, NodeRole, Region, TNGraph, TNNode
from tngeo.graphs.builders import (
    build_branching_mera_graph_1d,
    build_finite_range_mera_graph,
    build_mera_graph,
    build_mps_graph,
    build_peps_graph,
    mera_widths,
)
from tngeo.graphs.analysis import (
    MinCutResult,
    block_min_cuts,
    cut_size,
    geodesic,
    geodesic_profile,
    min_cut,
    upward_closure,
)
from tngeo.graphs.branching import (
    Branch,
    BranchingTree,
    LayerSumPrediction,
    ScalingClass,
    class_label,
    classify,
    layer_sum_predictor,
    table_tree,
)
from tngeo.graphs.export import from_text, to_text

__all__ = [
    "Bond",
    "NodeRole",
    "Region",
    "TNGraph",
    "TNNode",
    "build_mps_graph",
    "build_peps_graph",
    "build_mera_graph",
    "build_finite_range_mera_graph",
    "build_branching_mera_graph_1d",
    "mera_widths",
    "MinCutResult",
    "geodesic",
    "geodesic_profile",
    "min_cut",
    "cut_size",
    "upward_closure",
    "block_min_cuts",
    "Branch",
    "BranchingTree",
    "LayerSumPrediction",
    "ScalingClass",
    "class_label",
    "classify",
    "layer_sum_predictor",
    "table_tree",
    "to_text",
    "from_text",
]
