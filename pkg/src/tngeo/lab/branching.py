# src/tngeo/lab/branching.py
"""Entropy-scaling classes of branching holographic geometries."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from tngeo.graphs.branching import BranchingTree, LayerSumPrediction, layer_sum_predictor, table_tree

# (D, tree entry) -> class label of the entropy-scaling table
TABLE_ENTRIES: Tuple[Tuple[int, str, str], ...] = (
    (1, "gapped", "constant"),
    (1, "gamma0", "log L"),
    (2, "gapped", "L"),
    (2, "gamma0", "L"),
    (2, "gamma1", "L·log L"),
    (3, "gapped", "L²"),
    (3, "gamma0", "L²"),
    (3, "gamma1", "L²"),
    (3, "gamma2", "L²·log L"),
)


@dataclass
class BranchingClassification:
    D: int
    label: str
    prediction: LayerSumPrediction

    def to_dict(self) -> Dict[str, object]:
        return {
            "D": self.D,
            "class": self.label,
            "scaling_class": self.prediction.scaling_class.value,
            "layer_sum": self.prediction.expression,
            "n_at_L": self.prediction.n,
        }


def classify_branching(tree: BranchingTree, D: Optional[int] = None, L: int = 1024) -> BranchingClassification:
    """Scaling class of S(L) for the geometry described by ``tree``.

    The class comes from the layer sum with multiplicities ``m(z)`` read
    off the tree; ``L`` only sets the sample value reported alongside it.
    """
    D = tree.D if D is None else D
    if D != tree.D:
        raise ValueError(f"tree dimension {tree.D} does not match D={D}")
    pred = layer_sum_predictor(D, L, branch=tree)
    return BranchingClassification(D, pred.label, pred)


def classify_table() -> List[Tuple[int, str, str, str]]:
    """``(D, entry, expected, predicted)`` for every entry of the table."""
    out = []
    for D, entry, expected in TABLE_ENTRIES:
        got = classify_branching(table_tree(D, entry)).label
        out.append((D, entry, expected, got))
    return out
