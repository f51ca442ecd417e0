# src/tngeo/lab/__init__.py
"""
Gapped-geometry diagnostics: finite-range crossover, entropy saturation and
branching-tree scaling classes.
"""
from tngeo.lab.branching import (
    TABLE_ENTRIES,
    BranchingClassification,
    classify_branching,
    classify_table,
)
from tngeo.lab.crossover import CrossoverReport, crossover_diagnostics
from tngeo.lab.saturation import SaturationRow, SaturationTable, entropy_saturation

__all__ = [
    "TABLE_ENTRIES",
    "BranchingClassification",
    "classify_branching",
    "classify_table",
    "CrossoverReport",
    "crossover_diagnostics",
    "SaturationRow",
    "SaturationTable",
    "entropy_saturation",
]
