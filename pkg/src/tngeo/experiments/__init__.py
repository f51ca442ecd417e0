# src/tngeo/experiments/__init__.py
"""Config-driven sweeps and the report bundle they produce."""
from tngeo.experiments.experiment import CSV_COLUMNS, Experiment, InstanceResult, SweepRow
from tngeo.experiments.runner import RunBundle, package_versions, rows_to_csv, rows_to_json, run
from tngeo.experiments.sweeps import EXPERIMENTS, graph_from_config, make_experiment, tree_from_config

__all__ = [
    "CSV_COLUMNS",
    "Experiment",
    "InstanceResult",
    "SweepRow",
    "RunBundle",
    "package_versions",
    "rows_to_csv",
    "rows_to_json",
    "run",
    "EXPERIMENTS",
    "graph_from_config",
    "make_experiment",
    "tree_from_config",
]
