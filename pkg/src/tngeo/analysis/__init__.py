# src/tngeo/analysis/__init__.py
"""Model selection for correlator decay and entropy growth."""
from tngeo.analysis.fitting import ENTROPY_MODELS, ScalingReport, decay_window, fit_decay, fit_entropy

__all__ = ["ENTROPY_MODELS", "ScalingReport", "decay_window", "fit_decay", "fit_entropy"]
