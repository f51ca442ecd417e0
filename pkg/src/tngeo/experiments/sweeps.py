# src/tngeo/experiments/sweeps.py
"""
Concrete sweep experiments, one class per ``experiment`` kind of the config.

Correlator rows record ``|C(r)|``; spectrum rows record ``|lambda_k|`` with
the complex values kept in the JSON report.
"""
from __future__ import annotations

from typing import Any, Dict, List, Optional, Type

from tngeo.analysis.fitting import MIN_DECAY_POINTS, MIN_ENTROPY_POINTS, decay_window, fit_decay, fit_entropy
from tngeo.graphs.abstract_graph import Region, TNGraph
from tngeo.graphs.analysis import block_min_cuts, geodesic_profile, min_cut
from tngeo.graphs.branching import BranchingTree, layer_sum_predictor, table_tree
from tngeo.graphs.builders import (
    build_branching_mera_graph_1d,
    build_finite_range_mera_graph,
    build_mera_graph,
    build_mps_graph,
    build_peps_graph,
)
from tngeo.lab.branching import classify_branching
from tngeo.lab.crossover import crossover_diagnostics
from tngeo.lab.saturation import entropy_saturation
from tngeo.states.causal_cone import correlator_causal_cone, scaling_spectrum
from tngeo.states.conversion import mera_to_mps
from tngeo.states.finite_range import build_finite_range_mera
from tngeo.states.mera import BinaryMERA, random_mera
from tngeo.states.mera import block_entropy as mera_block_entropy
from tngeo.states.mps import (
    DEFAULT_COUPLING,
    HomogeneousMPS,
    correlation_length,
    correlator_profile,
    random_homogeneous_mps,
    transfer_spectrum,
)
from tngeo.states.mps import block_entropy as mps_block_entropy
from tngeo.experiments.experiment import Experiment, InstanceResult
from tngeo.tensors.random import random_local_operator
from tngeo.utils.config import ExperimentConfig, GeometryConfig
from tngeo.utils.logging import get_logger
from tngeo.utils.seeding import derive_seed

logger = get_logger(__name__)

SPECTRUM_COUNT = 8


def graph_from_config(g: GeometryConfig) -> TNGraph:
    """Build the geometry named by ``g.kind``."""
    d = g.site_dim
    if g.kind == "mps":
        return build_mps_graph(g.N, chi=g.chi, d=d)
    if g.kind == "peps":
        return build_peps_graph(g.Lx, g.Ly, chi=g.chi, d=d)
    if g.kind == "mera":
        return build_mera_graph(g.N, g.depth(), scale_invariant=g.scale_invariant, chi=g.chi, d=d)
    if g.kind == "finite_range":
        return build_finite_range_mera_graph(g.N, g.z0, chi=g.chi, d=d)
    if g.kind == "branching":
        return build_branching_mera_graph_1d(g.N, g.branch_schedule, chi=g.chi, d=d)
    raise ValueError(f"unknown geometry kind {g.kind!r}")


def tree_from_config(g: GeometryConfig) -> BranchingTree:
    if g.branch_schedule:
        return BranchingTree.from_schedule(g.D, g.branch_schedule)
    return table_tree(g.D, g.tree)


def mps_coupling(g: GeometryConfig) -> Optional[float]:
    """Coupling passed to :func:`random_homogeneous_mps` for ``g.ensemble``.

    ``auto`` is the two-sector ensemble at ``DEFAULT_COUPLING`` for even chi
    and the iid ensemble for odd chi.  An explicit ``coupling`` always wins.
    """
    if g.ensemble == "iid":
        return None
    if g.coupling is not None:
        return g.coupling
    if g.ensemble == "two_sector" or (g.chi >= 2 and g.chi % 2 == 0):
        return DEFAULT_COUPLING
    return None


def _operators(d: int, seed: int):
    return random_local_operator(d, derive_seed(seed, 1)), random_local_operator(d, derive_seed(seed, 2))


# =============================================================================
# MPS
# =============================================================================

class _MPSExperiment(Experiment):
    def state(self, seed: int) -> HomogeneousMPS:
        return random_homogeneous_mps(self.chi, self.d, seed, coupling=mps_coupling(self.geometry))


class MPSCorrelatorExperiment(_MPSExperiment):
    kind = "mps_corr"

    def run_instance(self, index: int, seed: int) -> InstanceResult:
        m = self.state(seed)
        P, Q = _operators(self.d, seed)
        rs = sorted(set(self.sweep.r))
        cs = correlator_profile(m, P, Q, rs)
        rows = [self.row("corr", seed, r, abs(c)) for r, c in zip(rs, cs)]
        xi = correlation_length(m)
        report: Dict[str, Any] = {"xi_transfer": xi}
        if len(rs) >= MIN_DECAY_POINTS:
            report["fit"] = fit_decay(list(zip(rs, cs))).to_dict()
        window = decay_window(xi)
        if len(window) >= MIN_DECAY_POINTS:
            # the same operators sampled over [2 xi, 6 xi]
            report["window_fit"] = fit_decay(list(zip(window, correlator_profile(m, P, Q, window)))).to_dict()
        return InstanceResult(index, seed, rows, report)


class MPSEntropyExperiment(_MPSExperiment):
    kind = "mps_entropy"

    def run_instance(self, index: int, seed: int) -> InstanceResult:
        m = self.state(seed)
        N = self.geometry.N
        Ls = sorted(set(self.sweep.L))
        values = [(L, mps_block_entropy(m, L, N)) for L in Ls]
        rows = [self.row("entropy", seed, L, s) for L, s in values]
        report: Dict[str, Any] = {"N": N}
        if len(values) >= MIN_ENTROPY_POINTS:
            report["fit"] = fit_entropy(values).to_dict()
        return InstanceResult(index, seed, rows, report)


class MPSSpectrumExperiment(_MPSExperiment):
    kind = "mps_spectrum"

    def run_instance(self, index: int, seed: int) -> InstanceResult:
        m = self.state(seed)
        spec = transfer_spectrum(m, min(SPECTRUM_COUNT, m.chi ** 2))
        rows = [self.row("spectrum", seed, k, abs(lam)) for k, lam in enumerate(spec.eigenvalues)]
        report = {
            "eigenvalues": [[float(z.real), float(z.imag)] for z in spec.eigenvalues],
            "degenerate": spec.degenerate,
            "xi": None if spec.degenerate else correlation_length(m),
        }
        return InstanceResult(index, seed, rows, report)


# =============================================================================
# MERA
# =============================================================================

class _MERAExperiment(Experiment):
    def state(self, seed: int) -> BinaryMERA:
        g = self.geometry
        return random_mera(g.N, g.depth(), g.chi, seed, scale_invariant=g.scale_invariant, d=g.site_dim)


class MERACorrelatorExperiment(_MERAExperiment):
    kind = "mera_corr"

    def run_instance(self, index: int, seed: int) -> InstanceResult:
        m = self.state(seed)
        P, Q = _operators(self.d, seed)
        rs = sorted(set(self.sweep.r))
        cs = [correlator_causal_cone(m, P, Q, 0, r % m.N) for r in rs]
        rows = [self.row("corr", seed, r, abs(c)) for r, c in zip(rs, cs)]
        report: Dict[str, Any] = {}
        if len(rs) >= MIN_DECAY_POINTS:
            report["fit"] = fit_decay(list(zip(rs, cs))).to_dict()
        return InstanceResult(index, seed, rows, report)


class MERAEntropyExperiment(_MERAExperiment):
    kind = "mera_entropy"

    def run_instance(self, index: int, seed: int) -> InstanceResult:
        m = self.state(seed)
        Ls = sorted(set(self.sweep.L))
        values = [(L, mera_block_entropy(m, L)) for L in Ls]
        rows = [self.row("entropy", seed, L, s) for L, s in values]
        report: Dict[str, Any] = {}
        if len(values) >= MIN_ENTROPY_POINTS:
            report["fit"] = fit_entropy(values).to_dict()
        return InstanceResult(index, seed, rows, report)


class MERASpectrumExperiment(_MERAExperiment):
    kind = "mera_spectrum"

    def run_instance(self, index: int, seed: int) -> InstanceResult:
        spec = scaling_spectrum(self.state(seed))
        rows = [self.row("spectrum", seed, k, abs(lam)) for k, lam in enumerate(spec.eigenvalues)]
        return InstanceResult(index, seed, rows, spec.to_dict())


# =============================================================================
# Geometry
# =============================================================================

def _origins(g: TNGraph, count: int) -> List[int]:
    return list(range(min(count, len(g.sites))))


class GeodesicExperiment(Experiment):
    kind = "geodesic"

    def run_instance(self, index: int, seed: int) -> InstanceResult:
        g = graph_from_config(self.geometry)
        rs = sorted(set(self.sweep.r))
        profile = geodesic_profile(g, rs, _origins(g, self.sweep.origins))
        rows = [self.row("geodesic", seed, r, profile[r]) for r in rs]
        report: Dict[str, Any] = {"geometry": g.kind}
        if len(rs) >= MIN_ENTROPY_POINTS:
            report["fit"] = fit_entropy(sorted(profile.items())).to_dict()
        return InstanceResult(index, seed, rows, report)


class MinCutExperiment(Experiment):
    kind = "mincut"

    def run_instance(self, index: int, seed: int) -> InstanceResult:
        g = graph_from_config(self.geometry)
        Ls = sorted(set(self.sweep.L))
        if g.kind == "peps":
            lx, ly = self.geometry.Lx, self.geometry.Ly
            cuts = {
                L: float(min_cut(g, Region.rectangle((lx - L) // 2, (ly - L) // 2, L, L)).n_bonds)
                for L in Ls
            }
        else:
            cuts = block_min_cuts(g, Ls, starts=_origins(g, self.sweep.origins))
        rows = [self.row("mincut", seed, L, cuts[L]) for L in Ls]
        report: Dict[str, Any] = {"geometry": g.kind}
        if len(Ls) >= MIN_ENTROPY_POINTS:
            report["fit"] = fit_entropy(sorted(cuts.items())).to_dict()
        return InstanceResult(index, seed, rows, report)


class BranchExperiment(Experiment):
    kind = "branch"

    def run_instance(self, index: int, seed: int) -> InstanceResult:
        tree = tree_from_config(self.geometry)
        D = self.geometry.D
        rows = [
            self.row("layer_sum", seed, L, layer_sum_predictor(D, L, branch=tree).n)
            for L in sorted(set(self.sweep.L))
            if L >= 2
        ]
        return InstanceResult(index, seed, rows, classify_branching(tree, D).to_dict())


# =============================================================================
# Finite-range MERA
# =============================================================================

class _FiniteRangeExperiment(Experiment):
    def state(self, seed: int):
        g = self.geometry
        return build_finite_range_mera(g.N, g.z_xi, g.delta_z, chi=g.chi, seed=seed, d=g.site_dim)


class ConversionExperiment(_FiniteRangeExperiment):
    kind = "frmera_convert"

    def run_instance(self, index: int, seed: int) -> InstanceResult:
        report = mera_to_mps(self.state(seed))
        rows = [self.row("chi_mps", seed, b, c) for b, c in enumerate(report.chi_mps_per_bond)]
        out = report.to_dict()
        out["bound_per_bond"] = list(report.bound_per_bond)
        return InstanceResult(index, seed, rows, out)


class CrossoverExperiment(Experiment):
    kind = "frmera_crossover"

    def run_instance(self, index: int, seed: int) -> InstanceResult:
        g = self.geometry
        graph = build_finite_range_mera_graph(g.N, g.z0, chi=g.chi, d=g.site_dim)
        report = crossover_diagnostics(graph, self.sweep.r, _origins(graph, self.sweep.origins))
        rows = [self.row("geodesic", seed, r, v) for r, v in report.points]
        return InstanceResult(index, seed, rows, report.to_dict())


class SaturationExperiment(_FiniteRangeExperiment):
    kind = "frmera_saturation"

    def run_instance(self, index: int, seed: int) -> InstanceResult:
        table = entropy_saturation(self.state(seed), self.sweep.L)
        rows = []
        for r in table.rows:
            rows.append(self.row("mincut", seed, r.L, r.n_bonds))
            if r.entropy is not None:
                rows.append(self.row("entropy", seed, r.L, r.entropy))
        out = table.to_dict()
        out["bound_holds"] = table.bound_holds
        out["saturation_length"] = table.saturation_length()
        return InstanceResult(index, seed, rows, out)


EXPERIMENTS: Dict[str, Type[Experiment]] = {
    cls.kind: cls
    for cls in (
        MPSCorrelatorExperiment,
        MPSEntropyExperiment,
        MPSSpectrumExperiment,
        MERACorrelatorExperiment,
        MERAEntropyExperiment,
        MERASpectrumExperiment,
        GeodesicExperiment,
        MinCutExperiment,
        BranchExperiment,
        ConversionExperiment,
        CrossoverExperiment,
        SaturationExperiment,
    )
}


def make_experiment(config: ExperimentConfig) -> Experiment:
    try:
        cls = EXPERIMENTS[config.experiment]
    except KeyError:
        raise ValueError(f"unknown experiment kind {config.experiment!r}") from None
    return cls(config)
