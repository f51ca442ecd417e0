# src/tngeo/states/__init__.py
"""
Concrete tensor-network states: homogeneous MPS, binary MERA, finite-range
MERA and the MERA-to-MPS compiler.

MPS and MERA both define ``state_vector`` and ``block_entropy``; they are
exported here with ``mps_`` / ``mera_`` prefixes.
"""
from tngeo.states.entropy import central_block, entropy_bits, schmidt_spectrum, subsystem_entropy
from tngeo.states.mps import (
    DEFAULT_COUPLING,
    FiniteMPS,
    HomogeneousMPS,
    TransferMatrix,
    correlation_length,
    correlator_profile,
    normalize,
    product_mps,
    random_homogeneous_mps,
    transfer_spectrum,
    two_point_correlator,
)
from tngeo.states.mps import block_entropy as mps_block_entropy
from tngeo.states.mps import state_vector as mps_state_vector
from tngeo.states.mera import BinaryMERA, MERALayer, product_layer, product_mera, random_layer, random_mera
from tngeo.states.mera import block_entropy as mera_block_entropy
from tngeo.states.mera import state_vector as mera_state_vector
from tngeo.states.causal_cone import (
    ScalingSpectrum,
    ScalingSuperoperator,
    ascend,
    causal_cone_profile,
    correlator_causal_cone,
    expectation,
    scaling_spectrum,
    scaling_superoperator,
)
from tngeo.states.finite_range import FiniteRangeMERA, build_finite_range_mera
from tngeo.states.conversion import ConversionReport, cut_bounds, mera_to_mps

__all__ = [
    "central_block",
    "entropy_bits",
    "schmidt_spectrum",
    "subsystem_entropy",
    "DEFAULT_COUPLING",
    "FiniteMPS",
    "HomogeneousMPS",
    "TransferMatrix",
    "correlation_length",
    "correlator_profile",
    "normalize",
    "product_mps",
    "random_homogeneous_mps",
    "transfer_spectrum",
    "two_point_correlator",
    "mps_block_entropy",
    "mps_state_vector",
    "BinaryMERA",
    "MERALayer",
    "product_layer",
    "product_mera",
    "random_layer",
    "random_mera",
    "mera_block_entropy",
    "mera_state_vector",
    "ScalingSpectrum",
    "ScalingSuperoperator",
    "ascend",
    "causal_cone_profile",
    "correlator_causal_cone",
    "expectation",
    "scaling_spectrum",
    "scaling_superoperator",
    "FiniteRangeMERA",
    "build_finite_range_mera",
    "ConversionReport",
    "cut_bounds",
    "mera_to_mps",
]
