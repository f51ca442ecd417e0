# src/tngeo/tensors/__init__.py
"""
Dense tensor algebra: labelled tensors, contraction, eigensolvers and seeded
random generation.
"""
from tngeo.tensors.tensor import (
    LocalOperator,
    Tensor,
    contract,
    contract_network,
    trace,
)
from tngeo.tensors.eigen import EigenResult, dominant_eigs, hermitian_eig
from tngeo.tensors.random import (
    complex_gaussian,
    random_isometry,
    random_local_operator,
    random_unitary,
)

__all__ = [
    "Tensor",
    "LocalOperator",
    "contract",
    "contract_network",
    "trace",
    "EigenResult",
    "dominant_eigs",
    "hermitian_eig",
    "complex_gaussian",
    "random_isometry",
    "random_unitary",
    "random_local_operator",
]
