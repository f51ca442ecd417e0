# src/tests/test_tensors.py
"""Labelled tensors, contraction, eigensolvers and seeded random tensors."""
import numpy as np
import pytest

from tngeo.errors import ConvergenceError
from tngeo.tensors import (
    LocalOperator,
    Tensor,
    contract,
    contract_network,
    dominant_eigs,
    hermitian_eig,
    random_isometry,
    random_local_operator,
    random_unitary,
    trace,
)
from tngeo.testing import random_hermitian


# =============================================================================
# Contraction
# =============================================================================

def test_identity_contraction_returns_vector():
    eye = Tensor.from_array(np.eye(3), ["i", "j"])
    v = Tensor.from_array(np.array([1.0, 2.0, 3.0]), ["k"])
    out = contract(eye, v, [("j", "k")])
    assert out.labels == ("i",)
    assert np.allclose(out.data, [1, 2, 3])


def test_full_contraction_of_identities_is_dimension():
    a = Tensor.from_array(np.eye(3), ["i", "j"])
    b = Tensor.from_array(np.eye(3), ["k", "l"])
    assert contract(a, b, [("i", "k"), ("j", "l")]).item() == pytest.approx(3.0)


def test_contraction_matches_loop_reference():
    rng = np.random.default_rng(3)
    A = rng.standard_normal((2, 3, 4)) + 1j * rng.standard_normal((2, 3, 4))
    B = rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))
    out = contract(Tensor(A, ("a", "b", "c")), Tensor(B, ("x", "y")), [("c", "x"), ("b", "y")])
    ref = np.zeros(2, dtype=complex)
    for a in range(2):
        for b in range(3):
            for c in range(4):
                ref[a] += A[a, b, c] * B[c, b]
    assert out.labels == ("a",)
    assert np.allclose(out.data, ref, atol=1e-12)


def test_contraction_rejects_dimension_mismatch():
    a = Tensor(np.ones((2, 3)), ("i", "j"))
    b = Tensor(np.ones((4,)), ("k",))
    with pytest.raises(ValueError, match="dimension mismatch"):
        contract(a, b, [("j", "k")])


def test_contraction_rejects_duplicate_output_labels():
    a = Tensor(np.ones((2, 3)), ("i", "j"))
    b = Tensor(np.ones((3, 2)), ("j2", "i"))
    with pytest.raises(ValueError, match="duplicate"):
        contract(a, b, [("j", "j2")])


def test_missing_label_is_reported():
    a = Tensor(np.ones(2), ("i",))
    with pytest.raises(ValueError, match="no index"):
        a.axis("z")


def test_network_contraction_agrees_with_pairwise():
    rng = np.random.default_rng(11)
    x = Tensor(rng.standard_normal((2, 3)), ("a", "b"))
    y = Tensor(rng.standard_normal((3, 4)), ("b", "c"))
    z = Tensor(rng.standard_normal((4, 2)), ("c", "d"))
    pair = contract(contract(x, y, [("b", "b")]), z, [("c", "c")])
    net = contract_network([x, y, z], ["a", "d"])
    assert net.allclose(pair)


def test_partial_trace():
    t = Tensor(np.arange(16.0).reshape(2, 2, 2, 2), ("a", "b", "c", "d"))
    out = trace(t, [("a", "c")])
    assert out.labels == ("b", "d")
    assert np.allclose(out.data, np.einsum("abad->bd", t.data))


def test_fuse_and_split_are_inverse():
    t = Tensor(np.arange(24.0).reshape(2, 3, 4), ("a", "b", "c"))
    fused = t.fuse(["b", "c"], "bc")
    assert fused.dims == (2, 12)
    assert fused.split("bc", ["b", "c"], [3, 4]).allclose(t)


def test_tensors_are_read_only():
    t = Tensor(np.zeros(3), ("i",))
    with pytest.raises(ValueError):
        t.data[0] = 1.0


def test_local_operator_must_be_hermitian():
    with pytest.raises(ValueError, match="Hermitian"):
        LocalOperator(np.array([[0.0, 1.0], [0.0, 0.0]]))


# =============================================================================
# Eigensolvers
# =============================================================================

def test_identity_spectrum():
    vals, _ = hermitian_eig(np.eye(4))
    assert np.allclose(vals, [1, 1, 1, 1])


def test_diagonal_spectrum_and_vectors():
    vals, vecs = hermitian_eig(np.diag([3.0, 1.0, -2.0]))
    assert np.allclose(vals, [3, 1, -2])
    assert np.allclose(np.abs(vecs.data), np.eye(3), atol=1e-12)


@pytest.mark.parametrize("method", ["jacobi", "lapack"])
def test_hermitian_reconstruction(method):
    h = random_hermitian(6, 5)
    vals, vecs = hermitian_eig(h, method=method)
    V = vecs.data
    assert np.allclose(V @ np.diag(vals) @ V.conj().T, h, atol=1e-9)
    assert np.all(np.diff(vals) <= 1e-12)


def test_hermitian_eig_rejects_non_hermitian():
    with pytest.raises(ValueError):
        hermitian_eig(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_dominant_pair_of_diagonal():
    res = dominant_eigs(np.diag([2.0, 0.5]), 2)
    assert np.allclose(res.eigenvalues, [2.0, 0.5])


def test_dominant_pair_of_stochastic_matrix():
    res = dominant_eigs(np.array([[0.9, 0.1], [0.1, 0.9]]), 2)
    assert np.allclose(res.eigenvalues, [1.0, 0.8], atol=1e-10)
    assert not res.degenerate


def test_dominant_eigs_match_dense_solver():
    rng = np.random.default_rng(9)
    m = rng.standard_normal((9, 9)) + 1j * rng.standard_normal((9, 9))
    res = dominant_eigs(m, 3)
    ref = sorted(np.linalg.eigvals(m), key=lambda z: -abs(z))[:3]
    assert np.allclose(res.eigenvalues, ref, atol=1e-7)
    for lam, v in res:
        assert np.linalg.norm(m @ v - lam * v) <= 1e-8 * np.linalg.norm(m)


def test_modulus_ties_are_flagged():
    res = dominant_eigs(np.diag([1.0, -1.0, 0.2]), 2)
    assert res.degenerate
    assert res.ties == [(0, 1)]


def test_dominant_eigs_rejects_bad_k():
    with pytest.raises(ValueError):
        dominant_eigs(np.eye(2), 3)


def test_convergence_error_is_numeric():
    from tngeo.errors import NumericError

    assert issubclass(ConvergenceError, NumericError)


# =============================================================================
# Random tensors
# =============================================================================

def test_random_unitary():
    w = random_unitary(4, 1).data
    assert np.allclose(w.conj().T @ w, np.eye(4), atol=1e-12)
    assert np.allclose(w @ w.conj().T, np.eye(4), atol=1e-12)


def test_random_isometry():
    w = random_isometry(4, 2, 1).data
    assert w.shape == (4, 2)
    assert np.allclose(w.conj().T @ w, np.eye(2), atol=1e-12)


def test_random_tensors_are_deterministic():
    assert np.array_equal(random_isometry(6, 3, 42).data, random_isometry(6, 3, 42).data)
    assert not np.array_equal(random_isometry(6, 3, 42).data, random_isometry(6, 3, 43).data)


def test_random_isometry_rejects_wide_shape():
    with pytest.raises(ValueError):
        random_isometry(2, 4, 0)


def test_random_local_operator_is_traceless_and_normalised():
    op = random_local_operator(3, 8)
    assert abs(np.trace(op.matrix)) < 1e-12
    assert np.linalg.norm(op.matrix) == pytest.approx(1.0)
