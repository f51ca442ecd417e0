# src/tests/test_mps.py
"""Homogeneous MPS: normalisation, transfer spectra, correlators and entropies."""
import numpy as np
import pytest

from tngeo.analysis import decay_window, fit_decay
from tngeo.errors import SizeLimitError
from tngeo.graphs import Region, build_mps_graph, min_cut
from tngeo.states import (
    DEFAULT_COUPLING,
    FiniteMPS,
    HomogeneousMPS,
    central_block,
    correlation_length,
    correlator_profile,
    mps_block_entropy,
    mps_state_vector,
    normalize,
    product_mps,
    random_homogeneous_mps,
    subsystem_entropy,
    transfer_spectrum,
    two_point_correlator,
)
from tngeo.tensors import LocalOperator, dominant_eigs, random_local_operator
from tngeo.testing import dense_correlator

PAULIS = [
    np.eye(2),
    np.array([[0, 1], [1, 0]]),
    np.array([[0, -1j], [1j, 0]]),
    np.array([[1, 0], [0, -1]]),
]


def _depolarizing_mps(q: float) -> HomogeneousMPS:
    """χ=2, d=4 tensor whose transfer spectrum is (1, 1-4q, 1-4q, 1-4q)."""
    probs = [1 - 3 * q, q, q, q]
    A = np.stack([np.sqrt(p) * s for p, s in zip(probs, PAULIS)], axis=1)
    return HomogeneousMPS.from_tensor(A)


# =============================================================================
# Normalisation and transfer matrices
# =============================================================================

def test_normalize_leaves_unit_product_state():
    m = product_mps(np.array([1.0, 0.0]))
    n = normalize(m)
    assert np.allclose(n.A, m.A)


def test_normalize_is_scale_invariant():
    A = random_homogeneous_mps(3, 2, 4).A
    a = normalize(HomogeneousMPS.from_tensor(A))
    b = normalize(HomogeneousMPS.from_tensor(7.0 * A))
    assert np.allclose(a.A, b.A, atol=1e-12)


def test_normalized_dominant_eigenvalue_is_one():
    m = normalize(HomogeneousMPS.from_tensor(np.random.default_rng(2).standard_normal((3, 2, 3))))
    lam = dominant_eigs(m.transfer().matrix, 1).eigenvalues[0]
    assert abs(lam - 1.0) < 1e-10


def test_normalize_rejects_zero_tensor():
    with pytest.raises(ValueError):
        HomogeneousMPS(np.zeros((2, 2, 2)), np.ones(2), np.ones(2))


def test_identity_dressed_transfer_matches_plain():
    m = random_homogeneous_mps(3, 2, 1)
    dressed = m.transfer(LocalOperator.identity(2)).matrix
    assert np.allclose(dressed, m.transfer().matrix, atol=1e-12)


# =============================================================================
# Correlation length
# =============================================================================

def test_product_state_has_zero_correlation_length():
    assert correlation_length(product_mps(np.array([0.6, 0.8]))) == 0.0


def test_prescribed_transfer_spectrum():
    m = _depolarizing_mps(1 / 8)
    spec = transfer_spectrum(m, 2)
    assert np.allclose(np.abs(spec.eigenvalues), [1.0, 0.5], atol=1e-10)
    assert correlation_length(m) == pytest.approx(1 / np.log(2), rel=1e-8)


def test_correlation_length_needs_normalised_state():
    m = random_homogeneous_mps(2, 2, 3)
    with pytest.raises(ValueError, match="normalised"):
        correlation_length(HomogeneousMPS(3.0 * m.A, m.left, m.right))


def test_two_sector_ensemble_has_isolated_real_gap():
    m = random_homogeneous_mps(4, 2, 0, coupling=0.2)
    spec = transfer_spectrum(m, 3)
    lam = spec.eigenvalues
    assert abs(lam[1].imag) < 1e-8
    assert abs(lam[1]) > abs(lam[2]) + 0.02
    assert correlation_length(m) > 2.0


# =============================================================================
# Correlators
# =============================================================================

def test_product_state_is_uncorrelated():
    m = product_mps(np.array([0.3, 0.4j, 0.5]))
    P, Q = random_local_operator(3, 1), random_local_operator(3, 2)
    assert np.all(np.abs(correlator_profile(m, P, Q, [1, 2, 5])) < 1e-14)


def test_identity_operators_are_uncorrelated():
    m = random_homogeneous_mps(3, 2, 8)
    eye = LocalOperator.identity(2)
    assert abs(two_point_correlator(m, eye, eye, 0, 4)) < 1e-12
    assert abs(two_point_correlator(m, eye, eye, 2, 7, N=10)) < 1e-12


@pytest.mark.parametrize("seed", range(4))
def test_finite_chain_correlator_matches_state_vector(seed):
    m = random_homogeneous_mps(3, 2, seed)
    P, Q = random_local_operator(2, 100 + seed), random_local_operator(2, 200 + seed)
    psi = mps_state_vector(m, 12)
    for x1, x2 in [(0, 11), (3, 8), (5, 6), (9, 2)]:
        ref = dense_correlator(psi, [2] * 12, P, Q, x1, x2)
        got = two_point_correlator(m, P, Q, x1, x2, N=12)
        assert abs(got - ref) < 1e-10


def test_profile_matches_pointwise_correlator():
    m = random_homogeneous_mps(3, 2, 5)
    P, Q = random_local_operator(2, 1), random_local_operator(2, 2)
    prof = correlator_profile(m, P, Q, [1, 3, 6])
    pts = [two_point_correlator(m, P, Q, 10, 10 + r) for r in (1, 3, 6)]
    assert np.allclose(prof, pts, atol=1e-12)


def test_connected_correlator_ignores_tensor_scale():
    m = random_homogeneous_mps(3, 2, 6)
    P, Q = random_local_operator(2, 3), random_local_operator(2, 4)
    scaled = HomogeneousMPS.from_tensor(2.5 * m.A)
    assert np.allclose(
        correlator_profile(m, P, Q, [1, 2, 4]),
        correlator_profile(scaled, P, Q, [1, 2, 4]),
        atol=1e-10,
    )


def test_correlator_rejects_equal_sites_and_bad_dims():
    m = random_homogeneous_mps(2, 2, 0)
    P = random_local_operator(2, 0)
    with pytest.raises(ValueError):
        two_point_correlator(m, P, P, 3, 3)
    with pytest.raises(ValueError):
        two_point_correlator(m, random_local_operator(3, 0), P, 0, 1)


def test_random_mps_correlators_decay_exponentially():
    selected = 0
    for seed in range(10):
        m = random_homogeneous_mps(4, 2, seed, coupling=DEFAULT_COUPLING)
        xi = correlation_length(m)
        P, Q = random_local_operator(2, 1000 + seed), random_local_operator(2, 2000 + seed)
        rs = decay_window(xi)
        report = fit_decay(list(zip(rs, correlator_profile(m, P, Q, rs))))
        if report.model == "exponential":
            selected += 1
            assert report.params["xi"] == pytest.approx(xi, rel=0.05)
            assert report.r_squared >= 0.98
    assert selected >= 9


# =============================================================================
# State vectors and entropies
# =============================================================================

def test_product_amplitudes():
    v = np.array([0.6, 0.8])
    psi = mps_state_vector(product_mps(v), 3).data
    assert np.allclose(psi, np.einsum("i,j,k->ijk", v, v, v))


def test_two_site_state_matches_direct_contraction():
    m = random_homogeneous_mps(2, 3, 9)
    ref = np.einsum("a,asb,btc,c->st", m.left, m.A, m.A, m.right)
    ref = ref / np.linalg.norm(ref)
    assert np.allclose(mps_state_vector(m, 2).data, ref, atol=1e-12)


def test_state_vector_is_normalised():
    psi = mps_state_vector(random_homogeneous_mps(3, 2, 1), 8)
    assert psi.norm() == pytest.approx(1.0, abs=1e-12)


def test_state_vector_size_cap():
    with pytest.raises(SizeLimitError):
        mps_state_vector(random_homogeneous_mps(2, 2, 0), 21)


def test_product_state_has_no_entanglement():
    m = product_mps(np.array([1.0, 1.0j]))
    assert mps_block_entropy(m, 3, 8) == pytest.approx(0.0, abs=1e-12)


def test_bell_pair_carries_one_bit():
    bell = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2)
    assert subsystem_entropy(bell, [2, 2], [0]) == pytest.approx(1.0, abs=1e-12)


def test_environment_route_matches_state_vector():
    m = random_homogeneous_mps(3, 2, 12)
    for L in (1, 3, 5, 7):
        env = mps_block_entropy(m, L, 10)
        sv = mps_block_entropy(m, L, 10, method="state")
        assert env == pytest.approx(sv, abs=1e-9)


def test_purity_symmetry():
    m = random_homogeneous_mps(3, 2, 14)
    psi = mps_state_vector(m, 10)
    block = list(central_block(10, 4))
    rest = [x for x in range(10) if x not in block]
    assert subsystem_entropy(psi, [2] * 10, block) == pytest.approx(
        subsystem_entropy(psi, [2] * 10, rest), abs=1e-9
    )


@pytest.mark.parametrize("chi", [2, 3, 4])
def test_entropy_respects_min_cut_bound(chi):
    N = 12
    g = build_mps_graph(N, chi=chi)
    for seed in range(3):
        m = random_homogeneous_mps(chi, 2, seed)
        for L in range(1, N):
            block = central_block(N, L)
            bound = min_cut(g, Region.block(block.start, L)).weight
            assert mps_block_entropy(m, L, N) <= bound + 1e-9


@pytest.mark.parametrize("seed", range(10))
def test_entropy_saturates(seed):
    # blocks of 24..32 sites, at least 32 sites from either chain end
    m = random_homogeneous_mps(4, 2, seed)
    values = [mps_block_entropy(m, L, 96) for L in range(24, 33)]
    assert max(values) - min(values) < 0.05
    assert max(values) <= 4.0 + 1e-9


def test_exact_mps_from_state_vector():
    m = random_homogeneous_mps(2, 2, 3)
    psi = mps_state_vector(m, 8).data.reshape(-1)
    fm = FiniteMPS.from_state_vector(psi, [2] * 8)
    assert max(fm.bond_dims) <= 2
    assert np.allclose(fm.state_vector().data.reshape(-1), psi, atol=1e-12)
