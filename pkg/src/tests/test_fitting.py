# src/tests/test_fitting.py
"""Model selection for decay and entropy scaling laws."""
import numpy as np
import pytest

from tngeo.analysis import fit_decay, fit_entropy

R = list(range(1, 21))
LS = [2, 4, 8, 16, 32, 64, 128]


def test_exponential_decay():
    report = fit_decay([(r, np.exp(-r / 3.0)) for r in R])
    assert report.model == "exponential"
    assert report.params["xi"] == pytest.approx(3.0, rel=0.01)
    assert report.r_squared > 0.999
    assert report.kind == "decay"


def test_power_law_decay():
    report = fit_decay([(r, r ** -2.0) for r in R])
    assert report.model == "power"
    assert report.params["q"] == pytest.approx(2.0, rel=1e-6)


def test_complex_and_signed_values_use_magnitudes():
    pts = [(r, (-1) ** r * 1j * np.exp(-r / 2.0)) for r in R]
    report = fit_decay(pts)
    assert report.model == "exponential"
    assert report.params["xi"] == pytest.approx(2.0, rel=1e-6)


def test_mixed_model_reports_crossover():
    pts = [(r, np.exp(-r / 20.0) / r ** 2) for r in range(2, 101)]
    report = fit_decay(pts, crossover=True)
    assert report.model == "mixed"
    assert 10.0 <= report.crossover <= 40.0
    assert report.params["q"] == pytest.approx(2.0, rel=0.01)


def test_numeric_zeros_are_dropped():
    pts = [(r, np.exp(-r / 3.0)) for r in R] + [(100, 0.0), (101, 1e-20)]
    report = fit_decay(pts)
    assert report.dropped == 2
    assert report.model == "exponential"


def test_decay_needs_enough_points():
    with pytest.raises(ValueError):
        fit_decay([(1, 0.5), (2, 0.25), (3, 0.125), (4, 0.0625)])
    with pytest.raises(ValueError):
        fit_decay([(r, 0.0) for r in R])
    with pytest.raises(ValueError):
        fit_decay([(0, 1.0)] + [(r, 0.5 ** r) for r in R])


def test_constant_entropy():
    report = fit_entropy([(L, 2.0) for L in LS])
    assert report.model == "constant"
    assert report.params["a"] == pytest.approx(2.0)


def test_log_entropy():
    report = fit_entropy([(L, 0.5 + np.log2(L) / 3.0) for L in LS])
    assert report.model == "log"
    assert report.params["b"] == pytest.approx(1.0 / 3.0, rel=0.02)


def test_linear_entropy():
    report = fit_entropy([(L, 0.25 * L) for L in LS])
    assert report.model == "linear"
    assert report.params["b"] == pytest.approx(0.25)


def test_l_log_l_entropy():
    report = fit_entropy([(L, L * np.log2(L)) for L in LS])
    assert report.model == "n·log n"


def test_entropy_selection_is_scale_invariant():
    pts = [(L, 0.5 + np.log2(L) / 3.0 + 0.01 * np.sin(L)) for L in LS]
    a = fit_entropy(pts)
    b = fit_entropy([(L, 1000.0 * s) for L, s in pts])
    assert a.model == b.model


def test_scores_rank_every_model():
    report = fit_entropy([(L, np.log2(L)) for L in LS])
    assert set(report.scores) == {"constant", "log", "linear", "n·log n"}
    assert report.margin > 0
    assert not report.tie


def test_entropy_input_errors():
    with pytest.raises(ValueError):
        fit_entropy([(1, 0.0), (2, 1.0), (4, 2.0)])
    with pytest.raises(ValueError):
        fit_entropy([(1, 0.0), (2, 1.0), (2, 1.0), (4, 2.0)])
    with pytest.raises(ValueError):
        fit_entropy([(0, 0.0), (2, 1.0), (3, 1.5), (4, 2.0)])
