import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from transpacing import analysis, ensemble, transition
from transpacing.params import AlphaVec, DomainError, TransitionKind
from transpacing.surmise import surmise_cdf, surmise_pdf

K = TransitionKind


def test_histogram_examples():
    h = analysis.histogram(np.array([1.0, 1.0, 3.0, 3.0]), 2, (0.0, 4.0))
    assert h.counts.tolist() == [2, 2]
    assert h.density.tolist() == [0.25, 0.25]
    h = analysis.histogram(np.full(10, 2.5), 5, (0.0, 5.0))
    assert np.count_nonzero(h.counts) == 1
    with pytest.raises(DomainError):
        analysis.histogram(np.array([]), 3, (0, 1))


def test_histogram_out_of_range_counted():
    h = analysis.histogram(np.array([-1.0, 0.5, 0.7, 9.0, 10.0]), 4, (0.0, 1.0))
    assert (h.below, h.above, h.n) == (1, 2, 2)


@settings(max_examples=30)
@given(st.lists(st.floats(0, 10), min_size=1, max_size=200), st.integers(1, 40))
def test_histogram_mass(values, bins):
    h = analysis.histogram(np.array(values), bins, (0.0, 10.0))
    assert h.counts.sum() == len(values)
    assert np.sum(h.density * h.widths) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.slow
def test_histogram_ginibre_endpoint_poisson():
    s = ensemble.run_ensemble(AlphaVec(1, 1, 0), 1_000_000, seed=5)
    h = analysis.histogram(s, 100, (0.0, 10.0), scale=transition.GINIBRE_MEAN)
    exact = np.diff(surmise_cdf(3, h.edges)) / h.widths
    sigma = np.sqrt(np.maximum(h.counts, 1)) / (h.n * h.widths)
    assert np.all(np.abs(h.density - exact) <= 5 * sigma)


def test_cdf_from_pdf_examples():
    cdf = analysis.cdf_from_pdf(lambda r: surmise_pdf(1, r))
    assert cdf(1.0) == pytest.approx(1 - math.exp(-math.pi / 4), abs=1e-8)
    assert cdf(1.0) == pytest.approx(0.5440, abs=1e-4)
    x = np.linspace(0, 6, 1000)
    assert np.all(np.diff(cdf(x)) >= 0)
    assert cdf(0.0) == 0.0 and cdf(12.0) == 1.0
    median = brentq(lambda r: cdf(r) - 0.5, 0.0, 3.0)
    assert median == pytest.approx(math.sqrt(4 * math.log(2) / math.pi), abs=1e-8)


def test_cdf_integrity_error():
    with pytest.raises(analysis.IntegrityError):
        analysis.cdf_from_pdf(lambda r: np.zeros_like(r))
    with pytest.raises(analysis.IntegrityError):
        analysis.cdf_from_pdf(lambda r: 2 * surmise_pdf(2, r))


def test_cdf_matches_closed_form_goe_ginibre():
    a = 0.4
    m = transition.mean_goe_ginibre(a)
    r = np.linspace(0, 5, 77)
    exact = transition.cdf_goe_ginibre(m * r, a)
    pdf = lambda r: transition.pdf_normalized(K.GOE_GINIBRE, r, a)
    assert np.max(np.abs(analysis.cdf_from_pdf(pdf)(r) - exact)) <= 1e-7
    # Hermite interpolation error falls like h^4
    assert np.max(np.abs(analysis.cdf_from_pdf(pdf, n_cells=2400)(r) - exact)) <= 1e-9


def test_ks_quantile_samples():
    n = 2000
    q = np.arange(1, n + 1) / (n + 1)
    x = np.sqrt(-4 * np.log1p(-q) / math.pi)  # beta = 1 quantiles
    rep = analysis.ks_statistic(x, lambda r: surmise_cdf(1, r))
    assert rep.statistic <= 1 / (n + 1) + 1e-12


def test_ks_wrong_model_detected():
    rng = np.random.default_rng(0)
    s = ensemble.run_ensemble(AlphaVec(0, 0, 0), 200_000, seed=1)
    rep = analysis.ks_statistic(s, lambda r: surmise_cdf(4, r), scale=transition.GOE_MEAN)
    assert rep.statistic >= 0.1 and not rep.passed


def test_ks_scale_invariance():
    s = ensemble.run_ensemble(AlphaVec(1, 0.5, 0), 20_000, seed=2)
    m = transition.mean_gue_ginibre(0.5)
    cdf_r = analysis.cdf_from_pdf(lambda r: transition.pdf_normalized(K.GUE_GINIBRE, r, 0.5))
    raw = analysis.ks_statistic(s, lambda x: cdf_r(np.asarray(x) / m))
    scaled = analysis.ks_statistic(s, cdf_r, scale=m)
    assert raw.statistic == pytest.approx(scaled.statistic, abs=1e-12)


def test_ks_report_contract():
    rep = analysis.KsReport(0.004, 10, 0.005)
    assert rep.passed and rep.to_dict()["pass"]
    assert analysis.default_ks_threshold(1_000_000) == pytest.approx(0.005)


def test_moment_audit_examples():
    norm, mean = analysis.moment_audit(lambda r: surmise_pdf(2, r), scale=1.0)
    assert norm == pytest.approx(1.0, abs=1e-10) and mean == pytest.approx(1.0, abs=1e-10)
    norm, mean = analysis.moment_audit(lambda s: transition.pdf_gue_ginibre(s, 0.5))
    assert norm == pytest.approx(1.0, abs=1e-8)
    assert mean == pytest.approx(transition.mean_gue_ginibre(0.5), abs=1e-8)
    with pytest.raises(analysis.IntegrityError):
        analysis.moment_audit(lambda s: np.zeros_like(s))


@pytest.mark.parametrize("kind", list(K))
@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
def test_moment_audit_unit_mean(kind, alpha):
    norm, mean = analysis.moment_audit(lambda r: transition.pdf_normalized(kind, r, alpha), scale=1.0)
    assert norm == pytest.approx(1.0, abs=1e-8)
    assert mean == pytest.approx(1.0, abs=1e-8)
