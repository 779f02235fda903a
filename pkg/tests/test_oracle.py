import math

import numpy as np
import pytest

from transpacing import oracle, transition
from transpacing.params import AlphaVec, TransitionKind
from transpacing.surmise import surmise_pdf

K = TransitionKind
GSE_AT_2 = 16 * math.exp(-0.5) / (48 * math.sqrt(2 * math.pi))  # 0.0806569


def test_integrate_1d_examples():
    v, err = oracle.integrate_1d(lambda x: np.sin(x) ** 2, 0.0, math.pi)
    assert v == pytest.approx(math.pi / 2, abs=1e-12)
    assert err >= 0
    v, _ = oracle.integrate_1d(lambda t: 1 / np.sqrt(1 - 0.5 * np.sin(t) ** 2), 0.0, math.pi / 2)
    assert v == pytest.approx(1.8540746773013719, abs=1e-12)
    v, _ = oracle.integrate_halfline(lambda s: s**3 * np.exp(-s * s / 8))
    assert v == pytest.approx(32.0, abs=1e-10)


def test_simpson_rule_agrees():
    spec = oracle.QuadratureSpec(panel_rule=oracle.PanelRule.ADAPTIVE_SIMPSON)
    v, _ = oracle.integrate_1d(lambda x: np.exp(-x) * np.cos(3 * x), 0.0, 4.0, spec)
    exact = (1 + math.exp(-4) * (3 * math.sin(12) - math.cos(12))) / 10
    assert v == pytest.approx(exact, abs=1e-11)


def test_quadrature_failure_carries_estimate():
    spec = oracle.QuadratureSpec(abs_tol=1e-15, rel_tol=1e-15, max_depth=2)
    with pytest.raises(oracle.QuadratureError) as info:
        oracle.integrate_1d(lambda x: np.abs(x - 0.3141) ** 0.1, 0.0, 1.0, spec)
    assert np.isfinite(info.value.value) and info.value.err_est > 0


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        oracle.QuadratureSpec(abs_tol=0.0)
    with pytest.raises(ValueError):
        oracle.QuadratureSpec(max_depth=0)


def test_pdf_integral_examples():
    assert oracle.pdf_integral(K.GUE_GINIBRE, 2.0, 0.5) == pytest.approx(
        transition.pdf_gue_ginibre(2.0, 0.5), rel=1e-8
    )
    assert oracle.pdf_integral(K.GINIBRE_GSE, 2.0, 1 - 1e-6) == pytest.approx(GSE_AT_2, abs=1e-5)
    assert oracle.pdf_integral(K.GOE_GINIBRE, 1e-4, 0.5) == pytest.approx(1.25e-13, rel=1e-3)


def test_pdf_integral_order_invariance():
    s = np.linspace(0.2, 7.0, 12)
    a = oracle.pdf_integral(K.GOE_GINIBRE, s, 0.3, order="psi-theta")
    b = oracle.pdf_integral(K.GOE_GINIBRE, s, 0.3, order="theta-psi")
    assert np.allclose(a, b, rtol=1e-9)


def test_pdf_general_examples():
    s = np.array([0.5, 2.0, 4.0])
    assert np.allclose(
        oracle.pdf_general(s, AlphaVec(1, 0.5, 0)), oracle.pdf_integral(K.GUE_GINIBRE, s, 0.5), rtol=1e-8
    )
    assert oracle.pdf_general(2.0, AlphaVec(1, 1, 1)) == pytest.approx(GSE_AT_2, abs=1e-6)
    assert oracle.pdf_general(2.0, AlphaVec(0, 0, 0)) == pytest.approx(0.3032653, abs=5e-8)


@pytest.mark.parametrize("avec, beta", [((0, 0, 0), 1), ((1, 0, 0), 2), ((1, 1, 0), 3), ((1, 1, 1), 4)])
def test_pdf_general_endpoints_match_surmises(avec, beta):
    av = AlphaVec(*avec)
    m = oracle.mean_numeric(av)
    r = np.linspace(0, 5, 101)
    dens = m * np.asarray(oracle.pdf_general(m * r, av))
    assert np.max(np.abs(dens - surmise_pdf(beta, r))) <= 1e-6


@pytest.mark.parametrize("avec", [(0.3, 0.7, 0.2), (1, 0.4, 0.9), (0.5, 0, 0.5)])
def test_pdf_general_normalised(avec):
    v, _ = oracle.integrate_1d(lambda s: oracle.pdf_general(s, AlphaVec(*avec)), 0.0, 12.0)
    assert v == pytest.approx(1.0, abs=1e-6)


def test_mean_numeric_examples():
    assert oracle.mean_numeric(K.GUE_GINIBRE, 0.5) == pytest.approx(transition.mean_gue_ginibre(0.5), abs=1e-8)
    assert oracle.mean_numeric(K.GOE_GINIBRE, 0.5) == pytest.approx(2.9243997, abs=1e-7)
    assert oracle.mean_numeric(K.GOE_GINIBRE, 0.5) == pytest.approx(
        math.sqrt(2 * math.pi) * 1.75 / 1.5, abs=1e-8
    )
    assert oracle.mean_numeric(AlphaVec(1, 1, 1)) == pytest.approx(4.2553842, abs=1e-6)


def test_z_integral_examples():
    assert oracle.z_integral(0.0) == 0.0
    assert oracle.z_integral(1e-3) == pytest.approx(math.sqrt(math.pi) * 1e-3, rel=1e-4)
    assert oracle.z_integral(1e3) == pytest.approx(math.sqrt(math.pi) / 1e3, rel=1e-3)
    xi = np.linspace(0, 10, 50)
    assert np.all(oracle.z_integral(xi) >= 0)
