import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from transpacing import specfun
from transpacing.params import DomainError

mp.mp.dps = 40


def rel(a, b):
    return abs(a - b) / abs(b)


@pytest.mark.parametrize("x, expected", [(0.0, 1.0), (1.0, 0.4657596)])
def test_i0_scaled_examples(x, expected):
    assert specfun.bessel_i0_scaled(x) == pytest.approx(expected, abs=5e-8)


def test_i0_scaled_large_argument():
    assert specfun.bessel_i0_scaled(1e4) == pytest.approx(1 / math.sqrt(2 * math.pi * 1e4), rel=1e-4)


@pytest.mark.parametrize("x, expected", [(0.0, 0.0), (1.0, 0.2079104)])
def test_i1_scaled_examples(x, expected):
    assert specfun.bessel_i1_scaled(x) == pytest.approx(expected, abs=5e-8)


@pytest.mark.parametrize("x", [1e-8, 0.01, 0.3, 1.0, 4.0, 17.0, 150.0, 2000.0])
def test_scaled_bessel_against_mpmath(x):
    for n, fn in ((0, specfun.bessel_i0_scaled), (1, specfun.bessel_i1_scaled)):
        ref = float(mp.besseli(n, x) * mp.exp(-x))
        assert rel(fn(x), ref) <= 1e-12


@given(st.floats(min_value=1e-6, max_value=1e5))
def test_i1_below_i0(x):
    assert specfun.bessel_i1_scaled(x) < specfun.bessel_i0_scaled(x)


def test_bessel_derivative_identity():
    # d/dx [e^-x (I0 + I1)] = e^-x (I1 + I0 - I1/x) - e^-x (I0 + I1) = -e^-x I1 / x
    h = 1e-5
    for x in (0.3, 1.0, 2.5, 8.0):
        g = lambda t: specfun.bessel_i0_scaled(t) + specfun.bessel_i1_scaled(t)
        fd = (g(x + h) - g(x - h)) / (2 * h)
        assert fd == pytest.approx(-specfun.bessel_i1_scaled(x) / x, abs=1e-6)


def test_bessel_rejects_bad_input():
    for bad in (-1.0, math.nan, math.inf):
        with pytest.raises(DomainError):
            specfun.bessel_i0_scaled(bad)
        with pytest.raises(DomainError):
            specfun.bessel_i1_scaled(bad)


def test_elliptic_examples():
    assert specfun.elliptic_k(0.0) == pytest.approx(math.pi / 2, abs=1e-15)
    assert specfun.elliptic_k(0.5) == pytest.approx(1.8540747, abs=5e-8)
    assert specfun.elliptic_e(0.0) == pytest.approx(math.pi / 2, abs=1e-15)
    assert specfun.elliptic_e(1.0) == 1.0
    assert specfun.elliptic_e(0.5) == pytest.approx(1.3506439, abs=5e-8)


@pytest.mark.parametrize("m", [0.0, 0.05, 0.25, 0.5, 0.75, 0.95, 0.999, 1 - 1e-9])
def test_elliptic_against_mpmath(m):
    assert rel(specfun.elliptic_k(m), float(mp.ellipk(m))) <= 1e-12
    assert rel(specfun.elliptic_e(m), float(mp.ellipe(m))) <= 1e-12


def test_elliptic_k_log_divergence():
    p = 1e-8
    k = specfun.elliptic_k(1 - p)
    assert k == pytest.approx(math.log(4 / math.sqrt(p)), rel=1e-7)
    assert specfun.elliptic_k_complement(p) == pytest.approx(float(mp.ellipk(1 - mp.mpf(p))), rel=1e-13)


def test_elliptic_domain():
    with pytest.raises(DomainError):
        specfun.elliptic_k(1.0)
    with pytest.raises(DomainError):
        specfun.elliptic_k(-0.1)
    with pytest.raises(DomainError):
        specfun.elliptic_e(1.1)


@given(st.floats(0.0, 0.99), st.floats(0.0, 0.99))
def test_elliptic_monotone(m1, m2):
    lo, hi = sorted((m1, m2))
    if hi - lo > 1e-9:
        assert specfun.elliptic_k(lo) < specfun.elliptic_k(hi)
        assert specfun.elliptic_e(lo) > specfun.elliptic_e(hi)


def test_legendre_relation():
    for m in np.round(np.arange(1, 10) * 0.1, 10):
        K, Kp = specfun.elliptic_k(m), specfun.elliptic_k(1 - m)
        E, Ep = specfun.elliptic_e(m), specfun.elliptic_e(1 - m)
        assert abs(E * Kp + Ep * K - K * Kp - math.pi / 2) <= 1e-12


@pytest.mark.parametrize("m", [0.2, 0.5, 0.8])
def test_elliptic_e_derivative(m):
    h = 1e-6
    fd = (specfun.elliptic_e(m + h) - specfun.elliptic_e(m - h)) / (2 * h)
    assert fd == pytest.approx((specfun.elliptic_e(m) - specfun.elliptic_k(m)) / (2 * m), abs=1e-6)


def test_erf_examples():
    assert specfun.erf(0.0) == 0.0
    assert specfun.erf(1.0) == pytest.approx(0.8427008, abs=5e-8)
    with pytest.raises(DomainError):
        specfun.erf(math.inf)


@pytest.mark.parametrize("x", [1e-10, 0.2, 1.0, 2.0, 3.3, 5.5])
def test_erf_against_mpmath(x):
    assert rel(specfun.erf(x), float(mp.erf(x))) <= 1e-12


def test_erf_odd_and_increasing():
    x = np.linspace(-6, 6, 1201)
    y = specfun.erf(x)
    assert np.array_equal(y, -specfun.erf(-x))
    assert np.all(np.diff(y) >= 0)
    assert np.all(np.abs(y) < 1) or np.max(np.abs(y)) == 1.0


def test_chebyshev_examples_and_recurrence():
    assert specfun.chebyshev_t(0, 0.7) == 1.0
    assert specfun.chebyshev_t(2, 0.5) == -0.5
    y = np.linspace(-1, 1, 101)
    for n in range(1, 12):
        lhs = specfun.chebyshev_t(n + 1, y)
        rhs = 2 * y * specfun.chebyshev_t(n, y) - specfun.chebyshev_t(n - 1, y)
        assert np.max(np.abs(lhs - rhs)) <= 1e-12


def test_chebyshev_outside_interval_and_limits():
    # T_n(y) = cosh(n arccosh y) for y > 1
    assert specfun.chebyshev_t(4, 1.5) == pytest.approx(math.cosh(4 * math.acosh(1.5)), rel=1e-14)
    with pytest.raises(DomainError):
        specfun.chebyshev_t(65, 0.1)
    with pytest.raises(DomainError):
        specfun.chebyshev_t(-1, 0.1)


def test_gamma_examples():
    assert specfun.gamma_fn(1.0) == 1.0
    assert specfun.gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert specfun.gamma_fn(2.5) == pytest.approx(1.3293404, abs=5e-8)
    with pytest.raises(DomainError):
        specfun.gamma_fn(0.0)


@settings(max_examples=50)
@given(st.floats(0.05, 50.0))
def test_gamma_recurrence(x):
    assert specfun.gamma_fn(x + 1) == pytest.approx(x * specfun.gamma_fn(x), rel=1e-13)
