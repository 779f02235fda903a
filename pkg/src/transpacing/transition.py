r"""Closed-form transitional spacing densities and their exact means.

Three one-parameter families interpolate between surmise endpoints:

=================  ==================  =========  =========
family             strengths           alpha = 0  alpha = 1
=================  ==================  =========  =========
GUE -> Ginibre     (1, alpha, 0)       beta = 2   beta = 3
Ginibre -> GSE     (1, 1, alpha)       beta = 3   beta = 4
GOE -> Ginibre     (alpha, alpha, 0)   beta = 1   beta = 3
=================  ==================  =========  =========

Densities are in raw spacing units ``s``; :func:`pdf_normalized` maps them
onto the unit-mean variable ``r = s / <s>``.  Every formula is written so
that it stays finite on the closed interval ``0 <= alpha <= 1``: Bessel
products use exponentially scaled kernels, and the removable 0/0 points are
handled with short Taylor series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import chebfit, oracle
from .params import (
    DomainError,
    Scale,
    TransitionKind,
    ZMode,
    check_alpha,
    check_spacing,
)
from .specfun import (
    bessel_i0_scaled,
    bessel_i1_scaled,
    elliptic_e,
    elliptic_k_complement,
    erf,
)
from .surmise import surmise_pdf

SQRT_2PI = math.sqrt(2.0 * math.pi)
SQRT_PI = math.sqrt(math.pi)

# Below these the closed forms lose digits to cancellation.
B_SERIES_MU = 1e-2
GSE_MEAN_SERIES_ALPHA = 0.99
GUE_MEAN_SERIES_ETA = 1e-3
# Below this strength the alpha = 0 limit is exact to O(alpha^2) ~ 1e-200,
# while the closed forms start to overflow in 1/alpha.
ALPHA_TINY = 1e-100

GINIBRE_MEAN = 1.5 * SQRT_2PI
GUE_MEAN = 4.0 * math.sqrt(2.0) / SQRT_PI
GSE_MEAN = 32.0 / (3.0 * SQRT_2PI)
GOE_MEAN = SQRT_2PI


def _ret(v):
    return v.item() if np.ndim(v) == 0 else v


def _ginibre_raw(s):
    return s**3 * np.exp(-s * s / 8.0) / 32.0


# ---------------------------------------------------------------------------
# GUE -> Ginibre


def pdf_gue_ginibre(s, alpha: float):
    """Raw density of the GUE -> Ginibre transition.

    ``F = s^3/(32 alpha) exp(-s^2/8) [i0(x) + i1(x)]`` with
    ``x = s^2 (1 - alpha^2) / (16 alpha^2)`` and ``i_n`` the exponentially
    scaled Bessel functions.
    """
    s = check_spacing(s)
    alpha = check_alpha(alpha)
    if alpha < ALPHA_TINY:
        return _ret(s * s * np.exp(-s * s / 8.0) / (4.0 * SQRT_2PI))
    x = s * s * (1.0 - alpha * alpha) / (16.0 * alpha * alpha)
    bracket = bessel_i0_scaled(x) + bessel_i1_scaled(x)
    return _ret(s**3 / (32.0 * alpha) * np.exp(-s * s / 8.0) * bracket)


def _gue_mean_series(alpha):
    # <s> = 3 sqrt(8) alpha^4 / sqrt(pi) * int_0^{pi/2} sin^2 / (1 - eta sin^2)^{5/2}
    eta = 1.0 - alpha * alpha
    total, rising, half_rising, fact = 0.0, 1.0, 0.5, 1.0
    for k in range(12):
        # rising = (5/2)_k / k!,  half_rising / fact = (1/2)_{k+1} / (k+1)!
        total += rising * half_rising / fact * eta**k
        rising *= (2.5 + k) / (k + 1)
        half_rising *= 0.5 + k + 1
        fact *= k + 2
    return 3.0 * math.sqrt(8.0) * alpha**4 / SQRT_PI * (math.pi / 2.0) * total


def mean_gue_ginibre(alpha: float) -> float:
    """Exact mean spacing of the GUE -> Ginibre family.

    ``<s> = 2 sqrt(2/pi) [(2 - a^2) E(1 - a^2) - a^2 K(1 - a^2)] / (1 - a^2)``.
    """
    alpha = check_alpha(alpha)
    if alpha < ALPHA_TINY:
        return GUE_MEAN
    if alpha == 1.0:
        return GINIBRE_MEAN
    eta = 1.0 - alpha * alpha
    if eta < GUE_MEAN_SERIES_ETA:
        return _gue_mean_series(alpha)
    a2 = alpha * alpha
    num = (2.0 - a2) * elliptic_e(eta) - a2 * elliptic_k_complement(a2)
    return 2.0 * math.sqrt(2.0) / SQRT_PI * num / eta


# ---------------------------------------------------------------------------
# Ginibre -> GSE


def _bracket_b(mu):
    r"""``B(mu) = e^{-mu}/mu + sqrt(pi) (2 mu - 1) erf(sqrt(mu)) / (2 mu^{3/2})``.

    Equal to ``2 int_0^1 exp(-mu x^2) (1 - x^2) dx``; below ``B_SERIES_MU``
    that integral's Taylor series replaces the cancelling closed form.
    """
    mu = np.asarray(mu, dtype=float)
    out = np.empty_like(mu)
    small = mu < B_SERIES_MU
    m = mu[small]
    term = np.full_like(m, 4.0 / 3.0)
    acc = term.copy()
    fact = 1.0
    for k in range(1, 9):
        fact *= k
        acc += 4.0 * (-m) ** k / (fact * (2 * k + 1) * (2 * k + 3))
    out[small] = acc
    m = mu[~small]
    out[~small] = np.exp(-m) / m + SQRT_PI * (2.0 * m - 1.0) * erf(np.sqrt(m)) / (2.0 * m**1.5)
    return out


def pdf_ginibre_gse(s, alpha: float):
    """Raw density of the Ginibre -> GSE transition.

    ``F = s^4 exp(-s^2/8) B(mu) / (64 sqrt(2 pi) alpha)`` with
    ``mu = s^2 (1 - alpha^2) / (8 alpha^2)``.  At ``alpha = 0`` the family
    starts from the Ginibre shape ``s^3 exp(-s^2/8) / 32``.
    """
    s = check_spacing(s)
    alpha = check_alpha(alpha)
    if alpha < ALPHA_TINY:
        return _ret(_ginibre_raw(s))
    mu = s * s * (1.0 - alpha * alpha) / (8.0 * alpha * alpha)
    pref = s**4 * np.exp(-s * s / 8.0) / (64.0 * SQRT_2PI * alpha)
    return _ret(pref * _bracket_b(mu))


def _gse_mean_series(alpha):
    # <s> = 16/(sqrt(2 pi) alpha) int_0^1 (1 - x^2) / (1 + kappa x^2)^3 dx
    kappa = 1.0 / (alpha * alpha) - 1.0
    total = 0.0
    for k in range(16):
        total += (k + 1) * (k + 2) * (-kappa) ** k / ((2 * k + 1) * (2 * k + 3))
    return 16.0 / (SQRT_2PI * alpha) * total


def mean_ginibre_gse(alpha: float) -> float:
    """Exact mean spacing of the Ginibre -> GSE family."""
    alpha = check_alpha(alpha)
    if alpha == 1.0:
        return GSE_MEAN
    if alpha > GSE_MEAN_SERIES_ALPHA:
        return _gse_mean_series(alpha)
    c = 1.0 - alpha * alpha
    return math.sqrt(2.0 / math.pi) * (
        alpha * (3.0 - 2.0 * alpha * alpha) / c
        + (3.0 - 4.0 * alpha * alpha) * math.acos(alpha) / c**1.5
    )


# ---------------------------------------------------------------------------
# GOE -> Ginibre


def lumped_xi(s, alpha: float):
    """``xi = s sqrt(1 - alpha^2) / (2 sqrt(2) alpha)``, the argument of Z."""
    return s * math.sqrt(1.0 - alpha * alpha) / (2.0 * math.sqrt(2.0) * alpha)


def z_closed(xi):
    """Closed form ``Z(xi) = sqrt(pi) (1 - exp(-xi^2)) / xi``.

    Swapping the order of the angular and error-function integrals turns
    the double integral into a quarter disc of radius ``xi`` in polar
    coordinates.
    """
    xi = np.asarray(xi, dtype=float)
    if np.any(xi < 0) or np.any(~np.isfinite(xi)):
        raise DomainError("xi must be finite and non-negative")
    out = np.zeros_like(xi)
    pos = xi > 0
    out[pos] = SQRT_PI * -np.expm1(-xi[pos] ** 2) / xi[pos]
    return _ret(out)


def _z_ratio(xi, z_mode, coeffs):
    """``Z(xi) / (sqrt(pi) xi)``, which tends to one as ``xi -> 0``."""
    xi = np.asarray(xi, dtype=float)
    out = np.ones_like(xi)
    pos = xi > 0
    x = xi[pos]
    if z_mode is ZMode.CLOSED_FORM:
        out[pos] = -np.expm1(-x * x) / (x * x)
    elif z_mode is ZMode.EXACT_QUADRATURE:
        out[pos] = np.asarray(oracle.z_integral(x)) / (SQRT_PI * x)
    elif z_mode is ZMode.CHEB_APPROX:
        coeffs = chebfit.PUBLISHED_COEFFS if coeffs is None else coeffs
        y = chebfit.xi_to_y(x)
        out[pos] = np.asarray(chebfit.z_cheb(y, coeffs)) / (SQRT_PI * x)
    else:
        raise DomainError(f"unknown z_mode {z_mode!r}")
    return out


def pdf_goe_ginibre(
    s,
    alpha: float,
    z_mode: ZMode = ZMode.EXACT_QUADRATURE,
    coeffs: "chebfit.ChebCoeffs | None" = None,
):
    """Raw density of the GOE -> Ginibre transition.

    ``F = s^3/(32 pi alpha^2) * 2 sqrt(2 pi) alpha / (s sqrt(1 - alpha^2))
    * exp(-s^2/8) Z(xi)``, evaluated as ``s^3 exp(-s^2/8)/(32 alpha^2) *
    Z(xi)/(sqrt(pi) xi)`` so that ``xi -> 0`` is harmless.

    ``z_mode`` chooses how ``Z`` is obtained: adaptive quadrature of its
    defining integral, the six-term Chebyshev fit (``coeffs``, default the
    published set), or the closed form :func:`z_closed`.
    """
    s = check_spacing(s)
    alpha = check_alpha(alpha)
    z_mode = ZMode(z_mode)
    if alpha == 1.0:
        return _ret(_ginibre_raw(s))
    if alpha < ALPHA_TINY:
        return _ret(s / 4.0 * np.exp(-s * s / 8.0))
    xi = lumped_xi(s, alpha)
    pref = s**3 * np.exp(-s * s / 8.0) / (32.0 * alpha * alpha)
    return _ret(pref * _z_ratio(xi, z_mode, coeffs))


def mean_goe_ginibre(alpha: float) -> float:
    """``<s> = sqrt(2 pi) (1 + alpha + alpha^2) / (1 + alpha)``."""
    alpha = check_alpha(alpha)
    return SQRT_2PI * (1.0 + alpha + alpha * alpha) / (1.0 + alpha)


# ---------------------------------------------------------------------------
# dispatch and unit-mean scaling

_PDF = {
    TransitionKind.GUE_GINIBRE: pdf_gue_ginibre,
    TransitionKind.GINIBRE_GSE: pdf_ginibre_gse,
    TransitionKind.GOE_GINIBRE: pdf_goe_ginibre,
}
_MEAN = {
    TransitionKind.GUE_GINIBRE: mean_gue_ginibre,
    TransitionKind.GINIBRE_GSE: mean_ginibre_gse,
    TransitionKind.GOE_GINIBRE: mean_goe_ginibre,
}


def pdf(kind: TransitionKind, s, alpha: float, z_mode: ZMode = ZMode.EXACT_QUADRATURE, coeffs=None):
    """Raw density of any family."""
    kind = TransitionKind(kind)
    if kind is TransitionKind.GOE_GINIBRE:
        return pdf_goe_ginibre(s, alpha, z_mode, coeffs)
    return _PDF[kind](s, alpha)


def mean(kind: TransitionKind, alpha: float) -> float:
    return _MEAN[TransitionKind(kind)](alpha)


def pdf_normalized(
    kind: TransitionKind,
    r,
    alpha: float,
    z_mode: ZMode = ZMode.EXACT_QUADRATURE,
    coeffs=None,
):
    """Density of ``r = s / <s>``, i.e. ``<s> F(<s> r, alpha)``."""
    r = check_spacing(r)
    m = mean(kind, alpha)
    return _ret(m * np.asarray(pdf(kind, m * r, alpha, z_mode, coeffs)))


def cdf_goe_ginibre(s, alpha: float):
    """Closed-form CDF of the GOE -> Ginibre family (raw scale).

    The squared half-spacing is a sum of two exponential variables with
    means 2 and ``2 alpha^2``; this is their hypoexponential CDF.
    """
    s = check_spacing(s)
    alpha = check_alpha(alpha)
    u = s * s / 8.0
    if alpha == 1.0:
        out = -np.expm1(-u) - u * np.exp(-u)
    elif alpha == 0.0:
        out = -np.expm1(-u)
    else:
        a2 = alpha * alpha
        out = -np.expm1(-u) - a2 * (np.exp(-u) - np.exp(-u / a2)) / (1.0 - a2)
    return _ret(out)


# ---------------------------------------------------------------------------
# tables


@dataclass
class PdfTable:
    """Density sampled on a grid, with what is needed to regenerate it."""

    kind: str
    alpha: float | None
    scale: Scale
    x: np.ndarray
    density: np.ndarray
    mean_s: float
    z_mode: str | None = None
    renormalized: bool = False
    meta: dict = field(default_factory=dict)

    @property
    def rows(self):
        return list(zip(self.x.tolist(), self.density.tolist()))

    def trapezoid_moments(self) -> tuple[float, float]:
        norm = float(np.trapezoid(self.density, self.x))
        first = float(np.trapezoid(self.x * self.density, self.x))
        return norm, first

    def metadata(self) -> dict:
        out = {
            "kind": self.kind,
            "alpha": "" if self.alpha is None else repr(self.alpha),
            "scale": self.scale.value,
            "mean_s": repr(self.mean_s),
            "z_mode": self.z_mode or "",
            "renormalized": str(self.renormalized).lower(),
        }
        out.update(self.meta)
        return out


def parse_grid(grid) -> np.ndarray:
    """Grid points from ``(start, stop, step)`` or a ``"start:stop:step"`` string.

    The stop value is included when it lies on the lattice.
    """
    if isinstance(grid, str):
        parts = grid.split(":")
        if len(parts) != 3:
            raise DomainError(f"grid must be start:stop:step, got {grid!r}")
        grid = tuple(float(p) for p in parts)
    start, stop, step = (float(v) for v in grid)
    if not all(np.isfinite((start, stop, step))):
        raise DomainError("grid values must be finite")
    if step <= 0:
        raise DomainError("grid step must be positive")
    if start < 0 or stop <= start:
        raise DomainError("grid needs 0 <= start < stop")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(n)


def pdf_table(
    kind,
    alpha: float | None,
    grid,
    scale: Scale = Scale.UNIT_MEAN_R,
    z_mode: ZMode = ZMode.EXACT_QUADRATURE,
    coeffs=None,
    renormalize: bool = False,
) -> PdfTable:
    """Tabulate a transition (``TransitionKind``) or a surmise (``beta`` int).

    ``renormalize`` divides a Chebyshev-mode density by its numerically
    integrated norm; it is ignored for the exact modes.
    """
    x = parse_grid(grid)
    scale = Scale(scale)
    if isinstance(kind, (int, np.integer)) and not isinstance(kind, bool):
        dens = np.asarray(surmise_pdf(int(kind), x), dtype=float)
        return PdfTable(f"surmise-{int(kind)}", None, scale, x, dens, 1.0)

    kind = TransitionKind(kind)
    alpha = check_alpha(alpha)
    z_mode = ZMode(z_mode)
    m = mean(kind, alpha)
    is_goe = kind is TransitionKind.GOE_GINIBRE

    def raw(s):
        return np.asarray(pdf(kind, s, alpha, z_mode, coeffs), dtype=float)

    factor = 1.0
    renorm = bool(renormalize and is_goe and z_mode is ZMode.CHEB_APPROX)
    if renorm:
        norm, _ = oracle.integrate_halfline(raw, scale=4.0)
        factor = 1.0 / norm

    if scale is Scale.UNIT_MEAN_R:
        dens = m * raw(m * x) * factor
    else:
        dens = raw(x) * factor
    meta = {"norm_factor": repr(factor)} if renorm else {}
    return PdfTable(
        kind.value,
        alpha,
        scale,
        x,
        dens,
        m,
        z_mode.value if is_goe else None,
        renorm,
        meta,
    )
