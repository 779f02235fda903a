r"""Adaptive quadrature and the raw angular integrals.

Everything in this module works from the defining shell integrals of the
Gaussian point process, never from the closed forms in
:mod:`transpacing.transition`.  That independence is what makes it usable
as a certification oracle.

The engine is a locally adaptive Gauss-Kronrod (7/15) or Simpson/Boole
scheme that is vectorised over *many integrands at once*.  A batch of
integrals shares one work list of panels; every refinement round evaluates
the integrand on all active panels with a single call ``f(x, idx)`` where
``idx`` says which integral each abscissa belongs to.  Nested integrals
(the two and three dimensional angular integrals) are built by letting the
outer integrand launch an inner batch.

Panel acceptance is the classic local rule

.. math::
    \varepsilon_{\rm panel} \le \max(\text{abs\_tol}, \text{rel\_tol}\,|I|)
    \frac{h_{\rm panel}}{b - a},

so the summed error estimate never exceeds the requested tolerance.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np
from scipy import special as _sp

from .params import AlphaVec, DomainError, TransitionKind, check_alpha

__all__ = [
    "PanelRule",
    "QuadratureSpec",
    "QuadratureError",
    "DEFAULT_SPEC",
    "integrate_batch",
    "integrate_1d",
    "integrate_halfline",
    "integrate_halfline_batch",
    "pdf_integral",
    "pdf_general",
    "mean_numeric",
    "z_integral",
]

_EPS = np.finfo(float).eps


class PanelRule(enum.Enum):
    GAUSS_KRONROD = "gauss-kronrod"
    ADAPTIVE_SIMPSON = "adaptive-simpson"


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_depth: int = 40
    panel_rule: PanelRule = PanelRule.GAUSS_KRONROD

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_depth < 1:
            raise DomainError("max_depth must be at least 1")


DEFAULT_SPEC = QuadratureSpec()

# Angular shell integrals feed densities that can be tiny (s -> 0) or carry
# a small Gaussian factor (large s); a purely relative target keeps the
# relative accuracy of the final density uniform.
_SHELL_SPEC = QuadratureSpec(abs_tol=1e-300, rel_tol=1e-11)


class QuadratureError(ArithmeticError):
    """Adaptive refinement hit ``max_depth`` before meeting the tolerance."""

    def __init__(self, message, value=None, err_est=None):
        super().__init__(message)
        self.value = value
        self.err_est = err_est


# Gauss-Kronrod 7/15 nodes on [-1, 1] (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_GK_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_GK_WK = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GK_WG = np.zeros(15)
# Gauss nodes are the odd-indexed Kronrod nodes.
_GK_WG[[1, 3, 5]] = _WG[:3]
_GK_WG[7] = _WG[3]
_GK_WG[[9, 11, 13]] = _WG[:3][::-1]

# Simpson on the whole panel vs. composite Simpson on its halves; Boole's
# rule is the Richardson-extrapolated value.
_SIMP_NODES = np.array([-1.0, -0.5, 0.0, 0.5, 1.0])
_SIMP_LO = np.array([1.0, 0.0, 4.0, 0.0, 1.0]) / 3.0
_SIMP_HI = np.array([1.0, 4.0, 2.0, 4.0, 1.0]) / 6.0
_SIMP_BOOLE = _SIMP_HI + (_SIMP_HI - _SIMP_LO) / 15.0


def _apply_rule(fx, half, rule):
    """Panel value, error estimate and absolute mass for a block of panels."""
    if rule is PanelRule.GAUSS_KRONROD:
        k = fx @ _GK_WK
        g = fx @ _GK_WG
        mean = k / 2.0
        resabs = np.abs(fx) @ _GK_WK
        resasc = np.abs(fx - mean[:, None]) @ _GK_WK
        err = np.abs(k - g)
        with np.errstate(divide="ignore", invalid="ignore"):
            scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
        err = np.where((resasc != 0) & (err != 0), scaled, err)
        err = np.maximum(err, 50.0 * _EPS * resabs)
        return k * half, err * half, resabs * half
    hi = fx @ _SIMP_HI
    lo = fx @ _SIMP_LO
    val = fx @ _SIMP_BOOLE
    err = np.abs(hi - lo) / 15.0
    resabs = np.abs(fx) @ _SIMP_HI
    err = np.maximum(err, 50.0 * _EPS * resabs)
    return val * half, err * half, resabs * half


def integrate_batch(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    a,
    b,
    n: int,
    spec: QuadratureSpec = DEFAULT_SPEC,
    *,
    initial_panels: int = 4,
    strict: bool = True,
):
    """Integrate ``n`` functions at once.

    Parameters
    ----------
    f : callable
        ``f(x, idx)`` returns the integrand of integral ``idx[k]`` at
        ``x[k]``.  Both arguments are flat arrays of equal length.
    a, b : float or array of shape (n,)
        Finite limits with ``a < b``.
    n : int
        Number of integrals.
    spec : QuadratureSpec
    initial_panels : int
        Uniform panels per integral before adaptation starts.
    strict : bool
        Raise :class:`QuadratureError` if any integral fails to converge.

    Returns
    -------
    value, err_est : ndarray of shape (n,)
    """
    a = np.broadcast_to(np.asarray(a, dtype=float), (n,)).copy()
    b = np.broadcast_to(np.asarray(b, dtype=float), (n,)).copy()
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise DomainError("integration limits must be finite")
    if np.any(b <= a):
        raise DomainError("integration limits must satisfy a < b")
    rule = spec.panel_rule
    nodes = _GK_NODES if rule is PanelRule.GAUSS_KRONROD else _SIMP_NODES

    m = max(1, int(initial_panels))
    frac = np.arange(m + 1) / m
    edges = a[:, None] + (b - a)[:, None] * frac[None, :]
    lo = edges[:, :-1].ravel()
    hi = edges[:, 1:].ravel()
    idx = np.repeat(np.arange(n), m)
    depth = np.zeros(lo.size, dtype=int)

    done_val = np.zeros(n)
    done_err = np.zeros(n)
    failed = np.zeros(n, dtype=bool)
    width = b - a

    while lo.size:
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        x = mid[:, None] + half[:, None] * nodes[None, :]
        fx = np.asarray(f(x.ravel(), np.repeat(idx, nodes.size)), dtype=float)
        fx = fx.reshape(x.shape)
        if not np.all(np.isfinite(fx)):
            raise QuadratureError("integrand returned a non-finite value")
        val, err, resabs = _apply_rule(fx, half, rule)

        total = done_val + np.bincount(idx, weights=val, minlength=n)
        tol = np.maximum(spec.abs_tol, spec.rel_tol * np.abs(total))
        share = tol[idx] * (2.0 * half) / width[idx]
        ok = (err <= share) | (err <= 100.0 * _EPS * resabs)
        give_up = ~ok & (depth >= spec.max_depth)
        if np.any(give_up):
            failed[np.unique(idx[give_up])] = True
        accept = ok | give_up

        done_val += np.bincount(idx[accept], weights=val[accept], minlength=n)
        done_err += np.bincount(idx[accept], weights=err[accept], minlength=n)

        keep = ~accept
        lo, hi, idx, depth, mid = lo[keep], hi[keep], idx[keep], depth[keep], mid[keep]
        lo = np.concatenate([lo, mid])
        hi = np.concatenate([mid, hi])
        idx = np.concatenate([idx, idx])
        depth = np.concatenate([depth + 1, depth + 1])

    if strict and np.any(failed):
        bad = np.flatnonzero(failed)
        raise QuadratureError(
            f"adaptive quadrature did not converge for {bad.size} of {n} integrals "
            f"within max_depth={spec.max_depth}",
            value=done_val,
            err_est=done_err,
        )
    return done_val, done_err


def integrate_1d(f, a: float, b: float, spec: QuadratureSpec = DEFAULT_SPEC):
    """Adaptive quadrature of a vectorised scalar function on ``[a, b]``.

    Returns ``(value, err_est)``.

    >>> v, e = integrate_1d(lambda x: np.sin(x)**2, 0.0, np.pi)
    >>> round(v, 12)
    1.570796326795
    """
    val, err = integrate_batch(lambda x, _: f(x), a, b, 1, spec)
    return float(val[0]), float(err[0])


def integrate_halfline_batch(f_batch, n, spec=DEFAULT_SPEC, scale=1.0):
    """Integrate ``f_batch(s, idx)`` over s in [0, inf) via s = L t / (1 - t)."""
    scale = np.broadcast_to(np.asarray(scale, dtype=float), (n,))

    def g(t, idx):
        out = np.zeros_like(t)
        inner = t < 1.0
        ti = t[inner]
        L = scale[idx[inner]]
        s = L * ti / (1.0 - ti)
        out[inner] = f_batch(s, idx[inner]) * L / (1.0 - ti) ** 2
        return out

    return integrate_batch(g, 0.0, 1.0, n, spec, initial_panels=8)


def integrate_halfline(f, spec: QuadratureSpec = DEFAULT_SPEC, scale: float = 1.0):
    """``int_0^inf f(s) ds`` using the map ``s = scale * t / (1 - t)``."""
    val, err = integrate_halfline_batch(lambda s, _: f(s), 1, spec, scale)
    return float(val[0]), float(err[0])


# ---------------------------------------------------------------------------
# raw shell integrals of the three one-parameter families

_PI = math.pi
_HALF_PI = 0.5 * math.pi


def _broadcast_pair(s, alpha):
    s = np.asarray(s, dtype=float)
    alpha = np.asarray(alpha, dtype=float)
    if np.any(~np.isfinite(s)) or np.any(s < 0):
        raise DomainError("spacing must be finite and non-negative")
    if np.any(~np.isfinite(alpha)) or np.any(alpha <= 0) or np.any(alpha >= 1):
        raise DomainError("the raw integrals need 0 < alpha < 1")
    return np.broadcast_arrays(s, alpha)


# Every angular integrand depends on the angles only through sin^2, cos^2
# and positive powers of sin, so it is symmetric about pi/2 and each
# [0, pi] integral is twice the [0, pi/2] one.


def _angular_1d(s, alpha, power, spec):
    """``int_0^pi exp(-s^2/8 (sin^2 + cos^2/alpha^2)) sin^power dpsi``."""
    flat_s, flat_a = s.ravel(), alpha.ravel()
    q = flat_s**2 / 8.0
    inv_a2 = 1.0 / flat_a**2

    def f(psi, idx):
        sn, cs = np.sin(psi), np.cos(psi)
        return np.exp(-q[idx] * (sn * sn + cs * cs * inv_a2[idx])) * sn**power

    val, _ = integrate_batch(f, 0.0, _HALF_PI, flat_s.size, spec, initial_panels=4)
    return 2.0 * val.reshape(s.shape)


def _angular_goe_ginibre(s, alpha, spec, order="psi-theta"):
    """Two-angle integral of the 4-d shell with strengths (alpha, alpha, 0)."""
    flat_s, flat_a = s.ravel(), alpha.ravel()
    q = flat_s**2 / 8.0
    inv_a2 = 1.0 / flat_a**2

    def exponent(i, sp, cp, st, ct):
        return -q[i] * (sp * sp * st * st + (sp * sp * ct * ct + cp * cp) * inv_a2[i])

    if order == "psi-theta":
        def outer(psi, idx):
            sp, cp = np.sin(psi), np.cos(psi)

            def inner(theta, j):
                st, ct = np.sin(theta), np.cos(theta)
                return np.exp(exponent(idx[j], sp[j], cp[j], st, ct)) * st

            v, _ = integrate_batch(inner, 0.0, _HALF_PI, psi.size, spec, initial_panels=2)
            return 2.0 * v * sp * sp
    elif order == "theta-psi":
        def outer(theta, idx):
            st, ct = np.sin(theta), np.cos(theta)

            def inner(psi, j):
                sp, cp = np.sin(psi), np.cos(psi)
                return np.exp(exponent(idx[j], sp, cp, st[j], ct[j])) * sp * sp

            v, _ = integrate_batch(inner, 0.0, _HALF_PI, theta.size, spec, initial_panels=2)
            return 2.0 * v * st
    else:
        raise DomainError(f"unknown integration order {order!r}")

    val, _ = integrate_batch(outer, 0.0, _HALF_PI, flat_s.size, spec, initial_panels=2)
    return 2.0 * val.reshape(s.shape)


def pdf_integral(
    kind: TransitionKind,
    s,
    alpha,
    spec: QuadratureSpec | None = None,
    *,
    order: str = "psi-theta",
):
    """Raw-scale density of a transition by direct angular quadrature.

    Broadcasts over ``s`` and ``alpha``.  Valid for ``0 < alpha < 1``; the
    endpoints make the prefactors singular.

    ``order`` selects the nesting of the GOE-Ginibre double integral.
    """
    spec = _SHELL_SPEC if spec is None else spec
    s, alpha = _broadcast_pair(s, alpha)
    if kind is TransitionKind.GUE_GINIBRE:
        ang = _angular_1d(s, alpha, 2, spec)
        out = s**3 / (16.0 * _PI * alpha) * ang
    elif kind is TransitionKind.GINIBRE_GSE:
        ang = _angular_1d(s, alpha, 3, spec)
        out = s**4 / (64.0 * math.sqrt(2.0 * _PI) * alpha) * ang
    elif kind is TransitionKind.GOE_GINIBRE:
        ang = _angular_goe_ginibre(s, alpha, spec, order)
        out = s**3 / (32.0 * _PI * alpha**2) * ang
    else:
        raise DomainError(f"unknown transition {kind!r}")
    return out.item() if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# arbitrary strengths


def _shell_level(r2, pref, acc, sigmas_inv2, level, spec):
    """Integrate the remaining hyperspherical angles for a batch of items.

    ``pref`` is the running product of sin^2 of the angles already fixed,
    ``acc`` the accumulated exponent weight.  The last level closes the
    exponent with the (g, c) plane, whose weight is ``pref`` itself.
    """
    depth = sigmas_inv2.size
    if level == depth:
        return np.exp(-0.5 * r2 * (acc + pref))
    power = depth - level  # sin^(N-2-level) with N = depth + 2
    w = sigmas_inv2[level]

    def f(theta, idx):
        st, ct = np.sin(theta), np.cos(theta)
        st2 = st * st
        new_pref = pref[idx] * st2
        new_acc = acc[idx] + pref[idx] * ct * ct * w
        inner = _shell_level(r2[idx], new_pref, new_acc, sigmas_inv2, level + 1, spec)
        return inner * st**power

    val, _ = integrate_batch(f, 0.0, _HALF_PI, r2.size, spec, initial_panels=2)
    return 2.0 * val


def pdf_general(s, alpha: AlphaVec, spec: QuadratureSpec | None = None):
    """Raw-scale spacing density for arbitrary strengths ``(a1, a2, a3)``.

    Zero strengths drop their coordinate, so the Gaussian shell lives in
    ``N = 2 + (number of nonzero strengths)`` dimensions.  The azimuth of
    the unit-variance (g, c) plane contributes ``2 pi`` in closed form and
    the remaining ``N - 2`` polar angles are integrated numerically.
    """
    spec = _SHELL_SPEC if spec is None else spec
    s = np.asarray(s, dtype=float)
    if np.any(~np.isfinite(s)) or np.any(s < 0):
        raise DomainError("spacing must be finite and non-negative")
    sig = np.array(alpha.nonzero(), dtype=float)
    dim = 2 + sig.size
    flat = s.ravel()
    r = flat / 2.0
    r2 = r * r
    ones = np.ones_like(flat)
    ang = _shell_level(r2, ones, np.zeros_like(flat), 1.0 / sig**2, 0, spec)
    norm = 2.0 * _PI / ((2.0 * _PI) ** (dim / 2.0) * np.prod(sig))
    # density of |x| at r, then the Jacobian of s = 2 r
    out = (0.5 * norm * r ** (dim - 1) * ang).reshape(s.shape)
    return out.item() if out.ndim == 0 else out


def mean_numeric(target, alpha=None, spec: QuadratureSpec | None = None):
    """``int_0^inf s F(s) ds`` from the raw angular integrals.

    ``target`` is either a :class:`TransitionKind` (then ``alpha`` is the
    scalar or array of strengths, each in (0, 1)) or an :class:`AlphaVec`.
    """
    spec = DEFAULT_SPEC if spec is None else spec
    inner_spec = replace(_SHELL_SPEC, rel_tol=min(_SHELL_SPEC.rel_tol, spec.rel_tol * 0.1))
    if isinstance(target, AlphaVec):
        val, _ = integrate_halfline_batch(lambda s, _: s * pdf_general(s, target, inner_spec), 1, spec, 4.0)
        return float(val[0])
    if not isinstance(target, TransitionKind):
        raise DomainError("target must be a TransitionKind or AlphaVec")
    alphas = np.atleast_1d(np.asarray(alpha, dtype=float))
    for a in alphas:
        check_alpha(a)

    def f(s, idx):
        return s * pdf_integral(target, s, alphas[idx], inner_spec)

    val, _ = integrate_halfline_batch(f, alphas.size, spec, 4.0)
    return float(val[0]) if np.ndim(alpha) == 0 else val


def z_integral(xi, spec: QuadratureSpec | None = None):
    r"""``Z(xi) = int_0^pi exp(-xi^2 cos^2 psi) erf(xi sin psi) sin psi dpsi``.

    Vectorised over ``xi >= 0``.
    """
    spec = _SHELL_SPEC if spec is None else spec
    xi = np.asarray(xi, dtype=float)
    if np.any(~np.isfinite(xi)) or np.any(xi < 0):
        raise DomainError("xi must be finite and non-negative")
    flat = xi.ravel()
    out = np.zeros_like(flat)
    live = flat > 0
    x = flat[live]
    if x.size:
        x2 = x * x

        def f(psi, idx):
            sn, cs = np.sin(psi), np.cos(psi)
            return np.exp(-x2[idx] * cs * cs) * _sp.erf(x[idx] * sn) * sn

        out[live], _ = integrate_batch(f, 0.0, _PI, x.size, spec, initial_panels=8)
    out = out.reshape(xi.shape)
    return out.item() if out.ndim == 0 else out
