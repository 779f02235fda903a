r"""Special-function kernels used by the closed-form densities.

All functions accept scalars or arrays and return the same shape.  The
elliptic integrals use the parameter convention of Abramowitz & Stegun,

.. math::
    K(m) = \int_0^{\pi/2} \frac{d\theta}{\sqrt{1 - m \sin^2\theta}}, \qquad
    E(m) = \int_0^{\pi/2} \sqrt{1 - m \sin^2\theta}\, d\theta .

The Bessel kernels are exponentially scaled, ``exp(-x) I_n(x)``, so that
products like ``exp(-a x) I_n(x)`` never overflow for large ``x``.
"""

from __future__ import annotations

import numpy as np
from scipy import special as _sp

from .params import DomainError

__all__ = [
    "bessel_i0_scaled",
    "bessel_i1_scaled",
    "elliptic_k",
    "elliptic_k_complement",
    "elliptic_e",
    "erf",
    "chebyshev_t",
    "gamma_fn",
]


def _finite(x, name):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError(f"{name}: argument must be finite")
    return x


def _out(v):
    return v.item() if np.ndim(v) == 0 else v


def bessel_i0_scaled(x):
    """``exp(-x) * I0(x)`` for finite ``x >= 0``."""
    x = _finite(x, "bessel_i0_scaled")
    if np.any(x < 0):
        raise DomainError("bessel_i0_scaled: x must be non-negative")
    return _out(_sp.i0e(x))


def bessel_i1_scaled(x):
    """``exp(-x) * I1(x)`` for finite ``x >= 0``."""
    x = _finite(x, "bessel_i1_scaled")
    if np.any(x < 0):
        raise DomainError("bessel_i1_scaled: x must be non-negative")
    return _out(_sp.i1e(x))


def elliptic_k(m):
    """Complete elliptic integral of the first kind, ``0 <= m < 1``."""
    m = _finite(m, "elliptic_k")
    if np.any(m < 0) or np.any(m >= 1):
        raise DomainError("elliptic_k: parameter must satisfy 0 <= m < 1")
    return _out(_sp.ellipk(m))


def elliptic_k_complement(p):
    """``K(1 - p)`` evaluated without forming ``1 - p``.

    Accurate when the parameter is close to one, which is the regime of the
    GUE-Ginibre mean at small alpha (``p = alpha**2``).
    """
    p = _finite(p, "elliptic_k_complement")
    if np.any(p <= 0) or np.any(p > 1):
        raise DomainError("elliptic_k_complement: need 0 < p <= 1")
    return _out(_sp.ellipkm1(p))


def elliptic_e(m):
    """Complete elliptic integral of the second kind, ``0 <= m <= 1``."""
    m = _finite(m, "elliptic_e")
    if np.any(m < 0) or np.any(m > 1):
        raise DomainError("elliptic_e: parameter must satisfy 0 <= m <= 1")
    return _out(_sp.ellipe(m))


def erf(x):
    """Error function for finite real arguments."""
    x = _finite(x, "erf")
    return _out(_sp.erf(x))


def chebyshev_t(n: int, y):
    """Chebyshev polynomial of the first kind ``T_n(y)``.

    Evaluated by the three-term recurrence, so arguments outside [-1, 1]
    are allowed.
    """
    if int(n) != n or n < 0 or n > 64:
        raise DomainError("chebyshev_t: order must be an integer in [0, 64]")
    n = int(n)
    y = _finite(y, "chebyshev_t")
    t_prev = np.ones_like(y)
    if n == 0:
        return _out(t_prev)
    t = y.copy()
    for _ in range(n - 1):
        t_prev, t = t, 2.0 * y * t - t_prev
    return _out(t)


def gamma_fn(x):
    """Gamma function for ``x > 0``."""
    x = _finite(x, "gamma_fn")
    if np.any(x <= 0):
        raise DomainError("gamma_fn: x must be positive")
    return _out(_sp.gamma(x))
