"""Unit-mean Wigner surmises ``P(s) = c1 * s**beta * exp(-c2 * s**2)``.

``beta = 1, 2, 4`` are the GOE, GUE and GSE surmises and ``beta = 3`` is
the Ginibre case.  Both constants follow from requiring unit norm and unit
mean.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .params import DomainError, check_spacing
from .specfun import gamma_fn

BETAS = (1, 2, 3, 4)


class SurmiseConstants(NamedTuple):
    c1: float
    c2: float


def _check_beta(beta) -> int:
    if beta not in BETAS:
        raise DomainError(f"beta must be one of {BETAS}, got {beta!r}")
    return int(beta)


def surmise_constants(beta: int) -> SurmiseConstants:
    """Amplitude and Gaussian rate of the unit-norm, unit-mean surmise.

    With ``m_k = c1 * Gamma((beta+1+k)/2) / (2 c2**((beta+1+k)/2))`` for the
    k-th moment, ``m_0 = m_1 = 1`` fixes both constants.
    """
    beta = _check_beta(beta)
    g_lo = gamma_fn((beta + 1) / 2)
    g_hi = gamma_fn((beta + 2) / 2)
    c2 = (g_hi / g_lo) ** 2
    c1 = 2.0 * c2 ** ((beta + 1) / 2) / g_lo
    return SurmiseConstants(c1, c2)


_CONSTANTS = {b: surmise_constants(b) for b in BETAS}


def surmise_pdf(beta: int, s):
    """Unit-mean surmise density at spacing ``s >= 0``."""
    c1, c2 = _CONSTANTS[_check_beta(beta)]
    s = check_spacing(s)
    out = c1 * s**beta * np.exp(-c2 * s * s)
    return out.item() if out.ndim == 0 else out


def surmise_cdf(beta: int, s):
    """Cumulative distribution of the unit-mean surmise.

    Uses the regularized lower incomplete gamma function,
    ``F(s) = P((beta+1)/2, c2 s^2)``.
    """
    from scipy.special import gammainc

    _, c2 = _CONSTANTS[_check_beta(beta)]
    s = check_spacing(s)
    out = gammainc((beta + 1) / 2, c2 * s * s)
    return out.item() if np.ndim(out) == 0 else out


def surmise_peak(beta: int) -> tuple[float, float]:
    """Location and height of the surmise maximum, ``s* = sqrt(beta / (2 c2))``."""
    c1, c2 = _CONSTANTS[_check_beta(beta)]
    s_star = np.sqrt(beta / (2.0 * c2))
    return float(s_star), float(c1 * s_star**beta * np.exp(-beta / 2.0))
