"""Histograms, tabulated CDFs, Kolmogorov-Smirnov distance and moment audits."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from . import oracle
from .params import DomainError


class IntegrityError(ValueError):
    """A density failed a normalisation sanity check."""


def _as_samples(samples) -> np.ndarray:
    arr = getattr(samples, "spacings", samples)
    return np.asarray(arr, dtype=float).ravel()


@dataclass
class Histogram:
    edges: np.ndarray
    counts: np.ndarray
    density: np.ndarray
    n: int
    below: int = 0
    above: int = 0

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[1:] + self.edges[:-1])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)


def histogram(samples, bins: int, range: tuple[float, float], scale: float = 1.0) -> Histogram:
    """Bin samples on ``range`` after dividing them by ``scale``.

    Densities are counts over ``(in-range count) * width``, so the histogram
    integrates to one over the in-range mass.  Out-of-range samples are
    tallied in ``below`` and ``above``.
    """
    x = _as_samples(samples) / scale
    if x.size == 0:
        raise DomainError("histogram of an empty sample set")
    if int(bins) < 1:
        raise DomainError("bins must be at least 1")
    lo, hi = (float(v) for v in range)
    if not lo < hi:
        raise DomainError("histogram range needs lo < hi")
    counts, edges = np.histogram(x, bins=int(bins), range=(lo, hi))
    n_in = int(counts.sum())
    width = np.diff(edges)
    density = counts / (n_in * width) if n_in else np.zeros_like(width)
    return Histogram(edges, counts, density, n_in, int(np.sum(x < lo)), int(np.sum(x > hi)))


# 8-point Gauss-Legendre on each grid cell gives cell masses to ~1e-15 for
# the smooth densities handled here.
_GL_X, _GL_W = np.polynomial.legendre.leggauss(8)


def _monotone_slopes(x, y, d):
    """Limit Hermite slopes ``d`` so the cubic through ``(x, y)`` is monotone.

    Fritsch-Carlson: on each cell with secant ``m``, scale the end slopes
    down whenever ``(d0/m)^2 + (d1/m)^2 > 9``.
    """
    d = np.maximum(np.asarray(d, dtype=float).copy(), 0.0)
    m = np.diff(y) / np.diff(x)
    for k in range(m.size):
        if m[k] <= 0.0:
            d[k] = d[k + 1] = 0.0
            continue
        a, b = d[k] / m[k], d[k + 1] / m[k]
        r = a * a + b * b
        if r > 9.0:
            tau = 3.0 / np.sqrt(r)
            d[k], d[k + 1] = tau * a * m[k], tau * b * m[k]
    return d


class TabulatedCdf:
    """CDF built by cumulative Gauss-Legendre integration on a fixed grid.

    Between grid points the CDF is a cubic Hermite interpolant whose slopes
    are the density itself, limited where needed to stay monotone; beyond
    the last point it is one.
    """

    def __init__(self, pdf, upper: float = 12.0, n_cells: int = 600, tol: float = 1e-4):
        if not upper > 0 or n_cells < 2:
            raise DomainError("need upper > 0 and at least two cells")
        edges = np.linspace(0.0, upper, n_cells + 1)
        mid = 0.5 * (edges[1:] + edges[:-1])
        half = 0.5 * np.diff(edges)
        nodes = mid[:, None] + half[:, None] * _GL_X[None, :]
        vals = np.asarray(pdf(nodes.ravel()), dtype=float).reshape(nodes.shape)
        if np.any(vals < 0) or not np.all(np.isfinite(vals)):
            raise IntegrityError("density must be finite and non-negative")
        mass = half * (vals @ _GL_W)
        cum = np.concatenate([[0.0], np.cumsum(mass)])
        self.norm = float(cum[-1])
        if abs(self.norm - 1.0) > tol:
            raise IntegrityError(f"density integrates to {self.norm:.8g} on [0, {upper}]")
        self.edges = edges
        self.values = cum
        self.upper = float(upper)
        slopes = _monotone_slopes(edges, cum, np.asarray(pdf(edges), dtype=float))
        self._interp = CubicHermiteSpline(edges, cum, slopes, extrapolate=False)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.asarray(self._interp(np.clip(x, 0.0, self.upper)), dtype=float)
        out = np.where(x >= self.upper, 1.0, out)
        out = np.where(x <= 0.0, 0.0, out)
        out = np.minimum(out, 1.0)
        return out.item() if out.ndim == 0 else out


def cdf_from_pdf(pdf, upper: float = 12.0, n_cells: int = 600, tol: float = 1e-4) -> TabulatedCdf:
    return TabulatedCdf(pdf, upper, n_cells, tol)


def default_ks_threshold(n: int) -> float:
    """``5 / sqrt(n)``: about three times the 1% critical value 1.63/sqrt(n)."""
    return 5.0 / np.sqrt(n)


@dataclass
class KsReport:
    statistic: float
    n: int
    threshold: float

    @property
    def passed(self) -> bool:
        return self.statistic <= self.threshold

    def to_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "n": self.n,
            "threshold": self.threshold,
            "pass": self.passed,
        }


def ks_statistic(samples, cdf, threshold: float | None = None, scale: float = 1.0) -> KsReport:
    """One-sample KS distance ``sup |F_n - F|`` of ``samples / scale``."""
    x = np.sort(_as_samples(samples) / scale)
    n = x.size
    if n < 1:
        raise DomainError("KS statistic needs at least one sample")
    F = np.asarray(cdf(x), dtype=float)
    i = np.arange(1, n + 1)
    d = max(np.max(np.abs(i / n - F)), np.max(np.abs((i - 1) / n - F)))
    thr = default_ks_threshold(n) if threshold is None else float(threshold)
    return KsReport(float(d), int(n), thr)


def moment_audit(pdf, spec: oracle.QuadratureSpec | None = None, scale: float = 4.0, tol: float = 1e-4):
    """Norm and mean of a density on the half line by mapped quadrature.

    Raises :class:`IntegrityError` when the norm is off by more than ``tol``.
    """
    spec = oracle.DEFAULT_SPEC if spec is None else spec

    def f(s, idx):
        p = np.asarray(pdf(s), dtype=float)
        return np.where(idx == 0, p, s * p)

    val, _ = oracle.integrate_halfline_batch(f, 2, spec, scale)
    norm, mean = float(val[0]), float(val[1])
    if abs(norm - 1.0) > tol:
        raise IntegrityError(f"density norm {norm:.8g} differs from 1")
    return norm, mean
