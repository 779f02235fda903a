"""Even-Chebyshev approximation of the GOE-Ginibre angular function Z.

The argument ``xi`` in ``[0, inf)`` is compressed to ``y = xi / (1 + xi)``
and ``Z`` is represented as ``y (1 - y) sum_n a_n T_{2n}(arg)`` where
``arg`` is ``y`` itself (``DIRECT_Y``) or the remapped ``2 y - 1``
(``REMAPPED_Y``).  The published coefficients do not say which; both are
scored against quadrature of ``Z``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import oracle
from .params import DomainError, NumericFailure
from .specfun import chebyshev_t


class Convention(enum.Enum):
    DIRECT_Y = "direct"
    REMAPPED_Y = "remapped"


@dataclass(frozen=True)
class ChebCoeffs:
    a: tuple[float, ...]
    convention: Convention = Convention.DIRECT_Y
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(float(v) for v in self.a))
        object.__setattr__(self, "convention", Convention(self.convention))
        if not self.a:
            raise DomainError("need at least one coefficient")

    @property
    def order(self) -> int:
        return len(self.a)

    def with_convention(self, convention: Convention) -> "ChebCoeffs":
        return ChebCoeffs(self.a, convention, dict(self.meta))

    def to_dict(self) -> dict:
        return {"a": list(self.a), "convention": self.convention.value, **self.meta}


PUBLISHED_VALUES = (2.300, -0.997, -0.284, 0.118, -0.225, -0.100)
PUBLISHED_COEFFS = ChebCoeffs(PUBLISHED_VALUES, Convention.DIRECT_Y, {"source": "published"})

# Relative error is only meaningful away from the zeros at y = 0 and y = 1.
REL_MASK_FRACTION = 1e-3
CLAIM = 0.01


def xi_to_y(xi):
    xi = np.asarray(xi, dtype=float)
    if np.any(xi < 0) or np.any(np.isnan(xi)):
        raise DomainError("xi must be non-negative")
    y = np.where(np.isinf(xi), 1.0, xi / (1.0 + np.where(np.isinf(xi), 0.0, xi)))
    return y.item() if y.ndim == 0 else y


def y_to_xi(y):
    y = np.asarray(y, dtype=float)
    if np.any(y < 0) or np.any(y >= 1):
        raise DomainError("y must lie in [0, 1)")
    xi = y / (1.0 - y)
    return xi.item() if xi.ndim == 0 else xi


def _argument(y, convention):
    return y if convention is Convention.DIRECT_Y else 2.0 * y - 1.0


def _basis(y, order, convention):
    arg = _argument(np.asarray(y, dtype=float), convention)
    return np.stack([np.asarray(chebyshev_t(2 * n, arg)) for n in range(order)], axis=-1)


def z_cheb(y, coeffs: ChebCoeffs = PUBLISHED_COEFFS):
    """Chebyshev representation of Z at ``y`` in [0, 1]."""
    y = np.asarray(y, dtype=float)
    if np.any(~np.isfinite(y)) or np.any(y < 0) or np.any(y > 1):
        raise DomainError("y must lie in [0, 1]")
    series = _basis(y, coeffs.order, coeffs.convention) @ np.asarray(coeffs.a)
    out = y * (1.0 - y) * series
    return out.item() if out.ndim == 0 else out


def z_of_y(y, spec=None):
    """Quadrature value of Z at ``y`` in [0, 1]; exactly zero at both ends."""
    y = np.asarray(y, dtype=float)
    out = np.zeros_like(y)
    inner = (y > 0) & (y < 1)
    out[inner] = oracle.z_integral(y_to_xi(y[inner]), spec)
    return out


def validation_grid(n: int = 512) -> np.ndarray:
    """``n`` equispaced interior points of (0, 1)."""
    return np.linspace(0.0, 1.0, n + 2)[1:-1]


@dataclass
class FitReport:
    convention: Convention
    max_rel_err: float
    max_abs_err: float
    max_abs_err_scaled: float
    grid: np.ndarray = field(repr=False)

    @property
    def passes(self) -> bool:
        """The 1% claim read as relative error or as error scaled by max Z."""
        return min(self.max_rel_err, self.max_abs_err_scaled) <= CLAIM

    @property
    def best_reading(self) -> float:
        return min(self.max_rel_err, self.max_abs_err_scaled)

    def to_dict(self) -> dict:
        return {
            "convention": self.convention.value,
            "max_rel_err": self.max_rel_err,
            "max_abs_err": self.max_abs_err,
            "max_abs_err_scaled": self.max_abs_err_scaled,
            "grid_points": int(self.grid.size),
            "passes_1pct": self.passes,
        }


def validate_fit(coeffs: ChebCoeffs, spec=None, n_grid: int = 512, z_ref=None) -> FitReport:
    """Compare :func:`z_cheb` with quadrature of Z on an interior y grid.

    Relative error is taken only where Z exceeds ``1e-3`` of its maximum;
    the absolute error is reported raw and divided by ``max Z``.
    """
    y = validation_grid(n_grid)
    z = z_of_y(y, spec) if z_ref is None else np.asarray(z_ref)
    approx = np.asarray(z_cheb(y, coeffs))
    diff = np.abs(approx - z)
    zmax = float(z.max())
    mask = z > REL_MASK_FRACTION * zmax
    return FitReport(
        coeffs.convention,
        float(np.max(diff[mask] / z[mask])),
        float(diff.max()),
        float(diff.max() / zmax),
        y,
    )


def arbitrate(values=PUBLISHED_VALUES, spec=None, n_grid: int = 512):
    """Score a coefficient set under both argument conventions.

    Returns ``(winner, reports)`` where ``reports`` maps each convention to
    its :class:`FitReport`.  The winner is the convention whose better
    reading of the error is smaller.
    """
    z = z_of_y(validation_grid(n_grid), spec)
    reports = {
        conv: validate_fit(ChebCoeffs(values, conv), spec, n_grid, z_ref=z)
        for conv in Convention
    }
    winner = min(reports, key=lambda c: reports[c].best_reading)
    return winner, reports


def chebyshev_nodes_01(n: int) -> np.ndarray:
    k = np.arange(n)
    return 0.5 + 0.5 * np.cos(np.pi * (k + 0.5) / n)


def refit(
    order: int = 6,
    n_points: int = 512,
    spec=None,
    convention: Convention = Convention.DIRECT_Y,
    weighting: str = "z",
) -> ChebCoeffs:
    """Least-squares even-Chebyshev fit of Z on Chebyshev nodes in (0, 1).

    ``weighting="z"`` minimises the squared error of Z itself, i.e. the
    residual of ``Z / (y (1 - y))`` weighted by ``y (1 - y)``.
    ``weighting="g"`` fits ``Z / (y (1 - y))`` without weights.
    """
    order = int(order)
    n_points = int(n_points)
    if order < 1:
        raise DomainError("order must be positive")
    if n_points < 4 * order:
        raise DomainError(f"need at least 4*order = {4 * order} points, got {n_points}")
    if weighting not in ("z", "g"):
        raise DomainError("weighting must be 'z' or 'g'")
    convention = Convention(convention)
    y = chebyshev_nodes_01(n_points)
    z = oracle.z_integral(y_to_xi(y), spec)
    w = y * (1.0 - y)
    basis = _basis(y, order, convention)
    if weighting == "z":
        design, target = basis * w[:, None], z
    else:
        design, target = basis, z / w
    coef, _, rank, _ = np.linalg.lstsq(design, target, rcond=None)
    if rank < order:
        raise NumericFailure(f"design matrix rank {rank} < order {order}")
    resid = design @ coef - target
    meta = {
        "source": "refit",
        "n_points": n_points,
        "weighting": weighting,
        "rms_residual": float(np.sqrt(np.mean(resid**2))),
    }
    return ChebCoeffs(tuple(coef), convention, meta)
