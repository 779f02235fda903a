"""Parameter types shared across the package.

The matrix model carries three mixing strengths ``(a1, a2, a3)``, one per
off-diagonal Gaussian ``d, e, f``.  Each of the three one-parameter
transitions is a straight line through that cube.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class DomainError(ValueError):
    """Argument outside the domain of a function."""


class NumericFailure(ArithmeticError):
    """An iterative numerical method did not converge."""


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not np.isfinite(alpha) or alpha < 0.0 or alpha > 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha!r}")
    return alpha


def check_spacing(s):
    """Validate spacing arguments, returning a float array."""
    s = np.asarray(s, dtype=float)
    if not np.all(np.isfinite(s)) or np.any(s < 0):
        raise DomainError("spacing must be finite and non-negative")
    return s


@dataclass(frozen=True)
class AlphaVec:
    """Mixing strengths of the d, e and f couplings, each in [0, 1]."""

    a1: float
    a2: float
    a3: float

    def __post_init__(self):
        for name in ("a1", "a2", "a3"):
            object.__setattr__(self, name, check_alpha(getattr(self, name)))

    @classmethod
    def parse(cls, text: str) -> "AlphaVec":
        parts = [p for p in text.replace(" ", "").split(",") if p]
        if len(parts) != 3:
            raise DomainError(f"expected three comma separated values, got {text!r}")
        return cls(*(float(p) for p in parts))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a1, self.a2, self.a3)

    def nonzero(self) -> tuple[float, ...]:
        """Strengths that contribute a dimension to the Gaussian shell."""
        return tuple(a for a in self.as_tuple() if a > 0.0)

    @property
    def dimension(self) -> int:
        return 2 + len(self.nonzero())

    def __str__(self) -> str:
        return f"({self.a1:g},{self.a2:g},{self.a3:g})"


class TransitionKind(enum.Enum):
    """The three one-parameter families with closed-form densities.

    ``GUE_GINIBRE``  follows alpha_vec = (1, alpha, 0),
    ``GINIBRE_GSE``  follows alpha_vec = (1, 1, alpha),
    ``GOE_GINIBRE``  follows alpha_vec = (alpha, alpha, 0).
    """

    GUE_GINIBRE = "gue-ginibre"
    GINIBRE_GSE = "ginibre-gse"
    GOE_GINIBRE = "goe-ginibre"

    def alpha_vec(self, alpha: float) -> AlphaVec:
        alpha = check_alpha(alpha)
        if self is TransitionKind.GUE_GINIBRE:
            return AlphaVec(1.0, alpha, 0.0)
        if self is TransitionKind.GINIBRE_GSE:
            return AlphaVec(1.0, 1.0, alpha)
        return AlphaVec(alpha, alpha, 0.0)

    @property
    def endpoint_betas(self) -> tuple[int, int]:
        """Surmise exponents reached at alpha = 0 and alpha = 1."""
        return {
            TransitionKind.GUE_GINIBRE: (2, 3),
            TransitionKind.GINIBRE_GSE: (3, 4),
            TransitionKind.GOE_GINIBRE: (1, 3),
        }[self]

    @property
    def small_s_power(self) -> int:
        """Leading exponent of the raw density at s -> 0 for 0 < alpha <= 1."""
        return 4 if self is TransitionKind.GINIBRE_GSE else 3


class ZMode(enum.Enum):
    """How the angular function of the GOE-Ginibre family is evaluated."""

    EXACT_QUADRATURE = "exact"
    CHEB_APPROX = "cheb"
    CLOSED_FORM = "closed"


class Scale(enum.Enum):
    RAW_S = "raw"
    UNIT_MEAN_R = "unit-mean"
