"""Transitional level-spacing distributions of a 4x4 random matrix model.

The model interpolates between the Wigner surmises of the orthogonal,
unitary, Ginibre and symplectic classes (beta = 1, 2, 3, 4).  The package
provides closed-form densities and means for three one-parameter
transitions, a quadrature oracle that certifies them, a Monte Carlo
sampler for the underlying matrices, and an even-Chebyshev fit of the
angular function that appears in the GOE to Ginibre case.
"""

from .params import AlphaVec, DomainError, NumericFailure, Scale, TransitionKind, ZMode
from .surmise import surmise_cdf, surmise_constants, surmise_pdf
from .transition import (
    cdf_goe_ginibre,
    mean,
    mean_ginibre_gse,
    mean_goe_ginibre,
    mean_gue_ginibre,
    pdf,
    pdf_ginibre_gse,
    pdf_goe_ginibre,
    pdf_gue_ginibre,
    pdf_normalized,
    pdf_table,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaVec",
    "DomainError",
    "NumericFailure",
    "Scale",
    "TransitionKind",
    "ZMode",
    "cdf_goe_ginibre",
    "mean",
    "mean_ginibre_gse",
    "mean_goe_ginibre",
    "mean_gue_ginibre",
    "pdf",
    "pdf_ginibre_gse",
    "pdf_goe_ginibre",
    "pdf_gue_ginibre",
    "pdf_normalized",
    "pdf_table",
    "surmise_cdf",
    "surmise_constants",
    "surmise_pdf",
]
