"""
Exact computation and cross-verification of Eulerian and derangement
polynomials of types A and B, the symmetric decomposition of the type-B
derangement polynomial, and local h-polynomials of the subdivisions behind it.
"""
from .exactpoly import EgfSeries, IntPoly, RatPoly
from .families import (
    FamilyResult,
    MethodDisagreement,
    b_minus,
    b_plus,
    compute,
    derangement_a,
    derangement_b,
    eulerian_a,
    eulerian_b,
    f_minus,
    f_plus,
    gamma_a,
    main_formula,
    symmetric_decompose,
    xi_a,
    xi_minus,
    xi_plus,
)
from .signedperm import Permutation, SignedPermutation

__version__ = "0.1.0"

__all__ = [
    "EgfSeries", "FamilyResult", "IntPoly", "MethodDisagreement", "Permutation", "RatPoly",
    "SignedPermutation", "b_minus", "b_plus", "compute", "derangement_a", "derangement_b",
    "eulerian_a", "eulerian_b", "f_minus", "f_plus", "gamma_a", "main_formula",
    "symmetric_decompose", "xi_a", "xi_minus", "xi_plus",
]
