"""Orthogonal polynomials of hypergeometric type on continuous and lattice grids.

The package builds the classical polynomials ``y_n`` and their
difference-derivatives ``v_mn`` by a Rodrigues construction, computes the
three-term recurrence and the raising and lowering operators, builds the
orthonormal functions and their ladder operators, and checks every
identity through independent construction paths.
"""
from . import faults
from .errors import (
    CoefficientMismatchError,
    ConstructionMismatchError,
    DegenerateCoefficientError,
    DegenerateLatticeSiteError,
    LadderLatticeError,
    ParameterError,
    PearsonError,
    TruncationError,
    UnknownFamilyError,
    WindowTooSmallError,
)
from .families import (
    CATALOG,
    FamilySpec,
    catalog_entries,
    catalog_get,
    catalog_names,
    family_from_dict,
    load_catalog,
    norm_sq,
    norm_sq_direct,
    norm_sq_m,
)
from .field import precision, set_precision
from .ladder import LadderCoefficients, ladder_coeffs, lowering, raising, recurrence_residual
from .lattice import GridFunction, Lattice, q_bracket
from .orthonormal import LadderOperator, factorization_check, ortho_build
from .rodrigues import build_vmn, build_yn, equation_residual, rodrigues_constants
from .spectral import SpectralData, lambda_n, mu_mn, tau_m
from .verify import SuiteConfig, VerificationReport, orthogonality_check, run_suite


def clear_caches():
    """Drop every memoized construction (needed after changing the precision)."""
    from . import ladder, orthonormal, rodrigues

    rodrigues.clear_caches()
    ladder.clear_caches()
    orthonormal.clear_caches()


__all__ = [
    "CATALOG", "CoefficientMismatchError", "ConstructionMismatchError", "DegenerateCoefficientError",
    "DegenerateLatticeSiteError", "FamilySpec", "GridFunction", "LadderCoefficients", "LadderLatticeError",
    "LadderOperator", "Lattice", "ParameterError", "PearsonError", "SpectralData", "SuiteConfig",
    "TruncationError", "UnknownFamilyError", "VerificationReport", "WindowTooSmallError", "build_vmn",
    "build_yn", "catalog_entries", "catalog_get", "catalog_names", "clear_caches", "equation_residual",
    "factorization_check", "faults", "family_from_dict", "ladder_coeffs", "lambda_n", "load_catalog",
    "lowering", "mu_mn", "norm_sq", "norm_sq_direct", "norm_sq_m", "ortho_build", "orthogonality_check",
    "precision", "q_bracket", "raising", "recurrence_residual", "rodrigues_constants", "run_suite",
    "set_precision", "tau_m",
]
