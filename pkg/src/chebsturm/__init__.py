"""Discrete Chebyshev systems, Sturm oscillation and gap polynomials.

The package builds orthogonal-polynomial families from three-term recurrences,
solves the boundary-perturbed eigenproblem on ``[0, q]``, counts generalized
zeros and sign changes, certifies discrete Chebyshev systems, computes discrete
minimax approximations with alternance certificates, and constructs gap
expansions and extremal polynomials with nonnegative Fourier coefficients.
"""
from __future__ import annotations

from ._backend import BACKEND
from ._version import __version__
from .chebsys import SystemTable, TSystemCertificate, bordered_det, certify, dual_functional, gram_det
from .errors import (BudgetExceeded, ChebSturmError, InputError, NotChebyshevSystem, NumericalError,
                     PreconditionFailed)
from .families import Family, builtin_families, family_from_spec, load_system
from .gapfourier import GapExpansion, classify_and_verify, eta_b, gap_expand
from .minimax import ApproxResult, best_approx, best_approx_oracle, verify_optimality
from .oscillation import DiscreteFunction, OscillationReport, oscillation_report
from .recurrence import RecurrenceSystem, derive_weights, eval_polys, gauss_quadrature
from .spectrum import Spectrum, compute_spectrum
from .yudin import YudinResult, kernel_family, krein_check, yudin_extremal

__all__ = [
    "BACKEND",
    "__version__",
    "ApproxResult",
    "BudgetExceeded",
    "ChebSturmError",
    "DiscreteFunction",
    "Family",
    "GapExpansion",
    "InputError",
    "NotChebyshevSystem",
    "NumericalError",
    "OscillationReport",
    "PreconditionFailed",
    "RecurrenceSystem",
    "Spectrum",
    "SystemTable",
    "TSystemCertificate",
    "YudinResult",
    "best_approx",
    "best_approx_oracle",
    "bordered_det",
    "builtin_families",
    "certify",
    "classify_and_verify",
    "compute_spectrum",
    "derive_weights",
    "dual_functional",
    "eta_b",
    "eval_polys",
    "family_from_spec",
    "gap_expand",
    "gauss_quadrature",
    "gram_det",
    "kernel_family",
    "krein_check",
    "load_system",
    "oscillation_report",
    "verify_optimality",
    "yudin_extremal",
]
