"""Fourier coefficients of a perturbed polynomial divided by its top zeros.

For ``lambda_1 > ... > lambda_{q+1}``, the zeros of ``P_{q+1} - eta P_q``, the
quotient

    (P_{q+1} - eta P_q) / prod_{j <= m+1} (lam - lambda_j) = sum_nu d_nu a_nu P_nu

is expanded two independent ways: from the partial-fraction formula

    a_nu = (1 / w_q) sum_i P_nu(lambda_i) / (omega'(lambda_i) P_q(lambda_i)),

and by integrating the quotient against ``P_nu`` with the Gauss-type rule whose
nodes are the eigenvalues themselves.  The two agree only when the eigenvalues
really are zeros of ``P~`` (confluent Christoffel-Darboux identity).
The ratios ``a_nu / P_nu(b)`` are then monotone, with the direction fixed by
``m`` and the position of ``eta`` relative to ``P_{q+1}(b) / P_q(b)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chebsys import SystemTable, bordered_det
from .errors import InputError, NumericalError
from .recurrence import RecurrenceSystem, derive_weights, eval_polys, eval_polys_table, zeros_of
from .spectrum import Spectrum, compute_spectrum

__all__ = [
    "GapExpansion",
    "EtaClassification",
    "eta_b",
    "default_endpoint",
    "gap_expand",
    "ptilde_derivative",
    "classify_and_verify",
    "determinant_crosscheck",
]

ROUTE_TOL = 1e-8
EQUAL_TOL = 1e-8
STRICT_MARGIN = 1e-10


def default_endpoint(sys: RecurrenceSystem, b: float | None = None) -> float:
    if b is not None:
        return float(b)
    if sys.family is None:
        raise InputError("custom tables need an explicit endpoint b")
    return sys.family.support[1]


def eta_b(sys: RecurrenceSystem, b: float | None = None) -> float:
    """Boundary parameter that puts the top eigenvalue exactly at ``b``.

    ``b`` must lie strictly right of every zero of ``P_q``; it defaults to the
    right end of the support for builtin families.
    """
    b = default_endpoint(sys, b)
    q = sys.q
    if q >= 1:
        z = zeros_of(sys, q)
        if not b > z[-1]:
            raise InputError(f"b={b} is not right of the largest zero {z[-1]} of P_{q}")
    p = eval_polys(sys, q + 1, b)
    return float(p[q + 1] / p[q])


@dataclass(frozen=True)
class GapExpansion:
    """Coefficients ``a_0..a_{q-m}`` of the quotient in the ``d``-weighted basis."""

    m: int
    coefficients: np.ndarray
    quadrature_coefficients: np.ndarray
    route_gap: float
    removed: np.ndarray
    eta: float

    @property
    def q(self) -> int:
        return self.coefficients.size - 1 + self.m


def ptilde_derivative(sys: RecurrenceSystem, lams) -> np.ndarray:
    """``d/dlam (P_{q+1} - eta P_q)`` by differentiating the forward recurrence."""
    q = sys.q
    alpha, beta, gamma, rho = sys.tables(q + 1)
    lams = np.atleast_1d(np.asarray(lams, dtype=np.float64))
    P = eval_polys_table(sys, q + 1, lams)
    dP = np.zeros_like(P)
    for l in range(q + 1):
        back = gamma[l - 1] * dP[:, l - 1] if l else 0.0
        dP[:, l + 1] = ((lams * rho[l] - alpha[l]) * dP[:, l] + rho[l] * P[:, l] - back) / beta[l]
    return dP[:, q + 1] - sys.eta * dP[:, q]


def _quotient_by_quadrature(sys: RecurrenceSystem, spec: Spectrum, m: int) -> np.ndarray:
    """Integrate ``quotient * P_nu`` with the Gauss-type rule on the zeros of ``P~``.

    The nodes are the eigenvalues and the weights ``1 / sum_{l<=q} d_l P_l^2``,
    a rule exact up to degree ``2q``.  The quotient vanishes at every node
    except the removed ones, where it equals ``P~'(lambda_i) / omega'(lambda_i)``.
    """
    q = sys.q
    d = derive_weights(sys).d
    lam = spec.lambdas[: m + 1]
    vals = spec.psi[: m + 1]
    weights = 1.0 / ((vals**2) @ d)
    omega_prime = np.array([np.prod(np.delete(lam[i] - lam, i)) for i in range(m + 1)])
    at_nodes = ptilde_derivative(sys, lam) / omega_prime
    return (weights * at_nodes) @ vals[:, : q - m + 1]


def gap_expand(sys: RecurrenceSystem, spec: Spectrum | None = None, m: int = 0,
               route_tol: float = ROUTE_TOL) -> GapExpansion:
    """Expansion coefficients after removing the ``m + 1`` largest zeros.

    Raises
    ------
    NumericalError
        If the partial-fraction and quadrature routes disagree by more than
        ``route_tol`` relative to the largest coefficient.

    Examples
    --------
    >>> from chebsturm.families import chebyshev_t
    >>> gap_expand(chebyshev_t().system(1), m=0).coefficients.round(12).tolist()
    [1.414213562373, 1.0]
    """
    q = sys.q
    if not 0 <= m <= q:
        raise InputError(f"need 0 <= m <= q, got m={m}, q={q}")
    spec = compute_spectrum(sys) if spec is None else spec
    lam = spec.lambdas[: m + 1]
    wts = derive_weights(sys)
    w_q = wts.w[q]
    omega_prime = np.array([np.prod(np.delete(lam[i] - lam, i)) for i in range(m + 1)])
    top = q - m
    vals = spec.psi[: m + 1]
    a = (vals[:, : top + 1] / (omega_prime * vals[:, q])[:, None]).sum(axis=0) / w_q

    b = _quotient_by_quadrature(sys, spec, m)
    gap = float(np.max(np.abs(a - b)) / np.max(np.abs(a)))
    if gap > route_tol:
        raise NumericalError(f"expansion routes disagree: relative gap {gap:.3e} > {route_tol:g}")
    return GapExpansion(m, a, b, gap, lam.copy(), sys.eta)


@dataclass(frozen=True)
class EtaClassification:
    """Expected and observed monotonicity of ``a_nu / P_nu(b)``.

    ``case`` is ``"a"`` (``m >= 1`` or ``eta < eta_b``), ``"b"`` (``m = 0`` and
    ``eta = eta_b``) or ``"c"`` (``m = 0`` and ``eta > eta_b``); the expected
    verdicts are strictly decreasing, all equal and strictly increasing.
    """

    eta_b: float
    case: str
    expected: str
    verdict: str
    ratios: np.ndarray
    spread: float
    consistent: bool


_EXPECTED = {"a": "strictly_decreasing", "b": "all_equal", "c": "strictly_increasing"}


def _verdict(r: np.ndarray) -> tuple[str, float]:
    top = float(np.max(np.abs(r)))
    spread = float((r.max() - r.min()) / top) if top > 0 else 0.0
    if np.any(r <= 0):
        return "not_positive", spread
    if r.size == 1:
        return "single", spread
    if spread <= EQUAL_TOL:
        return "all_equal", spread
    steps = np.diff(r)
    margin = STRICT_MARGIN * top
    if np.all(steps < -margin):
        return "strictly_decreasing", spread
    if np.all(steps > margin):
        return "strictly_increasing", spread
    return "mixed", spread


def classify_and_verify(expansion: GapExpansion, sys: RecurrenceSystem, b: float | None = None,
                        eta_tol: float = 1e-10) -> EtaClassification:
    """Compare the observed ratio pattern with the one predicted by ``(m, eta)``.

    A single coefficient is consistent with every case.
    """
    b = default_endpoint(sys, b)
    eb = eta_b(sys, b)
    if expansion.m >= 1:
        case = "a"
    elif abs(sys.eta - eb) <= eta_tol * (1 + abs(eb)):
        case = "b"
    else:
        case = "a" if sys.eta < eb else "c"
    top = expansion.coefficients.size - 1
    r = expansion.coefficients / eval_polys(sys, top, b)
    verdict, spread = _verdict(r)
    consistent = verdict == _EXPECTED[case] or verdict == "single"
    return EtaClassification(eb, case, _EXPECTED[case], verdict, r, spread, consistent)


def determinant_crosscheck(sys: RecurrenceSystem, spec: Spectrum | None = None, m: int = 1,
                           tol: float = 1e-7) -> dict:
    """Check ``a_nu`` against the bordered determinant ``D(nu, q-m+1, ..., q)``.

    The coefficients come from the quadrature route, which relies on the
    eigenvalues being zeros of ``P~``; a spectrum that does not match ``sys``
    therefore shows up as a non-constant ratio.
    """
    q = sys.q
    if not 1 <= m <= q:
        raise InputError(f"need 1 <= m <= q, got m={m}, q={q}")
    spec = compute_spectrum(sys) if spec is None else spec
    a = _quotient_by_quadrature(sys, spec, m)
    S = SystemTable(spec.psi[: m + 1])
    nus = np.arange(q - m + 1, q + 1)
    D = np.array([bordered_det(S, nu, nus) for nu in range(q - m + 1)])
    ratio = a / D
    spread = float((ratio.max() - ratio.min()) / np.max(np.abs(ratio)))
    positive = bool(np.all(ratio > 0))
    return {"ratios": ratio, "spread": spread, "positive": positive,
            "passed": positive and spread <= tol}
