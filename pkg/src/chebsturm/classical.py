"""Closed forms for the four Chebyshev-type Jacobi families.

Case ``c`` in ``{"i", "ii", "iii", "iv"}`` is the Jacobi family with parameters
``(-1/2 + alpha, -1/2 + beta)`` for ``(alpha, beta)`` in
``(0, 0), (0, 1), (1, 1), (1, 0)``, normalized to 1 at ``t = 1``.  Each one is a
trigonometric system in disguise, so the bordered determinant

    D(nu; nu_1..nu_m) = det(U_{nu_i}(t_j))_{i,j = 1..m+1}

reduces to a Vandermonde determinant in ``cos x_i`` or ``cos^2 x_i``.  Point
sets are passed in increasing order, as in :func:`chebsys.bordered_det`; the
closed forms run through them in decreasing order with ``nu`` last, the order
in which the products below are written.

Also here: the cosine and sine expansions of ``cos((q+1)x)`` and
``sin((q+1)x)`` divided by their top zeros, with an independent trapezoid
oracle for both.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import pi

import numpy as np

from .chebsys import SystemTable, bordered_det
from .errors import InputError, NumericalError
from .families import APPENDIX_CASES, Family, appendix_family, chebyshev_t, chebyshev_u
from .gapfourier import gap_expand
from .recurrence import derive_weights
from .spectrum import compute_spectrum

__all__ = [
    "AppendixCase",
    "appendix_D_closed_form",
    "appendix_D_numeric",
    "compare_determinant",
    "trig_cos_coeffs",
    "trig_sin_coeffs",
    "trig_cos_coeffs_trapezoid",
    "trig_sin_coeffs_trapezoid",
]


@dataclass(frozen=True)
class AppendixCase:
    """One closed-form family at a fixed ``q``."""

    case: str
    q: int

    def __post_init__(self):
        if self.case not in APPENDIX_CASES:
            raise InputError(f"unknown appendix case {self.case!r}; expected one of {sorted(APPENDIX_CASES)}")
        if int(self.q) < 1:
            raise InputError("appendix cases need q >= 1")

    @property
    def alpha_beta(self) -> tuple[int, int]:
        return APPENDIX_CASES[self.case]

    def family(self) -> Family:
        return appendix_family(self.case)

    def zeros(self) -> np.ndarray:
        """Zeros ``t_1 > ... > t_{q+1}`` of ``U_{q+1}`` from the cosine formula."""
        j = np.arange(1, self.q + 2, dtype=np.float64)
        q = self.q
        theta = {
            "i": pi * (2 * j - 1) / (2 * q + 2),
            "ii": pi * (2 * j - 1) / (2 * q + 3),
            "iii": pi * j / (q + 2),
            "iv": 2 * pi * j / (2 * q + 3),
        }[self.case]
        return np.cos(theta)

    def angle(self, nu) -> np.ndarray:
        """``x`` with ``U_nu(t_j)`` a trigonometric function of ``j x``."""
        nu = np.asarray(nu, dtype=np.float64)
        q = self.q
        return {
            "i": pi * nu / (2 * q + 2),
            "ii": pi * (nu + 0.5) / (2 * q + 3),
            "iii": pi * (nu + 1) / (q + 2),
            "iv": pi * (nu + 0.5) / (q + 1.5),
        }[self.case]


def _as_case(case, q) -> AppendixCase:
    return case if isinstance(case, AppendixCase) else AppendixCase(str(case), int(q))


def _check_points(c: AppendixCase, nu: int, nus) -> np.ndarray:
    nus = np.asarray(nus)
    if nus.ndim != 1 or (nus.size and not np.issubdtype(nus.dtype, np.integer)):
        raise InputError("fixed points must be a 1-D integer sequence")
    if nus.size >= c.q + 1:
        raise InputError(f"at most {c.q} fixed points for q={c.q}")
    if nus.size > 1 and not np.all(np.diff(nus) > 0):
        raise InputError("fixed points must be strictly increasing")
    if nus.size and (nus[0] < 1 or nus[-1] > c.q):
        raise InputError(f"fixed points must lie in [1, {c.q}]")
    if not 0 <= int(nu) <= c.q:
        raise InputError(f"free point must lie in [0, {c.q}]")
    return nus


def _vandermonde(v: np.ndarray) -> float:
    out = 1.0
    for l in range(v.size):
        for k in range(l):
            out *= v[l] - v[k]
    return out


def appendix_D_closed_form(case, nu: int, nus, q: int | None = None) -> float:
    """Product formula for ``D(nu; nus)``.

    ``case`` is an :class:`AppendixCase` or a case id together with ``q``.

    Examples
    --------
    >>> round(appendix_D_closed_form("iii", 0, [3], q=4), 12)
    0.683012701892
    """
    c = _as_case(case, q)
    nus = _check_points(c, nu, nus)
    m = nus.size
    pts = np.concatenate((nus[::-1], [nu])).astype(np.float64)
    x = c.angle(pts)
    cx = np.cos(x)
    j = np.arange(1, m + 2, dtype=np.float64)
    if c.case in ("i", "ii"):
        D = 2.0 ** (m * (m + 1)) * np.prod(cx) * _vandermonde(cx**2)
        if c.case == "ii":
            # sqrt(2 / (1 + t_j)) = 1 / cos(theta_j / 2)
            D /= np.prod(np.cos(pi * (2 * j - 1) / (2 * (2 * c.q + 3))))
        return float(D)
    D = 2.0 ** (m * (m + 1) / 2) * np.prod(np.sin(x)) * _vandermonde(cx)
    if c.case == "iii":
        return float(D / (np.prod(pts + 1) * np.prod(np.sin(pi * j / (c.q + 2)))))
    # sqrt((1 - t_j) / 2) = sin(theta_j / 2), taken directly to avoid cancellation near t_j = 1
    return float(D / (np.prod(2 * pts + 1) * np.prod(np.sin(pi * j / (2 * c.q + 3)))))


def _case_table(c: AppendixCase, m: int) -> SystemTable:
    spec = compute_spectrum(c.family().system(c.q))
    return SystemTable(spec.psi[: m + 1])


def appendix_D_numeric(case, nu: int, nus, q: int | None = None) -> float:
    """Bordered determinant on the numerically computed eigenfunction table."""
    c = _as_case(case, q)
    nus = _check_points(c, nu, nus)
    return bordered_det(_case_table(c, nus.size), int(nu), nus)


def compare_determinant(case, nu: int, nus, q: int | None = None, tol: float = 1e-8,
                        abs_floor: float = 1e-12) -> dict:
    """Closed form against the numeric determinant.

    Passes when the relative difference is at most ``tol``, or when both values
    are below ``abs_floor`` (the free point repeats a fixed one).
    """
    closed = appendix_D_closed_form(case, nu, nus, q)
    numeric = appendix_D_numeric(case, nu, nus, q)
    diff = abs(closed - numeric)
    both_zero = abs(closed) <= abs_floor and abs(numeric) <= abs_floor
    rel = diff / abs(closed) if closed != 0 else (0.0 if diff == 0 else float("inf"))
    return {"closed_form": closed, "numeric": numeric, "abs_diff": diff,
            "rel_diff": rel, "passed": bool(both_zero or rel <= tol)}


def _strictly_decreasing_positive(v: np.ndarray) -> bool:
    return bool(np.all(v > 0) and np.all(np.diff(v) < 0))


def trig_cos_coeffs(q: int, m: int, check: bool = True) -> np.ndarray:
    """``a_0..a_{q-m}`` in ``cos((q+1)x) / prod_{j<=m} (cos x - cos(pi(2j+1)/(2q+2)))``.

    The expansion is ``a_0 / 2 + sum_nu a_nu cos(nu x)``.  With ``t = cos x`` the
    quotient is ``sum d_nu g_nu T_nu(t)`` with ``d = (1, 2, 2, ...)``, so the
    halved constant term gives ``a_nu = 2 g_nu`` for every ``nu``.

    Examples
    --------
    >>> trig_cos_coeffs(1, 0).round(12).tolist()
    [2.828427124746, 2.0]
    """
    q, m = int(q), int(m)
    if not 0 <= m <= q:
        raise InputError(f"need 0 <= m <= q, got m={m}, q={q}")
    a = 2.0 * gap_expand(chebyshev_t().system(q), m=m).coefficients
    if check and not _strictly_decreasing_positive(a):
        raise NumericalError(f"cosine coefficients are not strictly decreasing and positive: {a}")
    return a


def trig_sin_coeffs(q: int, m: int, check: bool = True) -> np.ndarray:
    """``b_1..b_{q-m+1}`` in ``sin((q+1)x) / prod_{j=1}^{m} (cos x - cos(pi j/(q+1)))``.

    The expansion is ``sum_nu nu b_nu sin(nu x)``.  Since
    ``sin((q+1)x) = sin x U_q(cos x)`` with the second-kind ``U`` and
    ``sin x U_l(cos x) = sin((l+1)x)``, the quotient is the gap expansion of
    ``U_q`` with its ``m`` top zeros removed, so ``b_nu = d_{nu-1} g_{nu-1} / nu``.

    Examples
    --------
    >>> trig_sin_coeffs(1, 1).round(12).tolist()
    [2.0]
    """
    q, m = int(q), int(m)
    if not 1 <= m <= q:
        raise InputError(f"need 1 <= m <= q, got m={m}, q={q}")
    sys = chebyshev_u().system(q - 1)
    g = gap_expand(sys, m=m - 1).coefficients
    d = derive_weights(sys).d[: g.size]
    b = d * g / np.arange(1, g.size + 1)
    if check and not _strictly_decreasing_positive(b):
        raise NumericalError(f"sine coefficients are not strictly decreasing and positive: {b}")
    return b


def _grid(q: int) -> np.ndarray:
    # Points pi(2k+1)/(4q+4) never hit a removed zero of either expansion.
    M = 4 * q + 4
    return pi * (2 * np.arange(M) + 1) / M


def trig_cos_coeffs_trapezoid(q: int, m: int) -> np.ndarray:
    """Same as :func:`trig_cos_coeffs` by direct division and trapezoid projection."""
    x = _grid(q)
    den = np.prod([np.cos(x) - np.cos(pi * (2 * j + 1) / (2 * q + 2)) for j in range(m + 1)], axis=0)
    f = np.cos((q + 1) * x) / den
    nu = np.arange(q - m + 1)
    return 2.0 * (np.cos(np.outer(nu, x)) @ f) / x.size


def trig_sin_coeffs_trapezoid(q: int, m: int) -> np.ndarray:
    """Same as :func:`trig_sin_coeffs` by direct division and trapezoid projection."""
    x = _grid(q)
    den = np.prod([np.cos(x) - np.cos(pi * j / (q + 1)) for j in range(1, m + 1)], axis=0)
    f = np.sin((q + 1) * x) / den
    nu = np.arange(1, q - m + 2)
    return 2.0 * (np.sin(np.outer(nu, x)) @ f) / x.size / nu
