"""Extremal gap polynomials with nonnegative Fourier coefficients.

For a family ``U_l`` with ``U_l(1) = 1`` and zeros ``t_1 > ... > t_{q+1}`` of
``U_{q+1}``, the polynomial

    p*(t) = U_{q+1}(t)^2 / ((t - t_1) ... (t - t_{m+1}))

has ``a_l(p*) = int p* U_l dmu = 0`` for ``l <= m``, nonnegative higher
coefficients when the family has nonnegative linearization coefficients (the
Krein property), and keeps the sign of ``(-1)^(m-1)`` on ``[-1, t_{m+1}]``.
The second variant repeats the construction with the kernel family
``U^{(1)}_l``, orthogonal for ``(1 + t) dmu``, and an extra factor ``1 + t``.

``p*`` is never formed by division: it is evaluated as ``U_{q+1}`` times the
gap-expansion quotient ``sum_nu d_nu a_nu U_nu``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, NumericalError, PreconditionFailed
from .families import Family, christoffel, normalized
from .gapfourier import gap_expand
from .recurrence import derive_weights, eval_polys, eval_polys_table, gauss_quadrature
from .spectrum import compute_spectrum

__all__ = [
    "KreinReport",
    "YudinResult",
    "as_normalized",
    "kernel_family",
    "krein_check",
    "linearization_coeffs",
    "fourier_coeffs",
    "alternating_sums",
    "yudin_extremal",
]

NORMALIZATION_TOL = 1e-12
KREIN_TOL = 1e-10
VANISH_TOL = 1e-9
SIGN_TOL = 1e-9
SIGN_GRID = 10_000


def as_normalized(F: Family, degree: int = 64) -> Family:
    """``F`` itself when ``U_l(1) = 1`` through ``degree``, else ``F`` rescaled at 1."""
    vals = eval_polys(F.system(degree), degree, 1.0)
    if np.max(np.abs(vals - 1.0)) <= NORMALIZATION_TOL:
        return F
    return normalized(F, 1.0)


def kernel_family(F: Family) -> Family:
    """Family ``U^{(1)}_l`` orthogonal for ``(1 + t) dmu`` with ``U^{(1)}_l(1) = 1``.

    Built by the Christoffel transform at ``t = -1``.  For a symmetric measure it
    coincides with ``(U_l + U_{l+1}) / (1 + t)``.
    """
    return christoffel(as_normalized(F), z=-1.0, point=1.0)


@dataclass(frozen=True)
class KreinReport:
    """Signs of ``c_{m,n,k}`` in ``U_m U_n = sum_k c_{m,n,k} U_k`` for ``m, n <= L``.

    The property is certified only through degree ``L``; ``witness`` is the
    ``(m, n, k)`` of the most negative coefficient.
    """

    passed: bool
    L: int
    min_coeff: float
    max_coeff: float
    witness: tuple

    def to_json(self) -> dict:
        return {"passed": self.passed, "certified_degree": self.L, "min_coeff": self.min_coeff,
                "max_coeff": self.max_coeff, "witness": list(self.witness)}


def linearization_coeffs(F: Family, L: int) -> np.ndarray:
    """``c[m, n, k] = d_k int U_m U_n U_k dmu`` for ``m, n <= L`` and ``k <= 2L``."""
    L = int(L)
    if L < 0:
        raise InputError("L must be non-negative")
    sys = F.system(2 * L + 1)
    quad = gauss_quadrature(sys, 2 * L + 1)
    V = eval_polys_table(sys, 2 * L, quad.nodes)
    d = derive_weights(sys).d[: 2 * L + 1]
    Vw = V[:, : L + 1] * quad.weights[:, None]
    return np.einsum("xm,xn,xk->mnk", Vw, V[:, : L + 1], V) * d


def krein_check(F: Family, L: int, tol: float = KREIN_TOL) -> KreinReport:
    """Evidence for the Krein property of ``F`` up to degree ``L``.

    Passes when every coefficient is at least ``-tol * max c``.

    Examples
    --------
    >>> from chebsturm.families import chebyshev_t
    >>> krein_check(chebyshev_t(), 8).passed
    True
    """
    c = linearization_coeffs(F, L)
    idx = np.unravel_index(int(np.argmin(c)), c.shape)
    lo, hi = float(c[idx]), float(c.max())
    return KreinReport(lo >= -tol * hi, int(L), lo, hi, tuple(int(i) for i in idx))


def fourier_coeffs(p, F: Family, l_max: int | None = None, degree: int | None = None) -> np.ndarray:
    """Projections ``a_l = int p U_l dmu`` for ``l = 0..l_max``.

    Parameters
    ----------
    p : sequence or callable
        Power-basis coefficients, lowest degree first, or a vectorized callable
        of known ``degree``.
    F : Family
    l_max : int, optional
        Defaults to the degree of ``p``; higher projections vanish.
    degree : int, optional
        Required when ``p`` is callable.

    Examples
    --------
    >>> from chebsturm.families import chebyshev_t
    >>> fourier_coeffs([1.0], chebyshev_t()).round(12)
    array([1.])
    """
    if callable(p):
        if degree is None:
            raise InputError("a callable polynomial needs its degree")
        f = p
    else:
        coef = np.asarray(p, dtype=np.float64)
        if coef.ndim != 1 or coef.size == 0:
            raise InputError("polynomial coefficients must be a non-empty 1-D sequence")
        degree = coef.size - 1
        f = np.polynomial.Polynomial(coef)
    l_max = degree if l_max is None else int(l_max)
    n_nodes = (degree + l_max) // 2 + 1
    sys = F.system(max(n_nodes, l_max))
    quad = gauss_quadrature(sys, n_nodes)
    V = eval_polys_table(sys, l_max, quad.nodes)
    return (quad.weights * np.asarray(f(quad.nodes), dtype=np.float64)) @ V


def alternating_sums(b) -> np.ndarray:
    """``delta_nu = sum_{l <= nu} (-1)^(l + nu) b_l``.

    If ``p = sum b_l U_l = (1 + t) sum delta_nu U^{(1)}_nu`` for a symmetric
    measure, these are the kernel-basis coefficients.
    """
    b = np.asarray(b, dtype=np.float64)
    sgn = (-1.0) ** np.arange(b.size)
    return sgn * np.cumsum(sgn * b)


@dataclass(frozen=True)
class YudinResult:
    """Extremal polynomial data.

    Attributes
    ----------
    n : int
        Degree of ``p*``.
    B : float
        End of the sign-preservation interval ``[-1, B]``.
    p_coeffs : ndarray
        ``a_0..a_n`` with ``a_l = int p* U_l dmu``.
    moments : ndarray
        ``mu_i = int p* t^i dmu`` for ``i = 0..m``.
    sign_check : float
        Minimum of ``(-1)^(m-1) p*`` on a uniform grid of ``[-1, B]``.
    sign_change : float
        Minimum of the same quantity on ``(B, t_m)``; negative when ``p*``
        changes sign at ``B``.
    """

    family: str
    variant: int
    q: int
    m: int
    n: int
    B: float
    p_coeffs: np.ndarray
    moments: np.ndarray
    sign_check: float
    sign_change: float
    sup_norm: float
    krein: KreinReport | None
    assumed_krein: bool
    even: bool
    deltas: np.ndarray | None = None
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "family": self.family, "variant": self.variant, "q": self.q, "m": self.m, "n": self.n,
            "B": self.B, "p_coeffs": self.p_coeffs.tolist(), "moments": self.moments.tolist(),
            "sign_check": self.sign_check, "sign_change": self.sign_change, "sup_norm": self.sup_norm,
            "krein": None if self.krein is None else self.krein.to_json(),
            "assumed_krein": self.assumed_krein, "even": self.even,
            "deltas": None if self.deltas is None else self.deltas.tolist(),
            "violations": list(self.violations), "passed": self.passed,
        }


def _extremal_evaluator(G: Family, q: int, m: int, with_factor: bool):
    """Zeros of ``G_{q+1}`` (descending) and a vectorized evaluator of ``p*``."""
    sys = G.system(q)
    spec = compute_spectrum(sys)
    exp = gap_expand(sys, spec, m)
    d = derive_weights(sys).d[: q - m + 1]
    weighted = d * exp.coefficients

    def p(t):
        t = np.atleast_1d(np.asarray(t, dtype=np.float64))
        V = eval_polys_table(sys, q + 1, t)
        val = V[:, q + 1] * (V[:, : q - m + 1] @ weighted)
        return val * (1.0 + t) if with_factor else val

    return spec.lambdas, p


def _check_invariants(res: dict) -> list[str]:
    a, mom, sup = res["p_coeffs"], res["moments"], res["sup_norm"]
    m = res["m"]
    out = []
    top = float(np.max(np.abs(a)))
    if np.min(a) < -KREIN_TOL * float(np.max(a)):
        out.append(f"negative Fourier coefficient {np.min(a):.3e} at l={int(np.argmin(a))}")
    if np.max(np.abs(a[: m + 1])) > VANISH_TOL * top:
        out.append(f"a_0..a_{m} do not vanish: max {np.max(np.abs(a[: m + 1])):.3e}")
    if np.max(np.abs(mom)) > VANISH_TOL * sup:
        out.append(f"moments mu_0..mu_{m} do not vanish: max {np.max(np.abs(mom)):.3e}")
    if res["sign_check"] < -SIGN_TOL * sup:
        out.append(f"sign condition fails on [-1, B]: min {res['sign_check']:.3e}")
    if not res["sign_change"] < 0:
        out.append("no sign change right of B")
    return out


def yudin_extremal(F: Family, q: int, m: int, variant: int = 1, L: int | None = None,
                   assume_krein: bool = False, check: bool = True,
                   grid: int = SIGN_GRID) -> YudinResult:
    """Extremal polynomial ``p*`` and its certificate data.

    Variant 1 has degree ``n = 2q - m + 1`` and ``B = t_{m+1}``.  Variant 2 uses
    the kernel family, has ``n = 2q - m + 2`` and ``B = t^{(1)}_{m+1}``.
    ``F`` is rescaled to ``U_l(1) = 1`` if necessary.

    Parameters
    ----------
    L : int, optional
        Degree through which the Krein property is checked, default ``2q + 4``.
    assume_krein : bool
        Skip the refusal when the Krein check fails; the result records the
        assumption.
    check : bool
        Raise :class:`NumericalError` when an invariant of the result fails.

    Raises
    ------
    InputError
        Out-of-range ``q``, ``m`` or ``variant``.
    PreconditionFailed
        The Krein check fails and ``assume_krein`` is not set.
    NumericalError
        When ``check`` is set and the result violates its invariants.

    Examples
    --------
    >>> from chebsturm.families import appendix_family
    >>> round(yudin_extremal(appendix_family("iii"), 4, 1).B, 12)
    0.5
    """
    q, m = int(q), int(m)
    if not 0 <= m <= q:
        raise InputError(f"need 0 <= m <= q, got m={m}, q={q}")
    if variant not in (1, 2):
        raise InputError(f"variant must be 1 or 2, got {variant!r}")
    U = as_normalized(F)
    L = 2 * q + 4 if L is None else int(L)
    even = U.is_even()
    if variant == 1:
        G = U
        krein = krein_check(U, L)
        precondition = krein.passed
    else:
        G = kernel_family(U)
        krein = krein_check(G, L)
        precondition = krein.passed or even
    if not precondition and not assume_krein:
        raise PreconditionFailed(f"Krein precondition fails for {G.name} through degree {L} "
                                 f"(coefficient {krein.min_coeff:.3e} at {krein.witness}); "
                                 "pass assume_krein to proceed anyway", krein)

    zeros, p = _extremal_evaluator(G, q, m, with_factor=variant == 2)
    n = 2 * q - m + variant
    B = float(zeros[m])
    a = fourier_coeffs(p, U, l_max=n, degree=n)
    quad = gauss_quadrature(U.system(n + 1), n + 1)
    pv = p(quad.nodes)
    moments = np.array([float(quad.weights @ (pv * quad.nodes**i)) for i in range(m + 1)])

    sgn = -1.0 if m % 2 == 0 else 1.0
    t = np.linspace(-1.0, B, grid)
    vals = p(t)
    sup = float(np.max(np.abs(p(np.linspace(-1.0, 1.0, grid)))))
    right = float(zeros[m - 1]) if m >= 1 else 1.0
    inner = np.linspace(B, right, 257)[1:-1] if m >= 1 else np.linspace(B, right, 257)[1:]
    sign_change = float(np.min(sgn * p(inner)))

    deltas = alternating_sums(derive_weights(U.system(n)).d[: n + 1] * a) if even and variant == 2 else None
    fields = dict(p_coeffs=a, moments=moments, sup_norm=sup, m=m,
                  sign_check=float(np.min(sgn * vals)), sign_change=sign_change)
    violations = _check_invariants(fields)
    if deltas is not None and np.min(deltas) < -KREIN_TOL * float(np.max(np.abs(deltas))):
        violations.append(f"negative alternating sum {np.min(deltas):.3e}")
    for arr in (a, moments):
        arr.setflags(write=False)
    res = YudinResult(G.name, variant, q, m, n, B, a, moments, fields["sign_check"], sign_change,
                      sup, krein, bool(assume_krein and not precondition), even, deltas, violations)
    if check and violations:
        raise NumericalError("extremal polynomial fails: " + "; ".join(violations))
    return res
