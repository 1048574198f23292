"""Discrete minimax approximation by a function system on ``[0, q]``.

:func:`best_approx` runs a single-point exchange (discrete Remez) and requires
a ``T_Z``-system.  :func:`best_approx_oracle` scans every ``(n+1)``-point
reference instead and also handles systems that are only ``T_0``.  On a
reference the cofactor functional ``lambda`` annihilates the system, so

    |sum lambda_i f(nu_i)| / sum |lambda_i|

is a lower bound for the minimax error; the largest such bound is the error.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .chebsys import SystemTable, certify, dual_functional
from .errors import BudgetExceeded, InputError, NotChebyshevSystem, NumericalError
from .oscillation import DiscreteFunction

__all__ = [
    "Certificate",
    "ApproxResult",
    "interpolate",
    "levelled_solve",
    "best_approx",
    "best_approx_oracle",
    "verify_optimality",
    "find_alternance",
    "example_2_7",
]

ORACLE_BUDGET = 100_000


@dataclass(frozen=True)
class Certificate:
    """Extremal points with the error signs, ``e(nu_i) = signs[i] * level``."""

    points: tuple
    signs: tuple
    level: float

    @property
    def alternating(self) -> bool:
        return all(a == -b for a, b in zip(self.signs, self.signs[1:]))

    @property
    def orientation(self) -> int | None:
        """``eps`` with ``signs[i] = eps * (-1)^(i+1)`` for an alternance, else ``None``."""
        if not self.signs or not self.alternating:
            return None
        return -int(self.signs[0])


@dataclass(frozen=True)
class ApproxResult:
    coefficients: np.ndarray
    E: float
    certificate: Certificate
    method: str
    levels: list = field(default_factory=list)

    @property
    def iterations(self) -> int:
        return len(self.levels)


def _values(f, q=None) -> np.ndarray:
    v = f.values if isinstance(f, DiscreteFunction) else np.asarray(f, dtype=np.float64)
    if v.ndim != 1 or not np.all(np.isfinite(v)):
        raise InputError("target must be a finite 1-D sequence")
    if q is not None and v.size != q + 1:
        raise InputError(f"target has {v.size} values but the system lives on {q + 1} points")
    return v


def interpolate(S: SystemTable, nu, y) -> np.ndarray:
    """Coefficients ``a`` with ``sum_k a_k phi_k(nu_i) = y_i`` on ``n`` points."""
    nu = np.asarray(nu, dtype=int)
    y = np.asarray(y, dtype=np.float64)
    if nu.shape != (S.n,) or y.shape != (S.n,):
        raise InputError(f"need exactly {S.n} points and values")
    M = S.table[:, nu].T
    if abs(np.linalg.det(M)) <= 1e-14 * max(1.0, np.prod(np.linalg.norm(M, axis=0))):
        raise NotChebyshevSystem("collocation matrix is singular", tuple(int(x) for x in nu))
    return np.linalg.solve(M, y)


def levelled_solve(S: SystemTable, f, nu, signs) -> tuple[np.ndarray, float]:
    """Solve ``p(nu_i) - signs[i] * h = f(nu_i)`` for the coefficients and ``h``."""
    nu = np.asarray(nu, dtype=int)
    M = np.column_stack((S.table[:, nu].T, -np.asarray(signs, dtype=np.float64)))
    try:
        sol = np.linalg.solve(M, np.asarray(f, dtype=np.float64)[nu])
    except np.linalg.LinAlgError:
        raise NotChebyshevSystem("levelled system is singular", tuple(int(x) for x in nu)) from None
    return sol[:-1], float(sol[-1])


def _trivial(S: SystemTable, f: np.ndarray, method: str) -> ApproxResult | None:
    """Handle targets that the system reproduces exactly."""
    coef, *_ = np.linalg.lstsq(S.table.T, f, rcond=None)
    err = S.evaluate(coef) - f
    scale = max(float(np.max(np.abs(f))), 1e-300)
    if np.max(np.abs(err)) <= 1e-12 * scale or S.n == S.q + 1:
        i = int(np.argmax(np.abs(err)))
        E = float(np.max(np.abs(err)))
        return ApproxResult(coef, E, Certificate((i,), (1,), E), method)
    return None


def best_approx(f, S: SystemTable, check: bool = True, rel_tol: float = 1e-12) -> ApproxResult:
    """Minimax approximation of ``f`` by a ``T_Z``-system via single-point exchange.

    Starts from rounded equispaced reference points.  Each step solves the
    levelled system on the reference, finds the grid point of largest error
    (smallest index on ties) and swaps it in while keeping the error signs
    alternating.  The levelled error strictly increases.

    Parameters
    ----------
    f : DiscreteFunction or array_like
    S : SystemTable
    check : bool
        Certify ``S`` first and refuse systems that are not ``T_Z``.
    rel_tol : float
        Stop once ``max|e| <= |h| (1 + rel_tol)``.

    Examples
    --------
    >>> from chebsturm.chebsys import monomial_table
    >>> best_approx([0.0, 1.0, 4.0], monomial_table(2, 2)).E
    0.5
    """
    q, n = S.q, S.n
    fv = _values(f, q)
    if check:
        cert = certify(S)
        if cert.kind != "T_Z":
            raise NotChebyshevSystem(
                f"exchange needs a T_Z-system, got {cert.kind}; use best_approx_oracle", cert.witness)
    trivial = _trivial(S, fv, "exchange")
    if trivial is not None:
        return trivial
    scale = float(np.max(np.abs(fv)))
    ref = list(np.floor(np.linspace(0, q, n + 1) + 0.5).astype(int))
    alt = np.array([(-1.0) ** i for i in range(n + 1)])
    levels: list[float] = []
    for _ in range(comb(q + 1, n + 1) + 1):
        coef, h = levelled_solve(S, fv, ref, alt)
        err = S.evaluate(coef) - fv
        if levels and abs(h) <= levels[-1]:
            break  # no further increase in working precision
        levels.append(abs(h))
        star = int(np.argmax(np.abs(err)))
        if abs(err[star]) <= abs(h) * (1 + rel_tol) + 1e-15 * scale:
            break
        ref_signs = alt * (1.0 if h >= 0 else -1.0)
        s = np.sign(err[star])
        j = int(np.searchsorted(ref, star))
        if j == 0:
            ref = [star] + (ref[1:] if s == ref_signs[0] else ref[:-1])
        elif j == n + 1:
            ref = (ref[:-1] if s == ref_signs[-1] else ref[1:]) + [star]
        elif s == ref_signs[j - 1]:
            ref[j - 1] = star
        else:
            ref[j] = star
    else:
        raise NumericalError("exchange did not terminate within the subset count")
    coef, h = levelled_solve(S, fv, ref, alt)
    err = S.evaluate(coef) - fv
    E = float(np.max(np.abs(err)))
    signs = tuple(int(np.sign(err[i])) for i in ref)
    return ApproxResult(coef, E, Certificate(tuple(int(i) for i in ref), signs, E), "exchange", levels)


def _cofactor_functionals(S: SystemTable, subsets: np.ndarray) -> np.ndarray:
    """``(-1)^i`` times the minors with row ``i`` removed, for a batch of references."""
    M = S.table[:, subsets].transpose(1, 2, 0)  # (K, n+1, n)
    n1 = subsets.shape[1]
    lam = np.empty(subsets.shape)
    for i in range(n1):
        lam[:, i] = (-1) ** (i + 1) * np.linalg.det(np.delete(M, i, axis=1))
    return lam


def best_approx_oracle(f, S: SystemTable, budget: int = ORACLE_BUDGET, rel_tol: float = 1e-9) -> ApproxResult:
    """Minimax approximation by scanning every ``(n+1)``-point reference.

    For each reference the cofactor functional gives the levelled error
    ``|sum lambda_i f(nu_i)| / sum |lambda_i|``.  The reference with the
    largest value is solved with error signs ``sign(lambda_i)`` and accepted
    once its error attains the level on the whole grid.  This works for any
    system whose references carry nonvanishing functionals, including
    ``T_0``-systems that are not ``T_Z``.
    """
    q, n = S.q, S.n
    fv = _values(f, q)
    if n == q + 1:
        return _trivial(S, fv, "oracle")
    total = comb(q + 1, n + 1)
    if total > budget:
        raise BudgetExceeded(f"{total} references exceed the oracle budget of {budget}")
    subsets = np.array(list(combinations(range(q + 1), n + 1)))
    lam = _cofactor_functionals(S, subsets)
    mass = np.abs(lam).sum(axis=1)
    ok = mass > 1e-14 * np.max(mass)
    level = np.zeros(len(subsets))
    level[ok] = np.abs((lam[ok] * fv[subsets[ok]]).sum(axis=1)) / mass[ok]
    best = float(level.max())
    scale = max(float(np.max(np.abs(fv))), 1e-300)
    for idx in np.argsort(-level, kind="stable"):
        if level[idx] < best - rel_tol * (scale + best):
            break
        nu = subsets[idx]
        coef, _ = levelled_solve(S, fv, nu, np.sign(lam[idx]))
        err = S.evaluate(coef) - fv
        E = float(np.max(np.abs(err)))
        if E <= best + rel_tol * (scale + best):
            signs = tuple(int(np.sign(err[i])) for i in nu)
            return ApproxResult(coef, E, Certificate(tuple(int(i) for i in nu), signs, E), "oracle")
    raise NumericalError("no reference attains its levelled error on the grid")


def verify_optimality(f, S: SystemTable, result: ApproxResult, tol: float = 1e-9) -> dict:
    """Check a certificate against the optimality characterization.

    Verifies that the error sup equals ``result.E``, that the error attains
    ``signs[i] * E`` at every certificate point, and that the cofactor
    functional on those points has weights ``rho_i = lambda_i * signs[i]`` of
    one strict sign.  A zero error passes vacuously.
    """
    fv = _values(f, S.q)
    err = S.evaluate(result.coefficients) - fv
    E = result.E
    slack = tol * (1.0 + abs(E))
    sup_ok = abs(float(np.max(np.abs(err))) - E) <= slack
    out = {"sup": sup_ok, "level": True, "dual": True, "rho": None}
    if E <= slack:
        out["passed"] = sup_ok
        return out
    cert = result.certificate
    pts = np.asarray(cert.points, dtype=int)
    out["level"] = bool(np.all(np.abs(err[pts] - np.asarray(cert.signs) * E) <= slack))
    if len(pts) != S.n + 1:
        out["dual"] = False
    else:
        lam = dual_functional(S, pts)
        rho = lam * np.asarray(cert.signs)
        rho = rho * np.sign(rho[np.argmax(np.abs(rho))])
        out["rho"] = rho.tolist()
        out["dual"] = bool(np.all(rho > 1e-12))
    out["passed"] = bool(sup_ok and out["level"] and out["dual"])
    return out


def find_alternance(err, length: int, level: float | None = None, tol: float = 1e-9):
    """Exhaustively look for ``length`` increasing points where ``err`` alternates at full level.

    Returns the first such point tuple, or ``None``.
    """
    err = np.asarray(err, dtype=np.float64)
    E = float(np.max(np.abs(err))) if level is None else level
    if E <= 0:
        return None
    extremal = [i for i in range(err.size) if abs(abs(err[i]) - E) <= tol * (1 + E)]
    for pts in combinations(extremal, length):
        s = np.sign(err[list(pts)])
        if np.all(s[1:] == -s[:-1]):
            return pts
    return None


def example_2_7(f) -> tuple[np.ndarray, float, float]:
    """Closed-form best approximation for the ``T_0``-but-not-``T_Z`` system.

    With ``lam = -(sum_{nu<=q-2} f(nu) - f(q-1) - f(q)) / (q + 1)`` the optimal
    coefficients are ``f(k-1) + lam`` for ``k < q`` and ``f(q-1) - lam`` for
    ``k = q``; the error is ``lam`` on ``[0, q-2]`` and ``-lam`` at ``q-1, q``.

    Returns
    -------
    coefficients, lam, E
    """
    fv = _values(f)
    q = fv.size - 1
    if q < 2:
        raise InputError("the counterexample needs q >= 2")
    lam = -(fv[: q - 1].sum() - fv[q - 1] - fv[q]) / (q + 1)
    coef = np.empty(q)
    coef[: q - 1] = fv[: q - 1] + lam
    coef[q - 1] = fv[q - 1] - lam
    return coef, float(lam), abs(float(lam))
