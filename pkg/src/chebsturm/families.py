"""Builtin recurrence families with analytic coefficient generators.

Every family can produce coefficient tables of any length, so quadrature and
evaluation may run past the grid size of a particular system.  Jacobi-type
families are normalized so that ``P_l(1) = 1``.
"""
from __future__ import annotations

from typing import Callable, Mapping

import numpy as np

from .errors import InputError
from .recurrence import RecurrenceSystem, monic_coefficients

__all__ = [
    "Family",
    "chebyshev_t",
    "chebyshev_u",
    "legendre",
    "jacobi",
    "appendix_family",
    "normalized",
    "christoffel",
    "builtin_families",
    "family_from_spec",
    "load_system",
    "APPENDIX_CASES",
]

# Appendix case -> (alpha, beta) with Jacobi parameters (-1/2 + alpha, -1/2 + beta).
APPENDIX_CASES = {"i": (0, 0), "ii": (0, 1), "iii": (1, 1), "iv": (1, 0)}


class Family:
    """A named generator of recurrence tables.

    Parameters
    ----------
    name : str
    params : mapping
        Parameters echoed in reports; must be JSON-serializable.
    generator : callable
        ``generator(n) -> (alpha, beta, gamma, rho)``, each of length ``n``.
    support : (float, float)
        Interval containing the orthogonality measure.
    """

    def __init__(self, name: str, params: Mapping, generator: Callable, support=(-1.0, 1.0)):
        self.name = name
        self.params = dict(params)
        self._gen = generator
        self.support = (float(support[0]), float(support[1]))
        self._cache: tuple[int, tuple] | None = None

    def __repr__(self):
        extra = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"Family({self.name}{', ' + extra if extra else ''})"

    def coefficients(self, n: int):
        """Coefficient arrays ``alpha, beta, gamma, rho`` of length ``n``."""
        if self._cache is None or self._cache[0] < n:
            size = max(n, 2 * (self._cache[0] if self._cache else 0), 16)
            tabs = tuple(np.asarray(t, dtype=np.float64) for t in self._gen(size))
            for t in tabs:
                t.setflags(write=False)
            self._cache = (size, tabs)
        return tuple(t[:n] for t in self._cache[1])

    def system(self, q: int, eta: float = 0.0) -> RecurrenceSystem:
        alpha, beta, gamma, rho = self.coefficients(q + 1)
        return RecurrenceSystem(q, alpha, beta, gamma[:q], rho, eta, family=self)

    def is_even(self, n: int = 64, tol: float = 1e-13) -> bool:
        """True when the measure is symmetric (all diagonal coefficients vanish)."""
        alpha, beta, gamma, rho = self.coefficients(n)
        scale = np.max(np.abs(beta / rho))
        return bool(np.max(np.abs(alpha / rho)) <= tol * scale)

    def to_json(self) -> dict:
        return {"family": self.name, "params": dict(self.params)}


def _from_monic(monic: Callable, point: float = 1.0):
    """Generator for the family ``Q_l / Q_l(point)`` built from monic coefficients.

    ``monic(n)`` returns ``A_0..A_n`` and ``B_0..B_n``.  With ``r_l = Q_{l+1}/Q_l``
    at ``point``, the normalized recurrence has ``rho = 1``, ``alpha = A``,
    ``beta_l = r_l`` and ``gamma_{l-1} = B_l / r_{l-1}``.
    """

    def gen(n):
        A, B = monic(n)
        r = np.empty(n)
        for l in range(n):
            r[l] = point - A[l] - (B[l] / r[l - 1] if l else 0.0)
            if not r[l] > 0:
                raise InputError(f"normalization point {point} is not right of the zeros of P_{l + 1}")
        return A[:n].copy(), r, B[1 : n + 1] / r, np.ones(n)

    return gen


def _jacobi_monic(a: float, b: float):
    def monic(n):
        k = np.arange(n + 1, dtype=np.float64)
        s = 2 * k + a + b
        A = np.empty(n + 1)
        B = np.empty(n + 1)
        A[0] = (b - a) / (a + b + 2)
        A[1:] = (b * b - a * a) / (s[1:] * (s[1:] + 2))
        B[0] = 1.0
        if n >= 1:
            B[1] = 4 * (1 + a) * (1 + b) / ((2 + a + b) ** 2 * (3 + a + b))
        kk, ss = k[2:], s[2:]
        B[2:] = 4 * kk * (kk + a) * (kk + b) * (kk + a + b) / (ss**2 * (ss + 1) * (ss - 1))
        return A, B

    return monic


def chebyshev_t() -> Family:
    """Chebyshev polynomials of the first kind, ``T_l(1) = 1``, weights ``d = (1, 2, 2, ...)``."""

    def gen(n):
        beta = np.full(n, 0.5)
        beta[0] = 1.0
        return np.zeros(n), beta, np.full(n, 0.5), np.ones(n)

    return Family("chebyshev-t", {}, gen)


def chebyshev_u() -> Family:
    """Chebyshev polynomials of the second kind in classical scaling, ``U_l(1) = l + 1``."""

    def gen(n):
        return np.zeros(n), np.full(n, 0.5), np.full(n, 0.5), np.ones(n)

    return Family("chebyshev-u", {}, gen)


def legendre() -> Family:
    """Legendre polynomials, ``(l+1) P_{l+1} = (2l+1) x P_l - l P_{l-1}``."""

    def gen(n):
        l = np.arange(n, dtype=np.float64)
        return np.zeros(n), (l + 1) / (2 * l + 1), (l + 1) / (2 * l + 3), np.ones(n)

    return Family("legendre", {}, gen)


def jacobi(a: float, b: float) -> Family:
    """Jacobi polynomials for ``(1-x)^a (1+x)^b``, normalized by ``P_l(1) = 1``."""
    a, b = float(a), float(b)
    if not (a > -1 and b > -1):
        raise InputError(f"Jacobi parameters must exceed -1, got a={a}, b={b}")
    return Family("jacobi", {"a": a, "b": b}, _from_monic(_jacobi_monic(a, b)))


def appendix_family(case: str) -> Family:
    """One of the four closed-form Jacobi cases ``(-1/2 + alpha, -1/2 + beta)``."""
    if case not in APPENDIX_CASES:
        raise InputError(f"unknown appendix case {case!r}; expected one of {sorted(APPENDIX_CASES)}")
    al, be = APPENDIX_CASES[case]
    gen = _from_monic(_jacobi_monic(-0.5 + al, -0.5 + be))
    return Family(f"appendix-{case}", {"case": case}, gen)


def normalized(family: Family, point: float = 1.0) -> Family:
    """The family rescaled so that every polynomial equals 1 at ``point``."""

    def monic(n):
        sys = family.system(n)
        return monic_coefficients(sys, n + 1)

    return Family(f"{family.name}/normalized", {**family.params, "point": point},
                  _from_monic(monic, point), family.support)


def christoffel(family: Family, z: float = -1.0, point: float = 1.0) -> Family:
    """Family orthogonal for ``(t - z) dmu``, normalized at ``point``.

    With ``r_0 = A_0 - z`` and ``r_k = A_k - z - B_k / r_{k-1}`` (so that
    ``r_k = -Q_{k+1}(z) / Q_k(z)``), the modified monic coefficients are
    ``A'_k = A_{k+1} + r_k - r_{k+1}`` and ``B'_k = B_k r_k / r_{k-1}``; this is
    the factor swap ``J - zI = LU -> UL + zI`` written out.
    """
    lo, hi = family.support
    if not z <= lo:
        raise InputError(f"modification point {z} must lie left of the support [{lo}, {hi}]")

    def monic(n):
        A, B = monic_coefficients(family.system(n + 1), n + 2)
        r = np.empty(n + 2)
        for k in range(n + 2):
            r[k] = A[k] - z - (B[k] / r[k - 1] if k else 0.0)
        A1 = A[1 : n + 2] + r[: n + 1] - r[1 : n + 2]
        B1 = np.empty(n + 1)
        B1[0] = r[0] * B[0]
        B1[1:] = B[1 : n + 1] * r[1 : n + 1] / r[:n]
        return A1, B1

    return Family(f"{family.name}/kernel", {**family.params, "z": z}, _from_monic(monic, point),
                  family.support)


def builtin_families() -> dict[str, Family]:
    """The seven families used throughout the tests and the acceptance battery."""
    fams = {"chebyshev-t": chebyshev_t(), "chebyshev-u": chebyshev_u(), "legendre": legendre()}
    for case in APPENDIX_CASES:
        fams[f"appendix-{case}"] = appendix_family(case)
    return fams


def family_from_spec(name: str, params: Mapping | None = None) -> Family:
    params = dict(params or {})
    simple = {"chebyshev-t": chebyshev_t, "chebyshev-u": chebyshev_u, "legendre": legendre}
    if name in simple:
        if params:
            raise InputError(f"family {name!r} takes no parameters, got {sorted(params)}")
        return simple[name]()
    if name == "jacobi":
        if set(params) != {"a", "b"}:
            raise InputError("jacobi family needs exactly the parameters 'a' and 'b'")
        return jacobi(params["a"], params["b"])
    if name == "appendix":
        if set(params) != {"case"}:
            raise InputError("appendix family needs exactly the parameter 'case'")
        return appendix_family(str(params["case"]))
    if name.startswith("appendix-") and not params:
        return appendix_family(name.split("-", 1)[1])
    raise InputError(f"unknown family {name!r}")


def _number(obj, key, kind=float):
    if key not in obj:
        raise InputError(f"missing field {key!r}")
    val = obj[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise InputError(f"field {key!r} must be a number")
    if kind is int:
        if int(val) != val:
            raise InputError(f"field {key!r} must be an integer")
        return int(val)
    return float(val)


def load_system(obj: Mapping) -> RecurrenceSystem:
    """Build a system from its JSON form.

    Two layouts are accepted::

        {"q": 2, "alpha": [...], "beta": [...], "gamma": [...], "rho": [...], "eta": 0}
        {"family": "chebyshev-t", "params": {}, "q": 2, "eta": 0}
    """
    if not isinstance(obj, Mapping):
        raise InputError("system description must be a JSON object")
    q = _number(obj, "q", int)
    eta = _number(obj, "eta") if "eta" in obj else 0.0
    if "family" in obj:
        extra = set(obj) - {"family", "params", "q", "eta"}
        if extra:
            raise InputError(f"unknown fields {sorted(extra)}")
        return family_from_spec(str(obj["family"]), obj.get("params")).system(q, eta)
    extra = set(obj) - {"q", "alpha", "beta", "gamma", "rho", "eta"}
    if extra:
        raise InputError(f"unknown fields {sorted(extra)}")
    try:
        tabs = {k: np.asarray(obj[k], dtype=np.float64) for k in ("alpha", "beta", "gamma", "rho")}
    except KeyError as exc:
        raise InputError(f"missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError):
        raise InputError("coefficient tables must be numeric arrays") from None
    return RecurrenceSystem(q, tabs["alpha"], tabs["beta"], tabs["gamma"], tabs["rho"], eta)
