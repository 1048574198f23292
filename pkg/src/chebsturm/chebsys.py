"""Determinant certificates for discrete Chebyshev systems.

A :class:`SystemTable` holds ``n`` functions sampled on ``[0, q]``.  The
collocation determinant of a point set ``nu_1 < ... < nu_n`` is
``det(phi_j(nu_i))`` with rows indexed by points.  The system is a
``T_Z``-system when every such determinant is nonzero with one common sign,
and only ``T_0`` when they are nonzero but of mixed sign.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from ._backend import kernels
from .errors import BudgetExceeded, InputError
from .spectrum import Spectrum

__all__ = [
    "SystemTable",
    "TSystemCertificate",
    "gram_det",
    "det_tolerance",
    "certify",
    "refute",
    "dual_functional",
    "bordered_det",
    "lemma14_check",
    "monomial_table",
    "psi_table",
    "t0_counterexample_table",
]

DET_TOL_REL = 1e-10
SUBSET_BUDGET = 2_000_000


@dataclass(frozen=True, eq=False)
class SystemTable:
    """Function values ``table[k, nu] = phi_{k+1}(nu)`` for ``n`` functions on ``[0, q]``."""

    table: np.ndarray

    def __post_init__(self):
        t = np.array(self.table, dtype=np.float64)
        if t.ndim != 2 or t.shape[0] == 0:
            raise InputError("system table must be a non-empty 2-D array")
        if t.shape[0] > t.shape[1]:
            raise InputError(f"{t.shape[0]} functions cannot be independent on {t.shape[1]} points")
        if not np.all(np.isfinite(t)):
            raise InputError("system table contains non-finite values")
        t = np.ascontiguousarray(t)
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def n(self) -> int:
        return self.table.shape[0]

    @property
    def q(self) -> int:
        return self.table.shape[1] - 1

    def rank(self) -> int:
        return int(np.linalg.matrix_rank(self.table))

    def evaluate(self, coeffs) -> np.ndarray:
        """Values of ``sum_k coeffs[k] phi_k`` on the grid."""
        return np.asarray(coeffs, dtype=np.float64) @ self.table


def monomial_table(q: int, n: int) -> SystemTable:
    """``1, nu, ..., nu^{n-1}`` on ``[0, q]``."""
    nu = np.arange(q + 1, dtype=np.float64)
    return SystemTable(nu[None, :] ** np.arange(n)[:, None])


def psi_table(spec: Spectrum, n: int | None = None, first: int = 1) -> SystemTable:
    """Eigenfunctions ``psi_first .. psi_{first+n-1}`` of a spectrum."""
    n = spec.q + 2 - first if n is None else n
    if not (1 <= first and first + n - 1 <= spec.q + 1 and n >= 1):
        raise InputError(f"eigenfunction range {first}..{first + n - 1} outside [1, {spec.q + 1}]")
    return SystemTable(spec.psi[first - 1 : first - 1 + n])


def t0_counterexample_table(q: int) -> SystemTable:
    """The ``q``-function system that is ``T_0`` but not ``T_Z`` on ``[0, q]``.

    ``phi_k = delta_{k-1} + delta_q`` for ``k < q`` and
    ``phi_q = delta_{q-1} - delta_q``.
    """
    if q < 2:
        raise InputError("the counterexample needs q >= 2")
    t = np.zeros((q, q + 1))
    for k in range(1, q):
        t[k - 1, k - 1] = 1.0
        t[k - 1, q] = 1.0
    t[q - 1, q - 1] = 1.0
    t[q - 1, q] = -1.0
    return SystemTable(t)


def _points(S: SystemTable, nu, count: int) -> np.ndarray:
    nu = np.asarray(nu)
    if nu.shape != (count,) or not np.issubdtype(nu.dtype, np.integer):
        raise InputError(f"expected {count} integer points, got {nu!r}")
    if count > 1 and not np.all(np.diff(nu) > 0):
        raise InputError("points must be strictly increasing")
    if nu.size and (nu[0] < 0 or nu[-1] > S.q):
        raise InputError(f"points must lie in [0, {S.q}]")
    return nu


def gram_det(S: SystemTable, nu) -> float:
    """``det(phi_j(nu_i))`` for ``n`` strictly increasing points."""
    nu = _points(S, nu, S.n)
    return float(np.linalg.det(S.table[:, nu].T))


def det_tolerance(S: SystemTable, rel: float = DET_TOL_REL) -> float:
    """``rel`` times the product of the function norms, a Hadamard bound on every minor."""
    return rel * float(np.prod(np.linalg.norm(S.table, axis=1)))


@dataclass(frozen=True)
class TSystemCertificate:
    """Outcome of a full determinant sweep.

    ``kind`` is ``"T_Z"``, ``"T0_only"`` or ``"neither"``.  ``common_sign`` is
    the sign shared by all determinants when ``kind == "T_Z"``.  ``witness`` is
    a point subset with a near-zero or opposite-sign determinant and is present
    exactly when ``kind != "T_Z"``.
    """

    kind: str
    common_sign: int | None
    min_abs_det: float
    witness: tuple | None
    subsets_checked: int
    det_tol: float


def certify(S: SystemTable, budget: int = SUBSET_BUDGET, rel_tol: float = DET_TOL_REL) -> TSystemCertificate:
    """Sweep all ``n``-point subsets in colex order and classify the system.

    The sweep stops early at the first determinant with ``|det| <= det_tol``.

    Raises
    ------
    BudgetExceeded
        When ``C(q + 1, n)`` exceeds ``budget``; use :func:`refute` instead.

    Examples
    --------
    >>> certify(monomial_table(4, 2)).kind
    'T_Z'
    >>> certify(t0_counterexample_table(3)).kind
    'T0_only'
    """
    total = comb(S.q + 1, S.n)
    if total > budget:
        raise BudgetExceeded(f"{total} subsets exceed the budget of {budget}; sample with refute()")
    tol = det_tolerance(S, rel_tol)
    if S.rank() < S.n:
        return TSystemCertificate("neither", None, 0.0, tuple(range(S.n)), 0, tol)
    ref, min_abs, zero, flip, count = kernels.det_sweep(S.table, tol)
    if zero is not None:
        return TSystemCertificate("neither", None, float(min_abs), tuple(int(i) for i in zero), int(count), tol)
    if flip is not None:
        return TSystemCertificate("T0_only", None, float(min_abs), tuple(int(i) for i in flip), int(count), tol)
    return TSystemCertificate("T_Z", int(ref), float(min_abs), None, int(count), tol)


def refute(S: SystemTable, samples: int, rng=None, rel_tol: float = DET_TOL_REL) -> TSystemCertificate | None:
    """Random-subset search for a counterexample; never certifies.

    Returns a ``T0_only``/``neither`` certificate with its witness, or ``None``
    when no violation turned up among ``samples`` subsets.
    """
    rng = np.random.default_rng(rng)
    tol = det_tolerance(S, rel_tol)
    ref = 0
    flip = None
    min_abs = np.inf
    for _ in range(samples):
        nu = np.sort(rng.choice(S.q + 1, size=S.n, replace=False))
        det = float(np.linalg.det(S.table[:, nu].T))
        min_abs = min(min_abs, abs(det))
        if abs(det) <= tol:
            return TSystemCertificate("neither", None, min_abs, tuple(int(i) for i in nu), samples, tol)
        sgn = 1 if det > 0 else -1
        ref = ref or sgn
        if sgn != ref and flip is None:
            flip = tuple(int(i) for i in nu)
    if flip is not None:
        return TSystemCertificate("T0_only", None, min_abs, flip, samples, tol)
    return None


def dual_functional(S: SystemTable, nu) -> np.ndarray:
    """Weights ``lambda_i`` on ``n + 1`` points annihilating every ``phi_k``.

    ``lambda_i = (-1)^i det(phi_j(nu_l))_{l != i}``, scaled so that
    ``max |lambda_i| = 1``.

    Examples
    --------
    >>> dual_functional(monomial_table(2, 2), [0, 1, 2])
    array([-0.5,  1. , -0.5])
    """
    nu = _points(S, nu, S.n + 1)
    M = S.table[:, nu].T
    lam = np.empty(S.n + 1)
    for i in range(S.n + 1):
        lam[i] = (-1) ** (i + 1) * np.linalg.det(np.delete(M, i, axis=0))
    top = np.max(np.abs(lam))
    if top <= det_tolerance(S):
        raise InputError(f"all cofactors vanish on points {tuple(int(x) for x in nu)}")
    return lam / top


def bordered_det(S: SystemTable, nu: int, nus) -> float:
    """Determinant with rows at ``nu_m, ..., nu_1, nu`` for ``m + 1`` functions.

    ``nus`` lists ``nu_1 < ... < nu_m`` in increasing order; the matrix rows run
    through them in reverse and end with the free point ``nu``.
    """
    m = S.n - 1
    nus = np.asarray(nus)
    if nus.shape != (m,):
        raise InputError(f"expected {m} fixed points for {S.n} functions")
    if m > 1 and not np.all(np.diff(nus) > 0):
        raise InputError("fixed points must be strictly increasing")
    if m and (nus[0] < 1 or nus[-1] > S.q):
        raise InputError(f"fixed points must lie in [1, {S.q}]")
    if not 0 <= nu <= S.q:
        raise InputError(f"free point must lie in [0, {S.q}]")
    rows = np.concatenate((nus[::-1], [nu])).astype(int)
    return float(np.linalg.det(S.table[:, rows].T))


@dataclass(frozen=True)
class SignLawReport:
    """Sign law ``sign D(nu) = sign D(0, q-m+1..q) * sign prod_j (nu_j - nu)``."""

    passed: bool
    trials: int
    failure: tuple | None


def lemma14_check(S: SystemTable, trials: int, rng=None) -> SignLawReport:
    """Random checks of the sign law of bordered determinants.

    ``S`` holds ``m + 1`` functions forming a ``T_Z``-system.  Determinants
    with the free point among the fixed ones must vanish; all others carry the
    sign predicted by the reference determinant at ``(0, q-m+1, ..., q)``.
    """
    rng = np.random.default_rng(rng)
    m, q = S.n - 1, S.q
    if m < 1 or m > q:
        raise InputError(f"need 1 <= m <= q, got m={m}, q={q}")
    tol = det_tolerance(S)
    ref = bordered_det(S, 0, np.arange(q - m + 1, q + 1))
    if abs(ref) <= tol:
        return SignLawReport(False, 0, (0, tuple(range(q - m + 1, q + 1))))
    for t in range(trials):
        nus = np.sort(rng.choice(np.arange(1, q + 1), size=m, replace=False))
        nu = int(rng.integers(0, q + 1))
        D = bordered_det(S, nu, nus)
        expect = np.sign(ref) * np.sign(np.prod(nus - nu))
        ok = abs(D) <= tol if expect == 0 else (abs(D) > tol and np.sign(D) == expect)
        if not ok:
            return SignLawReport(False, t + 1, (nu, tuple(int(x) for x in nus)))
    return SignLawReport(True, trials, None)
