"""Three-term recurrences and the quantities derived from them.

A :class:`RecurrenceSystem` stores the coefficient tables of

    gamma[l-1] P_{l-1} + alpha[l] P_l + beta[l] P_{l+1} = lam * rho[l] P_l,

with ``P_{-1} = 0`` and ``P_0 = 1``, on the grid ``l = 0..q``, together with the
boundary parameter ``eta`` that defines ``P_{q+1} - eta P_q``.  The forward
recurrence is evaluated as

    P_{l+1} = (lam rho[l] - alpha[l]) P_l / beta[l] - gamma[l-1] P_{l-1} / beta[l].

``gamma[-1]`` never multiplies anything because ``P_{-1} = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ._backend import kernels
from .errors import InputError, NumericalError

__all__ = [
    "RecurrenceSystem",
    "DerivedWeights",
    "Quadrature",
    "derive_weights",
    "eval_polys",
    "eval_polys_table",
    "eval_ptilde",
    "cd_kernel",
    "gauss_quadrature",
    "jacobi_matrix",
    "zeros_of",
    "monic_coefficients",
    "favard_window",
]


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class RecurrenceSystem:
    """Coefficient tables of a three-term recurrence on ``[0, q]``.

    Parameters
    ----------
    q : int
        Grid size; the tables cover ``l = 0..q``.
    alpha, beta, rho : array_like, length q + 1
    gamma : array_like, length q
        ``gamma[l]`` couples ``P_l`` into the equation for row ``l + 1``.
    eta : float
        Boundary parameter of ``P_{q+1} - eta P_q``.
    family : optional
        Generator the tables came from.  When present, evaluations beyond
        degree ``q + 1`` extend the tables analytically.
    """

    q: int
    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray
    rho: np.ndarray
    eta: float = 0.0
    family: Any = field(default=None, repr=False)

    def __post_init__(self):
        q = self.q
        if not isinstance(q, (int, np.integer)) or isinstance(q, bool) or q < 0:
            raise InputError(f"q must be a non-negative integer, got {q!r}")
        object.__setattr__(self, "q", int(q))
        for name, want in (("alpha", q + 1), ("beta", q + 1), ("gamma", q), ("rho", q + 1)):
            arr = _frozen(getattr(self, name))
            if arr.ndim != 1 or arr.shape[0] != want:
                raise InputError(f"{name} must have length {want} for q={q}, got shape {arr.shape}")
            if not np.all(np.isfinite(arr)):
                raise InputError(f"{name} contains non-finite entries")
            if name != "alpha" and np.any(arr <= 0):
                bad = int(np.flatnonzero(arr <= 0)[0])
                raise InputError(f"{name}[{bad}] = {arr[bad]!r} must be strictly positive")
            object.__setattr__(self, name, arr)
        eta = float(self.eta)
        if not np.isfinite(eta):
            raise InputError("eta must be finite")
        object.__setattr__(self, "eta", eta)

    def with_eta(self, eta: float) -> "RecurrenceSystem":
        return RecurrenceSystem(self.q, self.alpha, self.beta, self.gamma, self.rho, eta, self.family)

    def truncated(self, q: int) -> "RecurrenceSystem":
        """The same recurrence on the shorter grid ``[0, q]``."""
        if not 0 <= q <= self.q:
            raise InputError(f"cannot truncate q={self.q} to {q}")
        return RecurrenceSystem(q, self.alpha[: q + 1], self.beta[: q + 1], self.gamma[:q],
                                self.rho[: q + 1], self.eta, self.family)

    def tables(self, n_terms: int):
        """Coefficient arrays with at least ``n_terms`` rows, extending through the family."""
        if n_terms <= self.q + 1:
            return self.alpha, self.beta, self.gamma, self.rho
        if self.family is None:
            raise InputError(
                f"need {n_terms} recurrence rows but the custom table stops at q+1={self.q + 1}")
        return self.family.coefficients(n_terms)


@dataclass(frozen=True)
class DerivedWeights:
    """Weights attached to a recurrence.

    Attributes
    ----------
    d : orthogonality weights, ``d_l * int P_l^2 dmu = 1``.
    w : self-adjoint coupling ``beta_l d_l / rho_l``.
    c : diagonal ``(alpha_l + beta_l + gamma_{l-1}) d_l / rho_l`` with the
        ``gamma_{-1}`` term dropped.
    k : monic scale factors, ``P_l = Q_l / k_l``.
    A, B : monic recurrence ``Q_{l+1} = (lam - A_l) Q_l - B_l Q_{l-1}``,
        with ``B_0 = 1 / rho_0`` (the total mass).
    """

    d: np.ndarray
    w: np.ndarray
    c: np.ndarray
    k: np.ndarray
    A: np.ndarray
    B: np.ndarray


def _weights(alpha, beta, gamma, rho, n):
    """d, w, c, k, A, B for rows ``0..n-1`` using running ratios to avoid overflow."""
    d = np.empty(n)
    k = np.empty(n)
    ratio = 1.0
    kk = 1.0
    for l in range(n):
        if l > 0:
            ratio *= beta[l - 1] / gamma[l - 1]
            kk *= rho[l - 1] / beta[l - 1]
        d[l] = rho[l] * ratio
        k[l] = kk
    if not (np.all(np.isfinite(d)) and np.all(d > 0)):
        bad = int(np.flatnonzero(~(np.isfinite(d) & (d > 0)))[0])
        raise NumericalError(f"orthogonality weight d[{bad}] overflowed or underflowed")
    if not (np.all(np.isfinite(k)) and np.all(k > 0)):
        bad = int(np.flatnonzero(~(np.isfinite(k) & (k > 0)))[0])
        raise NumericalError(f"monic scale k[{bad}] overflowed or underflowed")
    a, b, r = alpha[:n], beta[:n], rho[:n]
    g_prev = np.concatenate(([0.0], gamma[: n - 1]))
    w = b * d / r
    c = (a + b + g_prev) * d / r
    A = a / r
    B = np.empty(n)
    B[0] = 1.0 / r[0]
    B[1:] = gamma[: n - 1] * beta[: n - 1] / (rho[: n - 1] * rho[1:n])
    return d, w, c, k, A, B


def derive_weights(sys: RecurrenceSystem) -> DerivedWeights:
    """Compute the weight sequences of ``sys`` for ``l = 0..q``.

    Examples
    --------
    >>> from chebsturm.families import chebyshev_t
    >>> derive_weights(chebyshev_t().system(3)).d
    array([1., 2., 2., 2.])
    """
    n = sys.q + 1
    return DerivedWeights(*(_frozen(x) for x in _weights(sys.alpha, sys.beta, sys.gamma, sys.rho, n)))


def monic_coefficients(sys: RecurrenceSystem, n_terms: int | None = None):
    """Monic recurrence coefficients ``(A, B)`` for rows ``0..n_terms-1``."""
    n = sys.q + 1 if n_terms is None else n_terms
    alpha, beta, gamma, rho = sys.tables(n)
    _, _, _, _, A, B = _weights(alpha, beta, gamma, rho, n)
    return A, B


def eval_polys_table(sys: RecurrenceSystem, l_max: int, lams) -> np.ndarray:
    """``T[i, l] = P_l(lams[i])`` for ``l = 0..l_max``."""
    if l_max < 0:
        raise InputError("l_max must be non-negative")
    lams = np.ascontiguousarray(np.atleast_1d(np.asarray(lams, dtype=np.float64)))
    if not np.all(np.isfinite(lams)):
        raise InputError("evaluation points must be finite")
    n = max(l_max, 1)
    return kernels.eval_polys_many(*_contiguous(*sys.tables(n), n), int(l_max), lams)


def _contiguous(alpha, beta, gamma, rho, n):
    """Kernel-ready copies of rows ``0..n-1``; the kernels need a non-empty gamma."""
    g = gamma[: n - 1] if n > 1 else np.zeros(1)
    return tuple(np.ascontiguousarray(x, dtype=np.float64) for x in (alpha[:n], beta[:n], g, rho[:n]))


def eval_polys(sys: RecurrenceSystem, l_max: int, lam: float) -> np.ndarray:
    """Values ``P_0(lam), ..., P_{l_max}(lam)`` by forward recurrence.

    Examples
    --------
    >>> from chebsturm.families import chebyshev_t
    >>> eval_polys(chebyshev_t().system(2), 2, 0.5)
    array([ 1. ,  0.5, -0.5])
    """
    return eval_polys_table(sys, l_max, [lam])[0]


def eval_ptilde(sys: RecurrenceSystem, lam) -> np.ndarray | float:
    """The perturbed polynomial ``P_{q+1}(lam) - eta P_q(lam)``."""
    scalar = np.ndim(lam) == 0
    t = eval_polys_table(sys, sys.q + 1, lam)
    out = t[:, sys.q + 1] - sys.eta * t[:, sys.q]
    return float(out[0]) if scalar else out


def cd_kernel(sys: RecurrenceSystem, l: int, x: float, y: float) -> float:
    """Christoffel-Darboux kernel ``sum_{s<=l} d_s P_s(x) P_s(y)``.

    Uses the closed two-term form unless ``x`` and ``y`` are within
    ``1e-8 (1 + |x|)`` of each other, where it falls back to the direct sum.
    """
    if not 0 <= l <= sys.q:
        raise InputError(f"kernel index l={l} outside [0, {sys.q}]")
    if not (np.isfinite(x) and np.isfinite(y)):
        raise InputError("kernel arguments must be finite")
    px, py = eval_polys_table(sys, l + 1, [x, y])
    d = derive_weights(sys).d
    if abs(x - y) < 1e-8 * (1.0 + abs(x)):
        return float(np.sum(d[: l + 1] * px[: l + 1] * py[: l + 1]))
    w_l = sys.beta[l] * d[l] / sys.rho[l]
    return float(w_l * (px[l + 1] * py[l] - px[l] * py[l + 1]) / (x - y))


def jacobi_matrix(alpha, beta, gamma, rho, n, last_shift=0.0):
    """Diagonal and squared off-diagonal of the symmetrized ``n x n`` Jacobi matrix.

    ``last_shift`` is added to the numerator of the last diagonal entry; the
    perturbed spectrum uses ``eta * beta[n-1]``.
    """
    diag = np.array(alpha[:n], dtype=np.float64) / rho[:n]
    diag[n - 1] = (alpha[n - 1] + last_shift) / rho[n - 1]
    off2 = np.asarray(gamma[: n - 1] * beta[: n - 1] / (rho[: n - 1] * rho[1:n]), dtype=np.float64)
    return np.ascontiguousarray(diag), np.ascontiguousarray(off2)


def zeros_of(sys: RecurrenceSystem, degree: int) -> np.ndarray:
    """Zeros of ``P_degree`` in ascending order."""
    if degree < 1:
        return np.empty(0)
    alpha, beta, gamma, rho = sys.tables(degree)
    return kernels.eigvals_bisect(*jacobi_matrix(alpha, beta, gamma, rho, degree))


@dataclass(frozen=True)
class Quadrature:
    """Gauss rule for the orthogonality measure, total mass ``1 / rho_0``."""

    nodes: np.ndarray
    weights: np.ndarray
    residual: float

    def integrate(self, values) -> float:
        return float(np.dot(self.weights, values))


def gauss_quadrature(sys: RecurrenceSystem, n_nodes: int, check: bool = True) -> Quadrature:
    """Gauss rule with ``n_nodes`` points, exact for degree ``2 n_nodes - 1``.

    The nodes are the zeros of ``P_{n_nodes}`` (Jacobi-matrix eigenvalues found
    by Sturm bisection) and the weights are Christoffel numbers
    ``1 / sum_{l<n} d_l P_l(x)^2``.  Custom tables support at most ``q + 1``
    nodes; builtin families extend analytically.

    Raises
    ------
    NumericalError
        If the discrete orthogonality residual ``|d_l sum w P_l P_m - delta|``
        exceeds ``1e-10``.
    """
    n = int(n_nodes)
    if n < 1:
        raise InputError("n_nodes must be at least 1")
    alpha, beta, gamma, rho = sys.tables(n)
    nodes = kernels.eigvals_bisect(*jacobi_matrix(alpha, beta, gamma, rho, n))
    if n > 1 and not np.all(np.diff(nodes) > 0):
        raise NumericalError("quadrature nodes are not strictly increasing")
    d = _weights(alpha, beta, gamma, rho, n)[0]
    vals = kernels.eval_polys_many(*_contiguous(alpha, beta, gamma, rho, n), n - 1, nodes)
    weights = 1.0 / (vals**2 @ d)
    residual = 0.0
    if check:
        gram = (vals * weights[:, None]).T @ vals * d[:, None]
        residual = float(np.max(np.abs(gram - np.eye(n))))
        if residual > 1e-10:
            raise NumericalError(f"quadrature orthogonality residual {residual:.3e} exceeds 1e-10")
    return Quadrature(_frozen(nodes), _frozen(weights), residual)


def favard_window(sys: RecurrenceSystem) -> dict:
    """Finite-window boundedness report for the monic coefficients."""
    A, B = monic_coefficients(sys)
    return {"max_abs_A": float(np.max(np.abs(A))), "max_B": float(np.max(B[1:])) if sys.q else 0.0}
