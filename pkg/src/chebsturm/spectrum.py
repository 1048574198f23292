"""Eigenvalues and eigenfunctions of the boundary-modified recurrence.

The zeros of ``P_{q+1} - eta P_q`` are the eigenvalues of the symmetrized
Jacobi matrix whose last diagonal entry is shifted by ``eta beta_q / rho_q``.
They are found by Sturm-count bisection and returned in descending order, and
the eigenfunction ``psi_k(nu) = P_nu(lambda_k)`` is tabulated on ``[0, q]``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import NumericalError
from .recurrence import (
    RecurrenceSystem,
    derive_weights,
    eval_polys_table,
    jacobi_matrix,
    zeros_of,
)

__all__ = [
    "Spectrum",
    "InterlacingReport",
    "compute_spectrum",
    "interlacing_check",
    "discrete_orthogonality_check",
]

RESIDUAL_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Spectrum of a system with its eigenfunction table.

    Attributes
    ----------
    system : RecurrenceSystem
    lambdas : ndarray, shape (q + 1,)
        Strictly descending eigenvalues.
    psi : ndarray, shape (q + 1, q + 1)
        ``psi[k - 1, nu] = P_nu(lambda_k)``.
    psi_next : ndarray, shape (q + 1,)
        ``P_{q+1}(lambda_k)``, kept for the boundary identity.
    residual : float
        Largest ``|P_{q+1} - eta P_q|`` at the eigenvalues relative to ``scale``.
    scale : float
        Sup of ``|P_{q+1} - eta P_q|`` sampled across the eigenvalue range.
    """

    system: RecurrenceSystem
    lambdas: np.ndarray
    psi: np.ndarray
    psi_next: np.ndarray
    residual: float
    scale: float

    @property
    def q(self) -> int:
        return self.system.q

    def eigenfunction(self, k: int) -> np.ndarray:
        """``psi_k`` for ``k = 1..q+1``."""
        if not 1 <= k <= self.q + 1:
            raise IndexError(f"eigenfunction index {k} outside [1, {self.q + 1}]")
        return self.psi[k - 1]

    def perturbed(self, delta: float) -> "Spectrum":
        """Copy with every eigenvalue shifted by ``delta``; used for fault injection."""
        lams = self.lambdas + delta
        tab = eval_polys_table(self.system, self.q + 1, lams)
        return Spectrum(self.system, lams, tab[:, : self.q + 1], tab[:, self.q + 1],
                        self.residual, self.scale)


def _ptilde_scale(sys: RecurrenceSystem, lambdas: np.ndarray) -> float:
    lo, hi = float(lambdas.min()), float(lambdas.max())
    pad = 0.05 * max(hi - lo, 1.0)
    t = np.cos(np.linspace(0.0, np.pi, 4 * sys.q + 9))
    grid = 0.5 * (lo + hi) + 0.5 * (hi - lo + 2 * pad) * t
    tab = eval_polys_table(sys, sys.q + 1, grid)
    return float(np.max(np.abs(tab[:, sys.q + 1] - sys.eta * tab[:, sys.q])))


def compute_spectrum(sys: RecurrenceSystem) -> Spectrum:
    """Zeros of ``P_{q+1} - eta P_q`` and the eigenfunction table.

    Raises
    ------
    NumericalError
        If the eigenvalues are not strictly descending or the residual
        ``|P_{q+1}(lambda_k) - eta P_q(lambda_k)|`` exceeds ``1e-8`` times the
        sampled sup of the perturbed polynomial.

    Examples
    --------
    >>> from chebsturm.families import chebyshev_t
    >>> lam = compute_spectrum(chebyshev_t().system(2)).lambdas
    >>> [round(float(x), 12) + 0.0 for x in lam]
    [0.866025403784, 0.0, -0.866025403784]
    """
    q = sys.q
    diag, off2 = jacobi_matrix(sys.alpha, sys.beta, sys.gamma, sys.rho, q + 1,
                               last_shift=sys.eta * sys.beta[q])
    lambdas = kernels.eigvals_bisect(diag, off2)[::-1].copy()
    if q > 0 and not np.all(np.diff(lambdas) < 0):
        raise NumericalError("eigenvalues are not strictly separated")
    tab = eval_polys_table(sys, q + 1, lambdas)
    psi, psi_next = tab[:, : q + 1], tab[:, q + 1]
    scale = _ptilde_scale(sys, lambdas)
    resid = np.abs(psi_next - sys.eta * psi[:, q])
    worst = float(np.max(resid)) / scale if scale > 0 else float(np.max(resid))
    if worst > RESIDUAL_TOL:
        k = int(np.argmax(resid)) + 1
        raise NumericalError(f"eigenvalue {k} residual {worst:.3e} exceeds {RESIDUAL_TOL:g}")
    for arr in (lambdas, psi, psi_next):
        arr.setflags(write=False)
    return Spectrum(sys, lambdas, psi, psi_next, worst, scale)


@dataclass(frozen=True)
class InterlacingReport:
    passed: bool
    violation: str | None = None


def _interlaces(outer: np.ndarray, inner: np.ndarray) -> bool:
    """Ascending ``outer`` (n + 1 values) strictly brackets each of ``inner`` (n values)."""
    return bool(np.all(outer[:-1] < inner) and np.all(inner < outer[1:]))


def interlacing_check(sys: RecurrenceSystem) -> InterlacingReport:
    """Strict interlacing of consecutive zero sets.

    Checks the zeros of ``P_{l-1}`` against those of ``P_l`` for ``l = 2..q``
    and the zeros of ``P_q`` against the spectrum of ``P_{q+1} - eta P_q``.
    """
    q = sys.q
    prev = zeros_of(sys, 1) if q >= 1 else np.empty(0)
    for l in range(2, q + 1):
        cur = zeros_of(sys, l)
        if not _interlaces(cur, prev):
            return InterlacingReport(False, f"zeros of P_{l - 1} do not interlace zeros of P_{l}")
        prev = cur
    if q >= 1:
        lams = np.sort(compute_spectrum(sys).lambdas)
        if not _interlaces(lams, prev):
            return InterlacingReport(False, f"zeros of P_{q} do not interlace the perturbed spectrum")
    return InterlacingReport(True)


def discrete_orthogonality_check(sys: RecurrenceSystem, spec: Spectrum) -> float:
    """Largest off-diagonal of the normalized ``d``-weighted Gram matrix of the ``psi_k``."""
    d = derive_weights(sys).d
    gram = (spec.psi * d) @ spec.psi.T
    norms = np.sqrt(np.diag(gram))
    corr = gram / np.outer(norms, norms)
    return float(np.max(np.abs(corr - np.eye(sys.q + 1))))
