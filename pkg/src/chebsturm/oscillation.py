"""Zero and sign-change counts of functions on the integer grid ``[0, q]``.

A grid point ``nu`` is a zero of the first type when ``f(nu) = 0`` and of the
second type when ``f(nu - 1) f(nu) < 0``.  ``N`` counts both kinds and ``N0``
only the first.  ``S_minus`` and ``S_plus`` are the least and greatest number
of sign changes over all ways of giving the zero entries a sign.

Values with ``|f(nu)| <= sign_tol * max|f|`` are treated as exact zeros.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .errors import InputError
from .spectrum import Spectrum

__all__ = [
    "DiscreteFunction",
    "ZeroRun",
    "OscillationReport",
    "oscillation_report",
    "splus_bruteforce",
    "verify_theorem5",
    "verify_theorem6",
    "difference_inequalities",
    "backward_difference",
    "forward_difference",
]

DEFAULT_SIGN_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class DiscreteFunction:
    """Values ``f(0), ..., f(q)`` with the tolerance that decides exact zeros."""

    values: np.ndarray
    sign_tol: float = DEFAULT_SIGN_TOL

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64)
        if v.ndim != 1 or v.size == 0:
            raise InputError("a discrete function needs at least one value")
        if not np.all(np.isfinite(v)):
            raise InputError("function values must be finite")
        if not self.sign_tol >= 0:
            raise InputError("sign_tol must be non-negative")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def q(self) -> int:
        return self.values.size - 1

    def signs(self) -> np.ndarray:
        """Sign vector in {-1, 0, 1} after thresholding at ``sign_tol * max|f|``."""
        scale = float(np.max(np.abs(self.values)))
        s = np.sign(self.values).astype(np.int8)
        s[np.abs(self.values) <= self.sign_tol * scale] = 0
        return s


def _as_function(f, sign_tol=DEFAULT_SIGN_TOL) -> DiscreteFunction:
    return f if isinstance(f, DiscreteFunction) else DiscreteFunction(f, sign_tol)


@dataclass(frozen=True)
class ZeroRun:
    """A segment ``[start, end]`` of one of the four run types.

    1. consecutive strict sign changes, ``f(nu-1) f(nu) < 0`` for ``nu`` in ``(start, end]``;
    2. nonzero ends of equal sign enclosing an odd number of zeros;
    3. nonzero ends of opposite sign enclosing an even, positive number of zeros;
    4. a block of zeros that gains nothing under ``S_plus``: it touches the grid
       boundary, or has an odd length between opposite signs, or an even length
       between equal signs.

    Types 2 and 3 include their nonzero endpoints; type 4 covers only zeros.
    """

    type: int
    start: int
    end: int


@dataclass(frozen=True)
class OscillationReport:
    N: int
    N0: int
    S_minus: int
    S_plus: int
    zeros: list = field(default_factory=list)
    runs: list = field(default_factory=list)

    def counts(self) -> tuple[int, int, int]:
        return self.N, self.S_minus, self.S_plus


def _zero_list(s: np.ndarray) -> list[tuple[int, str]]:
    out = []
    for nu, v in enumerate(s):
        if v == 0:
            out.append((nu, "first"))
        elif nu > 0 and int(s[nu - 1]) * int(v) < 0:
            out.append((nu, "second"))
    return out


def _runs(s: np.ndarray) -> list[ZeroRun]:
    n = s.size
    nz = np.flatnonzero(s)
    runs: list[ZeroRun] = []
    if nz.size == 0:
        return [ZeroRun(4, 0, n - 1)]
    if nz[0] > 0:
        runs.append(ZeroRun(4, 0, int(nz[0]) - 1))
    start = None
    for a, b in zip(nz[:-1], nz[1:]):
        a, b = int(a), int(b)
        if b == a + 1:
            if s[a] != s[b]:
                start = a if start is None else start
                continue
            if start is not None:
                runs.append(ZeroRun(1, start, a))
                start = None
            continue
        if start is not None:
            runs.append(ZeroRun(1, start, a))
            start = None
        z = b - a - 1
        same = s[a] == s[b]
        if same and z % 2 == 1:
            runs.append(ZeroRun(2, a, b))
        elif not same and z % 2 == 0:
            runs.append(ZeroRun(3, a, b))
        else:
            runs.append(ZeroRun(4, a + 1, b - 1))
    if start is not None:
        runs.append(ZeroRun(1, start, int(nz[-1])))
    if nz[-1] < n - 1:
        runs.append(ZeroRun(4, int(nz[-1]) + 1, n - 1))
    return sorted(runs, key=lambda r: (r.start, r.end))


def oscillation_report(f, sign_tol: float = DEFAULT_SIGN_TOL) -> OscillationReport:
    """Counts, zero list and run classification for ``f``.

    ``f`` may be a :class:`DiscreteFunction` or a plain sequence.  An all-zero
    function has ``N = q + 1``, ``S_minus = 0`` and ``S_plus = q``.

    Examples
    --------
    >>> r = oscillation_report([1, 0, -1])
    >>> r.N, r.S_minus, r.S_plus
    (1, 1, 1)
    """
    f = _as_function(f, sign_tol)
    s = np.ascontiguousarray(f.signs())
    N, N0, sm, sp = kernels.oscillation_counts(s)
    return OscillationReport(int(N), int(N0), int(sm), int(sp), _zero_list(s), _runs(s))


def splus_bruteforce(f, sign_tol: float = DEFAULT_SIGN_TOL) -> int:
    """``S_plus`` by trying every sign for every zero (at most 20 zeros)."""
    f = _as_function(f, sign_tol)
    s = np.ascontiguousarray(f.signs())
    if np.count_nonzero(s == 0) > 20:
        raise InputError("brute-force S_plus is limited to 20 zeros")
    return int(kernels.splus_bruteforce(s))


@dataclass(frozen=True)
class EigenfunctionCountReport:
    """Counts ``(N, S_minus, S_plus)`` of each eigenfunction; all should equal ``k - 1``."""

    passed: bool
    counts: list
    first_failure: int | None


def verify_theorem5(spec: Spectrum, sign_tol: float = DEFAULT_SIGN_TOL) -> EigenfunctionCountReport:
    """Check that ``psi_k`` has exactly ``k - 1`` zeros and sign changes of every kind."""
    counts = []
    first = None
    for k in range(1, spec.q + 2):
        r = oscillation_report(DiscreteFunction(spec.psi[k - 1], sign_tol))
        counts.append(r.counts())
        if first is None and r.counts() != (k - 1,) * 3:
            first = k
    return EigenfunctionCountReport(first is None, counts, first)


@dataclass(frozen=True)
class CombinationCountReport:
    """``S_minus <= N <= S_plus`` bracketed by ``m - 1`` and ``n - 1``."""

    passed: bool
    m: int
    n: int
    S_minus: int
    N: int
    S_plus: int

    def chain(self) -> tuple[int, int, int, int, int]:
        return self.m - 1, self.S_minus, self.N, self.S_plus, self.n - 1


def verify_theorem6(spec: Spectrum, m: int, n: int, a, sign_tol: float = DEFAULT_SIGN_TOL) -> CombinationCountReport:
    """Counts of ``V = sum_{k=m}^{n} a_k psi_k`` against the bracket ``[m - 1, n - 1]``.

    ``a`` holds the ``n - m + 1`` coefficients of ``psi_m..psi_n`` and must not
    vanish identically.
    """
    if not 1 <= m <= n <= spec.q + 1:
        raise InputError(f"need 1 <= m <= n <= q+1, got m={m}, n={n}, q={spec.q}")
    a = np.asarray(a, dtype=np.float64)
    if a.shape != (n - m + 1,):
        raise InputError(f"expected {n - m + 1} coefficients, got shape {a.shape}")
    if not np.any(a != 0):
        raise InputError("coefficients vanish identically")
    V = a @ spec.psi[m - 1 : n]
    r = oscillation_report(DiscreteFunction(V, sign_tol))
    ok = m - 1 <= r.S_minus <= r.N <= r.S_plus <= n - 1
    return CombinationCountReport(ok, m, n, r.S_minus, r.N, r.S_plus)


def backward_difference(values) -> np.ndarray:
    """``f(nu) - f(nu - 1)`` on ``[0, q]`` with ``f(-1) = 0``."""
    v = np.asarray(values, dtype=np.float64)
    return np.diff(v, prepend=0.0)


def forward_difference(values, tail: float = 0.0) -> np.ndarray:
    """``f(nu + 1) - f(nu)`` on ``[0, q]`` with ``f(q + 1) = tail``."""
    v = np.asarray(values, dtype=np.float64)
    return np.diff(v, append=tail)


def difference_inequalities(f, tail: float | None = None,
                            sign_tol: float = DEFAULT_SIGN_TOL) -> dict:
    """Compare counts of ``f`` with those of its differences.

    The backward difference must not have fewer zeros or sign changes than
    ``f``.  The forward difference is checked only when ``tail``, the value
    ``f(q + 1)``, is given and equals 0; otherwise those entries are ``None``.

    Returns
    -------
    dict
        ``{"backward": {"N": bool, "S_minus": bool, "S_plus": bool},
        "forward": {...} or None, "passed": bool}``.
    """
    f = _as_function(f, sign_tol)
    base = oscillation_report(f)

    def compare(g):
        r = oscillation_report(DiscreteFunction(g, f.sign_tol))
        return {"N": r.N >= base.N, "S_minus": r.S_minus >= base.S_minus,
                "S_plus": r.S_plus >= base.S_plus}

    back = compare(backward_difference(f.values))
    fwd = compare(forward_difference(f.values, 0.0)) if tail is not None and tail == 0 else None
    passed = all(back.values()) and (fwd is None or all(fwd.values()))
    return {"backward": back, "forward": fwd, "passed": passed}
