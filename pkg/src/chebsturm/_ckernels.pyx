# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: Sturm bisection, recurrence sweeps, sign counts, subset determinants.

The pure-numpy twin lives in ``_pykernels`` and must keep identical semantics.
"""
import numpy as np

from libc.math cimport fabs, fmax, sqrt, INFINITY
from libc.float cimport DBL_EPSILON, DBL_MIN
from libc.stdlib cimport malloc, free

cdef int MAX_BISECT = 256


cdef inline Py_ssize_t _sturm(const double[::1] diag, const double[::1] off2,
                              double x, double pivmin) noexcept nogil:
    cdef Py_ssize_t i, n = diag.shape[0], cnt = 0
    cdef double d = diag[0] - x
    if fabs(d) < pivmin:
        d = -pivmin
    if d < 0:
        cnt += 1
    for i in range(1, n):
        d = diag[i] - x - off2[i - 1] / d
        if fabs(d) < pivmin:
            d = -pivmin
        if d < 0:
            cnt += 1
    return cnt


def sturm_count(const double[::1] diag, const double[::1] off2, double x):
    """Number of eigenvalues strictly below ``x`` of the symmetric tridiagonal matrix."""
    cdef double pivmin = DBL_MIN * fmax(1.0, _maxval(off2))
    return _sturm(diag, off2, x, pivmin)


cdef double _maxval(const double[::1] a) noexcept nogil:
    cdef double m = 0.0
    cdef Py_ssize_t i
    for i in range(a.shape[0]):
        if a[i] > m:
            m = a[i]
    return m


def gershgorin(const double[::1] diag, const double[::1] off2):
    cdef Py_ssize_t i, n = diag.shape[0]
    cdef double lo = INFINITY, hi = -INFINITY, r, left, right
    for i in range(n):
        r = 0.0
        if i > 0:
            r += sqrt(off2[i - 1])
        if i < n - 1:
            r += sqrt(off2[i])
        left = diag[i] - r
        right = diag[i] + r
        if left < lo:
            lo = left
        if right > hi:
            hi = right
    return lo, hi


def eigvals_bisect(const double[::1] diag, const double[::1] off2):
    """All eigenvalues in ascending order, each bisected to working precision."""
    cdef Py_ssize_t n = diag.shape[0], k, it
    cdef double glo, ghi, lo, hi, mid, tnorm, tol
    cdef double pivmin = DBL_MIN * fmax(1.0, _maxval(off2))
    glo, ghi = gershgorin(diag, off2)
    tnorm = fmax(fabs(glo), fabs(ghi))
    glo -= 2.0 * DBL_EPSILON * tnorm + pivmin
    ghi += 2.0 * DBL_EPSILON * tnorm + pivmin
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] res = out
    with nogil:
        for k in range(n):
            lo = glo
            hi = ghi
            for it in range(MAX_BISECT):
                tol = 2.0 * DBL_EPSILON * fmax(fabs(lo), fabs(hi)) + DBL_EPSILON * tnorm
                if hi - lo <= tol:
                    break
                mid = 0.5 * (lo + hi)
                if mid <= lo or mid >= hi:
                    break
                if _sturm(diag, off2, mid, pivmin) <= k:
                    lo = mid
                else:
                    hi = mid
            res[k] = 0.5 * (lo + hi)
    return out


def eval_polys_many(const double[::1] alpha, const double[::1] beta,
                    const double[::1] gamma, const double[::1] rho,
                    Py_ssize_t l_max, const double[::1] lams):
    """Table ``T[i, l] = P_l(lams[i])`` for ``l = 0..l_max`` by forward recurrence."""
    cdef Py_ssize_t i, l, m = lams.shape[0]
    out = np.empty((m, l_max + 1), dtype=np.float64)
    cdef double[:, ::1] t = out
    cdef double lam, prev, cur, nxt
    with nogil:
        for i in range(m):
            lam = lams[i]
            t[i, 0] = 1.0
            if l_max == 0:
                continue
            prev = 1.0
            cur = (lam * rho[0] - alpha[0]) * prev / beta[0]
            t[i, 1] = cur
            for l in range(1, l_max):
                nxt = (lam * rho[l] - alpha[l]) * cur / beta[l] - gamma[l - 1] * prev / beta[l]
                prev = cur
                cur = nxt
                t[i, l + 1] = cur
    return out


def oscillation_counts(const signed char[::1] s):
    """Return ``(N, N0, S_minus, S_plus)`` for a sign vector with entries in {-1, 0, 1}."""
    cdef Py_ssize_t n = s.shape[0], i, first = -1, last = -1, z
    cdef long n0 = 0, second = 0, sminus = 0, splus = 0
    cdef int diff
    for i in range(n):
        if s[i] == 0:
            n0 += 1
        elif i > 0 and s[i - 1] * s[i] < 0:
            second += 1
    if n0 == n:
        return n, n, 0, (n - 1 if n > 0 else 0)
    for i in range(n):
        if s[i] == 0:
            continue
        if first < 0:
            first = i
            splus += i
        else:
            diff = 1 if s[i] != s[last] else 0
            sminus += diff
            z = i - last - 1
            if (z + 1) % 2 == diff:
                splus += z + 1
            else:
                splus += z
        last = i
    splus += n - 1 - last
    return n0 + second, n0, sminus, splus


def splus_bruteforce(const signed char[::1] s):
    """Maximum sign changes over all +-1 fillings of the zero entries."""
    cdef Py_ssize_t n = s.shape[0], i, nz = 0
    cdef long mask, total, best = 0, ch
    cdef signed char *buf
    cdef Py_ssize_t *pos
    for i in range(n):
        if s[i] == 0:
            nz += 1
    if nz > 20:
        raise ValueError("brute force limited to 20 zeros")
    if n == 0:
        return 0
    buf = <signed char *> malloc(n * sizeof(signed char))
    pos = <Py_ssize_t *> malloc((nz + 1) * sizeof(Py_ssize_t))
    try:
        nz = 0
        for i in range(n):
            buf[i] = s[i]
            if s[i] == 0:
                pos[nz] = i
                nz += 1
        total = 1 << nz
        with nogil:
            for mask in range(total):
                for i in range(nz):
                    buf[pos[i]] = 1 if (mask >> i) & 1 else -1
                ch = 0
                for i in range(1, n):
                    if buf[i] != buf[i - 1]:
                        ch += 1
                if ch > best:
                    best = ch
    finally:
        free(buf)
        free(pos)
    return best


cdef double _lu_det(double *a, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j, k, p
    cdef double det = 1.0, piv, tmp, f
    for k in range(n):
        p = k
        piv = fabs(a[k * n + k])
        for i in range(k + 1, n):
            if fabs(a[i * n + k]) > piv:
                piv = fabs(a[i * n + k])
                p = i
        if piv == 0.0:
            return 0.0
        if p != k:
            for j in range(n):
                tmp = a[k * n + j]
                a[k * n + j] = a[p * n + j]
                a[p * n + j] = tmp
            det = -det
        det *= a[k * n + k]
        for i in range(k + 1, n):
            f = a[i * n + k] / a[k * n + k]
            for j in range(k + 1, n):
                a[i * n + j] -= f * a[k * n + j]
    return det


def det_sweep(const double[:, ::1] table, double det_tol):
    """Sweep every n-point subset in colex order; stop at the first near-zero determinant.

    Returns ``(ref_sign, min_abs, zero_witness, flip_witness, n_checked)`` where
    ``table`` has one row per function and one column per grid point.
    """
    cdef Py_ssize_t n = table.shape[0], npts = table.shape[1], i, j
    cdef long count = 0
    cdef int ref = 0, sgn
    cdef double det, a, min_abs = INFINITY
    cdef Py_ssize_t *idx
    cdef double *mat
    zero = None
    flip = None
    if n == 0 or n > npts:
        raise ValueError("need 1 <= n <= number of points")
    idx = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    mat = <double *> malloc(n * n * sizeof(double))
    try:
        for i in range(n):
            idx[i] = i
        while True:
            for i in range(n):
                for j in range(n):
                    mat[i * n + j] = table[j, idx[i]]
            det = _lu_det(mat, n)
            count += 1
            a = fabs(det)
            if a < min_abs:
                min_abs = a
            if a <= det_tol:
                zero = tuple([idx[i] for i in range(n)])
                break
            sgn = 1 if det > 0 else -1
            if ref == 0:
                ref = sgn
            elif sgn != ref and flip is None:
                flip = tuple([idx[i] for i in range(n)])
            i = 0
            while i < n - 1 and idx[i] + 1 == idx[i + 1]:
                i += 1
            if i == n - 1 and idx[i] + 1 >= npts:
                break
            idx[i] += 1
            for j in range(i):
                idx[j] = j
    finally:
        free(idx)
        free(mat)
    return ref, min_abs, zero, flip, count
