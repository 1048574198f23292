"""Pure numpy fallback for the compiled kernels in ``_ckernels``.

Every function mirrors its compiled counterpart: same arguments, same return
shapes, same floating point operations wherever the order matters.
"""
from __future__ import annotations

import itertools

import numpy as np

_EPS = np.finfo(np.float64).eps
_TINY = np.finfo(np.float64).tiny
_MAX_BISECT = 256


def _pivmin(off2) -> float:
    return _TINY * max(1.0, float(np.max(off2, initial=0.0)))


def _sturm_vec(diag, off2, x, pivmin):
    d = diag[0] - x
    d = np.where(np.abs(d) < pivmin, -pivmin, d)
    cnt = (d < 0).astype(np.int64)
    for i in range(1, diag.shape[0]):
        d = diag[i] - x - off2[i - 1] / d
        d = np.where(np.abs(d) < pivmin, -pivmin, d)
        cnt += d < 0
    return cnt


def sturm_count(diag, off2, x):
    diag = np.asarray(diag, dtype=np.float64)
    off2 = np.asarray(off2, dtype=np.float64)
    return int(_sturm_vec(diag, off2, np.float64(x), _pivmin(off2)))


def gershgorin(diag, off2):
    diag = np.asarray(diag, dtype=np.float64)
    off = np.sqrt(np.asarray(off2, dtype=np.float64))
    r = np.zeros_like(diag)
    r[1:] += off
    r[:-1] += off
    return float(np.min(diag - r)), float(np.max(diag + r))


def eigvals_bisect(diag, off2):
    diag = np.ascontiguousarray(diag, dtype=np.float64)
    off2 = np.ascontiguousarray(off2, dtype=np.float64)
    n = diag.shape[0]
    pivmin = _pivmin(off2)
    glo, ghi = gershgorin(diag, off2)
    tnorm = max(abs(glo), abs(ghi))
    glo -= 2.0 * _EPS * tnorm + pivmin
    ghi += 2.0 * _EPS * tnorm + pivmin
    lo = np.full(n, glo)
    hi = np.full(n, ghi)
    k = np.arange(n)
    active = np.ones(n, dtype=bool)
    for _ in range(_MAX_BISECT):
        tol = 2.0 * _EPS * np.maximum(np.abs(lo), np.abs(hi)) + _EPS * tnorm
        mid = 0.5 * (lo + hi)
        active &= (hi - lo > tol) & (mid > lo) & (mid < hi)
        if not active.any():
            break
        go_up = _sturm_vec(diag, off2, mid, pivmin) <= k
        lo = np.where(active & go_up, mid, lo)
        hi = np.where(active & ~go_up, mid, hi)
    return 0.5 * (lo + hi)


def eval_polys_many(alpha, beta, gamma, rho, l_max, lams):
    lams = np.asarray(lams, dtype=np.float64)
    out = np.empty((lams.shape[0], l_max + 1))
    out[:, 0] = 1.0
    if l_max == 0:
        return out
    prev = np.ones_like(lams)
    cur = (lams * rho[0] - alpha[0]) * prev / beta[0]
    out[:, 1] = cur
    for l in range(1, l_max):
        nxt = (lams * rho[l] - alpha[l]) * cur / beta[l] - gamma[l - 1] * prev / beta[l]
        prev, cur = cur, nxt
        out[:, l + 1] = cur
    return out


def oscillation_counts(s):
    s = np.asarray(s, dtype=np.int8)
    n = s.shape[0]
    nz = np.flatnonzero(s)
    n0 = n - nz.size
    if nz.size == 0:
        return n, n, 0, max(n - 1, 0)
    second = int(np.count_nonzero(s[1:].astype(np.int64) * s[:-1] < 0))
    signs = s[nz]
    diff = (signs[1:] != signs[:-1]).astype(np.int64)
    gaps = np.diff(nz) - 1
    interior = np.where((gaps + 1) % 2 == diff, gaps + 1, gaps)
    splus = int(nz[0]) + int(interior.sum()) + (n - 1 - int(nz[-1]))
    return n0 + second, n0, int(diff.sum()), splus


def splus_bruteforce(s):
    s = np.asarray(s, dtype=np.int8)
    n = s.shape[0]
    pos = np.flatnonzero(s == 0)
    if pos.size > 20:
        raise ValueError("brute force limited to 20 zeros")
    if n == 0:
        return 0
    masks = np.arange(1 << pos.size, dtype=np.int64)
    best = 0
    for chunk in np.array_split(masks, max(1, masks.size // 65536)):
        fill = np.broadcast_to(s, (chunk.size, n)).copy()
        bits = (chunk[:, None] >> np.arange(pos.size)) & 1
        fill[:, pos] = np.where(bits == 1, 1, -1)
        best = max(best, int((fill[:, 1:] != fill[:, :-1]).sum(axis=1).max()))
    return best


def _colex(npts, n):
    idx = list(range(n))
    while True:
        yield tuple(idx)
        i = 0
        while i < n - 1 and idx[i] + 1 == idx[i + 1]:
            i += 1
        if i == n - 1 and idx[i] + 1 >= npts:
            return
        idx[i] += 1
        idx[:i] = range(i)


def det_sweep(table, det_tol, chunk=4096):
    table = np.asarray(table, dtype=np.float64)
    n, npts = table.shape
    if n == 0 or n > npts:
        raise ValueError("need 1 <= n <= number of points")
    ref, min_abs, zero, flip, count = 0, np.inf, None, None, 0
    gen = _colex(npts, n)
    while True:
        block = list(itertools.islice(gen, chunk))
        if not block:
            break
        sub = np.array(block)
        dets = np.linalg.det(table[:, sub].transpose(1, 2, 0))
        for subset, det in zip(block, dets):
            count += 1
            a = abs(float(det))
            min_abs = min(min_abs, a)
            if a <= det_tol:
                return ref, min_abs, subset, flip, count
            sgn = 1 if det > 0 else -1
            if ref == 0:
                ref = sgn
            elif sgn != ref and flip is None:
                flip = subset
    return ref, min_abs, zero, flip, count
