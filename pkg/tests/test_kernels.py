from __future__ import annotations

import os

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chebsturm import _pykernels
from chebsturm._backend import BACKEND, kernels
from chebsturm.recurrence import jacobi_matrix

ck = pytest.importorskip("chebsturm._ckernels")
BACKENDS = [ck, _pykernels]


@pytest.mark.skipif(bool(os.environ.get("CHEBSTURM_PURE_PYTHON")), reason="fallback forced")
def test_default_backend_is_compiled_when_built():
    assert BACKEND == "cython"
    assert kernels is ck


def _random_tridiag(rng, n):
    diag = np.ascontiguousarray(rng.uniform(-1, 1, n))
    off2 = np.ascontiguousarray(rng.uniform(0.01, 1, n - 1))
    return diag, off2


@pytest.mark.parametrize("n", [1, 2, 5, 40])
def test_eigvals_match_dense_solver(n):
    rng = np.random.default_rng(n)
    diag, off2 = _random_tridiag(rng, n)
    T = np.diag(diag) + np.diag(np.sqrt(off2), 1) + np.diag(np.sqrt(off2), -1)
    ref = np.linalg.eigvalsh(T)
    for k in BACKENDS:
        assert np.max(np.abs(k.eigvals_bisect(diag, off2) - ref)) < 1e-13


def test_eigvals_backends_agree_exactly_on_chebyshev():
    diag, off2 = jacobi_matrix(np.zeros(30), np.full(30, 0.5), np.full(29, 0.5), np.ones(30), 30)
    a, b = ck.eigvals_bisect(diag, off2), _pykernels.eigvals_bisect(diag, off2)
    assert np.max(np.abs(a - b)) <= 1e-15


def test_sturm_count_and_gershgorin():
    diag = np.array([0.0, 0.0, 0.0])
    off2 = np.array([0.5, 0.5])
    for k in BACKENDS:
        assert k.sturm_count(diag, off2, 0.5) == 2
        assert k.sturm_count(diag, off2, -2.0) == 0
        lo, hi = k.gershgorin(diag, off2)
        assert lo <= -1.0 and hi >= 1.0


def test_eval_polys_many_parity():
    rng = np.random.default_rng(3)
    n = 12
    alpha = rng.uniform(-0.2, 0.2, n)
    beta = rng.uniform(0.3, 1, n)
    gamma = rng.uniform(0.3, 1, n - 1)
    rho = rng.uniform(0.5, 1.5, n)
    lams = rng.uniform(-1, 1, 7)
    a = ck.eval_polys_many(alpha, beta, gamma, rho, n - 1, lams)
    b = _pykernels.eval_polys_many(alpha, beta, gamma, rho, n - 1, lams)
    assert a.shape == (7, n)
    assert np.allclose(a, b, rtol=1e-14, atol=1e-14)


signs = st.lists(st.sampled_from([-1, 0, 1]), min_size=1, max_size=14)


@given(signs)
def test_oscillation_counts_parity(s):
    arr = np.array(s, dtype=np.int8)
    assert tuple(ck.oscillation_counts(arr)) == tuple(_pykernels.oscillation_counts(arr))


@given(signs)
def test_splus_bruteforce_parity(s):
    arr = np.array(s, dtype=np.int8)
    assert ck.splus_bruteforce(arr) == _pykernels.splus_bruteforce(arr)


@pytest.mark.parametrize("seed", range(5))
def test_det_sweep_parity(seed):
    rng = np.random.default_rng(seed)
    table = np.ascontiguousarray(rng.standard_normal((3, 8)))
    a = ck.det_sweep(table, 1e-12)
    b = _pykernels.det_sweep(table, 1e-12)
    assert a[0] == b[0]
    assert a[4] == b[4]
    assert (a[2] is None) == (b[2] is None) and (a[3] is None) == (b[3] is None)
    if a[3] is not None:
        assert tuple(a[3]) == tuple(b[3])
    assert a[1] == pytest.approx(b[1], rel=1e-10)


def test_det_sweep_early_exit_on_zero():
    table = np.ascontiguousarray(np.array([[1.0, 1.0, 2.0, 3.0], [1.0, 1.0, 0.0, 1.0]]))
    for k in BACKENDS:
        ref, min_abs, zero, flip, count = k.det_sweep(table, 1e-12)
        assert tuple(zero) == (0, 1)
        assert count == 1
