from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.linalg import eigh_tridiagonal

from chebsturm.families import builtin_families, chebyshev_t, chebyshev_u, legendre
from chebsturm.recurrence import RecurrenceSystem, eval_polys_table, jacobi_matrix
from chebsturm.spectrum import compute_spectrum, discrete_orthogonality_check, interlacing_check


def test_chebyshev_t_three_point_spectrum():
    spec = compute_spectrum(chebyshev_t().system(2))
    assert np.allclose(spec.lambdas, [np.sqrt(3) / 2, 0.0, -np.sqrt(3) / 2], atol=1e-15)
    assert spec.residual <= 1e-12


def test_eta_zero_gives_zeros_of_next_polynomial():
    q = 7
    spec = compute_spectrum(chebyshev_u().system(q))
    ref = np.cos(np.pi * np.arange(1, q + 2) / (q + 2))
    assert np.max(np.abs(spec.lambdas - ref)) < 1e-14


@pytest.mark.parametrize("name", sorted(builtin_families()))
@pytest.mark.parametrize("eta", [0.0, 0.5, -2.0])
def test_eigenvalues_match_scipy(name, eta):
    sys = builtin_families()[name].system(15, eta=eta)
    diag, off2 = jacobi_matrix(sys.alpha, sys.beta, sys.gamma, sys.rho, 16, last_shift=eta * sys.beta[15])
    ref = eigh_tridiagonal(diag, np.sqrt(off2), eigvals_only=True)[::-1]
    spec = compute_spectrum(sys)
    assert np.max(np.abs(spec.lambdas - ref)) <= 1e-12 * max(1.0, np.max(np.abs(ref)))


def test_eigenfunctions_are_polynomial_values():
    sys = legendre().system(6, eta=0.25)
    spec = compute_spectrum(sys)
    assert spec.psi.shape == (7, 7)
    assert np.allclose(spec.psi, eval_polys_table(sys, 6, spec.lambdas), atol=1e-13)
    assert np.all(np.diff(spec.lambdas) < 0)


@pytest.mark.parametrize("name", sorted(builtin_families()))
def test_interlacing_and_discrete_orthogonality(name):
    sys = builtin_families()[name].system(12, eta=0.3)
    assert interlacing_check(sys).passed
    assert discrete_orthogonality_check(sys, compute_spectrum(sys)) <= 1e-10


def test_perturbed_spectrum_breaks_orthogonality():
    sys = legendre().system(8)
    spec = compute_spectrum(sys)
    assert discrete_orthogonality_check(sys, spec.perturbed(1e-3)) > 1e-6


@given(st.integers(1, 20), st.floats(-3, 3))
def test_spectrum_is_simple_and_real(q, eta):
    spec = compute_spectrum(legendre().system(q, eta=eta))
    assert spec.lambdas.shape == (q + 1,)
    assert np.all(np.diff(spec.lambdas) < 0)
    assert spec.residual <= 1e-10


@given(st.integers(2, 12), st.integers(0, 2**32 - 1))
def test_random_positive_recurrence(q, seed):
    rng = np.random.default_rng(seed)
    sys = RecurrenceSystem(q, rng.uniform(-0.5, 0.5, q + 1), rng.uniform(0.2, 1, q + 1),
                           rng.uniform(0.2, 1, q), rng.uniform(0.5, 2, q + 1))
    spec = compute_spectrum(sys)
    assert interlacing_check(sys).passed
    assert discrete_orthogonality_check(sys, spec) <= 1e-9
