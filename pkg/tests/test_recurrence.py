from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import eval_jacobi, roots_jacobi

from chebsturm.errors import InputError
from chebsturm.families import (appendix_family, builtin_families, chebyshev_t, chebyshev_u, christoffel,
                                family_from_spec, jacobi, legendre, load_system, normalized)
from chebsturm.recurrence import (RecurrenceSystem, cd_kernel, derive_weights, eval_polys,
                                  eval_polys_table, eval_ptilde, gauss_quadrature, monic_coefficients,
                                  zeros_of)


def test_chebyshev_t_values_and_weights():
    sys = chebyshev_t().system(4)
    x = 0.3
    assert np.allclose(eval_polys(sys, 5, x), np.cos(np.arange(6) * np.arccos(x)))
    w = derive_weights(sys)
    assert np.allclose(w.d, [1, 2, 2, 2, 2])
    assert np.allclose(w.w, [1, 1, 1, 1, 1])


def test_chebyshev_u_classical_scaling():
    sys = chebyshev_u().system(5)
    assert np.allclose(eval_polys(sys, 6, 1.0), np.arange(1, 8))


def test_legendre_matches_scipy():
    sys = legendre().system(8)
    x = np.linspace(-1, 1, 9)
    ref = np.array([[eval_jacobi(l, 0, 0, t) for l in range(9)] for t in x])
    assert np.allclose(eval_polys_table(sys, 8, x), ref, atol=1e-13)
    assert np.allclose(derive_weights(sys).d, 2 * np.arange(9) + 1)


@pytest.mark.parametrize("a,b", [(0.5, 0.5), (-0.5, 0.5), (1.5, 0.0), (0.0, 2.0)])
def test_jacobi_zeros_match_scipy(a, b):
    sys = jacobi(a, b).system(12)
    ref, _ = roots_jacobi(9, a, b)
    assert np.max(np.abs(zeros_of(sys, 9) - ref)) < 1e-13


@pytest.mark.parametrize("name", sorted(builtin_families()))
def test_quadrature_is_exact_and_mass_is_one(name):
    sys = builtin_families()[name].system(10)
    quad = gauss_quadrature(sys, 8)
    assert quad.residual <= 1e-10
    assert quad.integrate(np.ones(8)) == pytest.approx(1.0 / sys.rho[0], abs=1e-13)


@pytest.mark.parametrize("case,params", [("i", (-0.5, -0.5)), ("ii", (-0.5, 0.5)),
                                          ("iii", (0.5, 0.5)), ("iv", (0.5, -0.5))])
def test_appendix_families_are_normalized_jacobi(case, params):
    sys = appendix_family(case).system(7)
    x = 0.37
    ref = np.array([eval_jacobi(l, *params, x) / eval_jacobi(l, *params, 1.0) for l in range(8)])
    assert np.allclose(eval_polys(sys, 7, x), ref, atol=1e-13)


def test_quadrature_agrees_with_scipy_gauss_jacobi():
    x, w = roots_jacobi(6, 0.5, 0.5)
    quad = gauss_quadrature(appendix_family("iii").system(6), 6)
    assert np.allclose(quad.nodes, x, atol=1e-14)
    assert np.allclose(quad.weights, w / w.sum(), atol=1e-14)


def test_monic_coefficients_total_mass():
    sys = RecurrenceSystem(2, [0, 0, 0], [1, 1, 1], [1, 1], [2.0, 2.0, 2.0])
    A, B = monic_coefficients(sys)
    assert B[0] == pytest.approx(0.5)
    assert np.allclose(A, 0)


def test_cd_kernel_closed_form_matches_sum():
    sys = legendre().system(6)
    d = derive_weights(sys).d
    x, y = 0.2, -0.7
    px, py = eval_polys(sys, 6, x), eval_polys(sys, 6, y)
    assert cd_kernel(sys, 5, x, y) == pytest.approx(np.sum(d[:6] * px[:6] * py[:6]), rel=1e-12)
    assert cd_kernel(sys, 5, x, x) == pytest.approx(np.sum(d[:6] * px[:6] ** 2), rel=1e-12)


def test_eval_ptilde_vanishes_at_spectrum():
    from chebsturm.spectrum import compute_spectrum

    sys = legendre().system(5, eta=0.3)
    assert np.max(np.abs(eval_ptilde(sys, compute_spectrum(sys).lambdas))) < 1e-12


def test_christoffel_family_is_orthogonal_for_modified_measure():
    base = chebyshev_t()
    K = christoffel(base, z=-1.0)
    quad = gauss_quadrature(base.system(20), 20)
    V = eval_polys_table(K.system(8), 8, quad.nodes)
    gram = (V * (quad.weights * (1 + quad.nodes))[:, None]).T @ V
    off = gram - np.diag(np.diag(gram))
    assert np.max(np.abs(off)) < 1e-13
    assert np.allclose(eval_polys(K.system(8), 8, 1.0), 1.0)


def test_kernel_of_even_measure_identity():
    T = chebyshev_t()
    K = christoffel(T, z=-1.0)
    t = np.array([-0.9, -0.3, 0.25, 0.8])
    U = eval_polys_table(T.system(10), 10, t)
    U1 = eval_polys_table(K.system(9), 9, t)
    assert np.allclose(U1, (U[:, :-1] + U[:, 1:]) / (1 + t)[:, None], atol=1e-13)


def test_normalized_family():
    F = normalized(chebyshev_u())
    assert np.allclose(eval_polys(F.system(6), 6, 1.0), 1.0)
    assert np.allclose(zeros_of(F.system(6), 5), zeros_of(chebyshev_u().system(6), 5))


def test_load_system_forms():
    sys = load_system({"family": "chebyshev-t", "params": {}, "q": 3, "eta": 0.5})
    assert sys.q == 3 and sys.eta == 0.5
    sys = load_system({"q": 1, "alpha": [0, 0], "beta": [1, 0.5], "gamma": [0.5], "rho": [1, 1]})
    assert sys.gamma.shape == (1,)
    assert family_from_spec("jacobi", {"a": 0.5, "b": 0.5}).params == {"a": 0.5, "b": 0.5}


@pytest.mark.parametrize("obj", [
    {"q": 1, "alpha": [0, 0], "beta": [1, 0.5], "gamma": [0.5, 1], "rho": [1, 1]},
    {"q": 1, "alpha": [0, 0], "beta": [1, -0.5], "gamma": [0.5], "rho": [1, 1]},
    {"q": 1, "alpha": [0, 0], "beta": [1, 0.5], "gamma": [0.5]},
    {"family": "chebyshev-t", "q": 2, "colour": "red"},
    {"family": "nope", "q": 2},
    {"family": "jacobi", "params": {"a": 0.5}, "q": 2},
    {"q": 1.5, "family": "legendre"},
    [1, 2],
])
def test_load_system_rejects_bad_input(obj):
    with pytest.raises(InputError):
        load_system(obj)


def test_custom_table_cannot_extend():
    sys = RecurrenceSystem(1, [0, 0], [1, 0.5], [0.5], [1, 1])
    with pytest.raises(InputError):
        gauss_quadrature(sys, 5)


@given(st.integers(1, 25), st.floats(-0.99, 0.99))
def test_forward_recurrence_matches_chebyshev_closed_form(n, x):
    vals = eval_polys(chebyshev_t().system(n), n, x)
    assert np.allclose(vals, np.cos(np.arange(n + 1) * np.arccos(x)), atol=1e-12)
