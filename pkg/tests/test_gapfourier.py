from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chebsturm.errors import InputError
from chebsturm.families import builtin_families, chebyshev_t, legendre
from chebsturm.gapfourier import (classify_and_verify, determinant_crosscheck, eta_b, gap_expand,
                                  ptilde_derivative)
from chebsturm.recurrence import RecurrenceSystem, derive_weights, eval_polys_table
from chebsturm.spectrum import compute_spectrum


def test_smallest_chebyshev_case():
    g = gap_expand(chebyshev_t().system(1), m=0)
    assert np.allclose(g.coefficients, [np.sqrt(2), 1.0], atol=1e-14)
    assert g.route_gap <= 1e-12


def _direct_expansion(sys, m):
    """Quotient values at Gauss nodes, projected with an independent quadrature."""
    spec = compute_spectrum(sys)
    from chebsturm.recurrence import gauss_quadrature

    quad = gauss_quadrature(sys, sys.q + 2)
    t = quad.nodes
    P = eval_polys_table(sys, sys.q + 1, t)
    num = P[:, sys.q + 1] - sys.eta * P[:, sys.q]
    den = np.prod(t[:, None] - spec.lambdas[None, : m + 1], axis=1)
    return (P[:, : sys.q - m + 1] * (quad.weights * num / den)[:, None]).sum(axis=0)


@pytest.mark.parametrize("name", sorted(builtin_families()))
@pytest.mark.parametrize("eta", [0.0, 0.5, -3.0])
def test_expansion_matches_direct_projection(name, eta):
    sys = builtin_families()[name].system(8, eta=eta)
    for m in (0, 2, 5):
        g = gap_expand(sys, m=m)
        assert g.coefficients.size == 8 - m + 1
        ref = _direct_expansion(sys, m)
        assert np.max(np.abs(g.coefficients - ref)) <= 1e-9 * np.max(np.abs(ref))


@given(st.integers(1, 20), st.sampled_from([0.0, 0.5, -0.5, 2.0, -3.0]), st.data())
def test_two_routes_agree(q, eta, data):
    m = data.draw(st.integers(0, q))
    sys = legendre().system(q, eta=eta)
    assert gap_expand(sys, m=m).route_gap <= 1e-8


def test_ptilde_derivative_by_finite_difference():
    sys = legendre().system(5, eta=0.3)
    x = np.array([0.1, 0.6])
    h = 1e-6

    def ptilde(t):
        P = eval_polys_table(sys, 6, t)
        return P[:, 6] - 0.3 * P[:, 5]

    fd = (ptilde(x + h) - ptilde(x - h)) / (2 * h)
    assert np.allclose(ptilde_derivative(sys, x), fd, rtol=1e-7)


def test_eta_b_puts_top_eigenvalue_at_endpoint():
    sys = legendre().system(6)
    eb = eta_b(sys)
    spec = compute_spectrum(legendre().system(6, eta=eb))
    assert spec.lambdas[0] == pytest.approx(1.0, abs=1e-12)


def test_eta_b_validation():
    sys = legendre().system(4)
    with pytest.raises(InputError):
        eta_b(sys, b=0.5)
    custom = RecurrenceSystem(1, [0, 0], [1, 0.5], [0.5], [1, 1])
    with pytest.raises(InputError):
        eta_b(custom)


@pytest.mark.parametrize("name", sorted(builtin_families()))
def test_ratio_verdicts_follow_eta(name):
    F = builtin_families()[name]
    q = 8
    eb = eta_b(F.system(q))
    for eta, case, expected in [(eb - 0.5, "a", "strictly_decreasing"),
                                (eb, "b", "all_equal"),
                                (eb + 0.5, "c", "strictly_increasing")]:
        sys = F.system(q, eta=eta)
        c = classify_and_verify(gap_expand(sys, m=0), sys)
        assert c.case == case and c.verdict == expected and c.consistent
    sys = F.system(q, eta=eb + 0.5)
    c = classify_and_verify(gap_expand(sys, m=2), sys)
    assert c.case == "a" and c.verdict == "strictly_decreasing"


def test_determinant_crosscheck_detects_wrong_spectrum():
    sys = legendre().system(8, eta=0.2)
    for m in (1, 3):
        assert determinant_crosscheck(sys, m=m)["passed"]
    bad = compute_spectrum(sys).perturbed(1e-3)
    assert not determinant_crosscheck(sys, bad, m=2)["passed"]


def test_gap_expand_rejects_bad_m():
    with pytest.raises(InputError):
        gap_expand(legendre().system(3), m=4)


def test_expansion_reconstructs_quotient():
    sys = legendre().system(6, eta=-0.4)
    g = gap_expand(sys, m=1)
    d = derive_weights(sys).d
    t = np.linspace(-0.9, 0.9, 7)
    P = eval_polys_table(sys, 7, t)
    lam = compute_spectrum(sys).lambdas
    quotient = (P[:, 7] - sys.eta * P[:, 6]) / ((t - lam[0]) * (t - lam[1]))
    series = P[:, : g.coefficients.size] @ (d[: g.coefficients.size] * g.coefficients)
    assert np.allclose(series, quotient, rtol=1e-10, atol=1e-12)
