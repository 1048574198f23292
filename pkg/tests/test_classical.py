from __future__ import annotations

from math import pi

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chebsturm.classical import (AppendixCase, appendix_D_closed_form, appendix_D_numeric,
                                 compare_determinant, trig_cos_coeffs, trig_cos_coeffs_trapezoid,
                                 trig_sin_coeffs, trig_sin_coeffs_trapezoid)
from chebsturm.errors import InputError
from chebsturm.recurrence import zeros_of

CASES = ["i", "ii", "iii", "iv"]


@pytest.mark.parametrize("case", CASES)
@pytest.mark.parametrize("q", [1, 4, 11, 20])
def test_zero_formulas(case, q):
    c = AppendixCase(case, q)
    numeric = zeros_of(c.family().system(q), q + 1)[::-1]
    assert np.max(np.abs(c.zeros() - numeric)) < 1e-12


def test_known_closed_form_value():
    assert appendix_D_closed_form("iii", 0, [3], q=4) == pytest.approx(0.683012701892, abs=1e-12)


@st.composite
def case_points(draw):
    case = draw(st.sampled_from(CASES))
    q = draw(st.integers(1, 12))
    m = draw(st.integers(0, min(q, 4)))
    nus = sorted(draw(st.sets(st.integers(1, q), min_size=m, max_size=m)))
    nu = draw(st.integers(0, q))
    return case, q, nu, nus


@given(case_points())
def test_closed_form_matches_numeric_determinant(args):
    case, q, nu, nus = args
    rep = compare_determinant(case, nu, nus, q)
    assert rep["passed"], rep


@given(case_points())
def test_sign_law(args):
    case, q, nu, nus = args
    if nu in nus:
        return
    D = appendix_D_closed_form(case, nu, nus, q)
    ref = appendix_D_closed_form(case, 0, list(range(q - len(nus) + 1, q + 1)), q)
    assert np.sign(D) == np.sign(ref) * np.sign(np.prod([n - nu for n in nus]))


def test_repeated_point_vanishes():
    assert abs(appendix_D_numeric("ii", 3, [1, 3], q=5)) < 1e-12
    assert appendix_D_closed_form("ii", 3, [1, 3], q=5) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("bad", [dict(nu=0, nus=[2, 1]), dict(nu=0, nus=[0]), dict(nu=6, nus=[1]),
                                 dict(nu=0, nus=[1, 2, 3, 4, 5, 6])])
def test_point_validation(bad):
    with pytest.raises(InputError):
        appendix_D_closed_form("i", q=5, **bad)


def test_unknown_case():
    with pytest.raises(InputError):
        AppendixCase("v", 3)


def test_cosine_expansion_examples():
    assert np.allclose(trig_cos_coeffs(1, 0), [2 * np.sqrt(2), 2.0])


def test_sine_expansion_examples():
    assert np.allclose(trig_sin_coeffs(1, 1), [2.0])
    assert np.allclose(trig_sin_coeffs(2, 1), [2.0, 1.0])


def test_sine_expansion_by_explicit_division():
    # sin(3x) / (cos x - 1/2) = 2 sin x + 2 sin 2x, i.e. nu b_nu = (2, 2)
    x = np.linspace(0.1, 3.0, 13)
    b = trig_sin_coeffs(2, 1)
    series = sum((k + 1) * b[k] * np.sin((k + 1) * x) for k in range(b.size))
    assert np.allclose(series, np.sin(3 * x) / (np.cos(x) - 0.5))


@pytest.mark.parametrize("q", range(1, 16))
def test_trig_expansions_match_trapezoid(q):
    for m in range(q + 1):
        a = trig_cos_coeffs(q, m)
        assert np.max(np.abs(a - trig_cos_coeffs_trapezoid(q, m))) <= 1e-10 * np.max(a)
        assert np.all(a > 0) and np.all(np.diff(a) < 0)
    for m in range(1, q + 1):
        b = trig_sin_coeffs(q, m)
        assert np.max(np.abs(b - trig_sin_coeffs_trapezoid(q, m))) <= 1e-10 * np.max(b)
        assert np.all(b > 0) and np.all(np.diff(b) < 0)


def test_cosine_expansion_reconstructs_quotient():
    q, m = 6, 2
    a = trig_cos_coeffs(q, m)
    x = np.linspace(0.05, pi - 0.05, 9)
    den = np.prod([np.cos(x) - np.cos(pi * (2 * j + 1) / (2 * q + 2)) for j in range(m + 1)], axis=0)
    series = a[0] / 2 + sum(a[k] * np.cos(k * x) for k in range(1, a.size))
    assert np.allclose(series, np.cos((q + 1) * x) / den, rtol=1e-10, atol=1e-10)


def test_trig_range_validation():
    with pytest.raises(InputError):
        trig_cos_coeffs(3, 4)
    with pytest.raises(InputError):
        trig_sin_coeffs(3, 0)
