from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chebsturm.errors import InputError
from chebsturm.families import builtin_families, legendre
from chebsturm.oscillation import (DiscreteFunction, backward_difference, difference_inequalities,
                                   forward_difference, oscillation_report, splus_bruteforce,
                                   verify_theorem5, verify_theorem6)
from chebsturm.spectrum import compute_spectrum


def _changes(s):
    return sum(1 for a, b in zip(s, s[1:]) if a * b < 0)


def _reference_counts(s):
    zeros = [i for i, v in enumerate(s) if v == 0]
    fills = []
    for choice in itertools.product((-1, 1), repeat=len(zeros)):
        t = list(s)
        for i, c in zip(zeros, choice):
            t[i] = c
        fills.append(_changes(t))
    nonzero = [v for v in s if v != 0]
    n0 = len(zeros)
    n2 = sum(1 for a, b in zip(s, s[1:]) if a * b < 0)
    return n0 + n2, n0, _changes(nonzero), max(fills)


def test_boundary_and_interior_zeros():
    r = oscillation_report([0, 1, 0, -1, 0])
    assert (r.N, r.N0, r.S_minus, r.S_plus) == (3, 3, 1, 3)
    assert splus_bruteforce([0, 1, 0, -1, 0]) == 3


def test_all_zero_function():
    r = oscillation_report([0, 0, 0, 0])
    assert r.N == 4 and r.S_minus == 0 and r.S_plus == 3


def test_zero_runs_are_classified():
    r = oscillation_report([1, 0, 0, 1, 0, -1, 2])
    types = sorted(run.type for run in r.runs)
    assert types and all(t in (1, 2, 3, 4) for t in types)
    assert r.S_plus == splus_bruteforce([1, 0, 0, 1, 0, -1, 2])


def test_sign_tolerance_zeroes_tiny_values():
    f = DiscreteFunction(np.array([1.0, 1e-14, -1.0]))
    assert f.signs().tolist() == [1, 0, -1]
    assert oscillation_report(f).N0 == 1


signs = st.lists(st.sampled_from([-1, 0, 1]), min_size=1, max_size=12)


@given(signs)
def test_counts_match_exhaustive_enumeration(s):
    r = oscillation_report(s)
    N, N0, sm, sp = _reference_counts(s)
    assert (r.N, r.N0, r.S_minus, r.S_plus) == (N, N0, sm, sp)
    assert splus_bruteforce(s) == sp


@given(signs.filter(any))
def test_count_ordering_for_nonzero_functions(s):
    r = oscillation_report(s)
    assert r.S_minus <= r.N <= r.S_plus
    assert r.S_plus <= len(s) - 1


@given(st.lists(st.floats(-5, 5), min_size=2, max_size=12))
def test_counts_invariant_under_positive_scaling(v):
    a = oscillation_report(v).counts()
    b = oscillation_report(3.5 * np.array(v)).counts()
    c = oscillation_report(-np.array(v)).counts()
    assert a == b == c


def test_splus_bruteforce_refuses_many_zeros():
    with pytest.raises(InputError):
        splus_bruteforce([0] * 21 + [1])


@pytest.mark.parametrize("name", sorted(builtin_families()))
@pytest.mark.parametrize("eta", [0.0, 0.7, -1.5])
def test_eigenfunction_k_has_k_minus_one_sign_changes(name, eta):
    spec = compute_spectrum(builtin_families()[name].system(10, eta=eta))
    rep = verify_theorem5(spec)
    assert rep.passed, rep.first_failure
    assert rep.counts[4] == (4, 4, 4)


@given(st.integers(2, 12), st.data())
def test_combination_counts_are_bracketed(q, data):
    spec = compute_spectrum(legendre().system(q, eta=0.4))
    m = data.draw(st.integers(1, q + 1))
    n = data.draw(st.integers(m, q + 1))
    a = data.draw(st.lists(st.floats(-1, 1), min_size=n - m + 1, max_size=n - m + 1))
    if not any(abs(x) > 1e-3 for x in a):
        a[0] = 1.0
    rep = verify_theorem6(spec, m, n, a)
    assert rep.passed, rep.chain()


def test_combination_rejects_bad_input():
    spec = compute_spectrum(legendre().system(4))
    with pytest.raises(InputError):
        verify_theorem6(spec, 3, 2, [1.0])
    with pytest.raises(InputError):
        verify_theorem6(spec, 1, 2, [0.0, 0.0])
    with pytest.raises(InputError):
        verify_theorem6(spec, 1, 2, [1.0])


def test_differences():
    assert backward_difference([1, 3, 2]).tolist() == [1, 2, -1]
    assert forward_difference([1, 3, 2]).tolist() == [2, -1, -2]
    assert forward_difference([1, 3, 2], tail=5).tolist() == [2, -1, 3]


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=10))
def test_backward_difference_never_loses_oscillation(v):
    res = difference_inequalities(v)
    assert res["passed"], res
    assert res["forward"] is None


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=10))
def test_forward_difference_with_vanishing_tail(v):
    res = difference_inequalities(v, tail=0.0)
    assert res["passed"], res
