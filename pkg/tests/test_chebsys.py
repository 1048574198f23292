from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chebsturm.chebsys import (SystemTable, bordered_det, certify, det_tolerance, dual_functional,
                               t0_counterexample_table, gram_det, lemma14_check, monomial_table, psi_table,
                               refute)
from chebsturm.errors import BudgetExceeded, InputError
from chebsturm.families import builtin_families, legendre
from chebsturm.spectrum import compute_spectrum


def test_gram_det_small_cases():
    assert gram_det(SystemTable(np.eye(3)), [0, 1, 2]) == pytest.approx(1.0)
    assert gram_det(monomial_table(3, 3), [0, 1, 3]) == pytest.approx(6.0)
    swapped = SystemTable(monomial_table(3, 3).table[[1, 0, 2]])
    assert gram_det(swapped, [0, 1, 3]) == pytest.approx(-6.0)


def test_gram_det_rejects_unordered_points():
    with pytest.raises(InputError):
        gram_det(monomial_table(3, 2), [2, 1])
    with pytest.raises(InputError):
        gram_det(monomial_table(3, 2), [0, 4])


def test_table_validation():
    with pytest.raises(InputError):
        SystemTable(np.ones((4, 3)))
    with pytest.raises(InputError):
        SystemTable(np.array([[1.0, np.nan]]))


def test_certify_monomials():
    cert = certify(monomial_table(5, 2))
    assert cert.kind == "T_Z" and cert.common_sign == 1
    assert cert.subsets_checked == 15


def test_certify_counterexample_reports_witness():
    cert = certify(t0_counterexample_table(3))
    assert cert.kind == "T0_only"
    S = t0_counterexample_table(3)
    first = gram_det(S, [0, 1, 2])
    assert np.sign(gram_det(S, cert.witness)) == -np.sign(first)


def test_certify_dependent_rows():
    S = SystemTable(np.array([[1.0, 2.0, 3.0], [1.0, 2.0, 3.0]]))
    assert certify(S).kind == "neither"


def test_certify_vanishing_minor():
    S = SystemTable(np.array([[1.0, 1.0, 1.0, 1.0], [0.0, 1.0, 1.0, 2.0]]))
    cert = certify(S)
    assert cert.kind == "neither"
    assert cert.witness == (1, 2)


def test_certify_budget():
    with pytest.raises(BudgetExceeded):
        certify(monomial_table(40, 10), budget=1000)


@given(st.integers(0, 2**32 - 1))
def test_certificate_is_permutation_covariant(seed):
    rng = np.random.default_rng(seed)
    S = psi_table(compute_spectrum(legendre().system(6)), 3)
    perm = rng.permutation(3)
    a = certify(S)
    b = certify(SystemTable(S.table[perm]))
    assert a.kind == b.kind == "T_Z"
    parity = np.linalg.det(np.eye(3)[perm])
    assert b.common_sign == a.common_sign * int(round(parity))


@pytest.mark.parametrize("name", sorted(builtin_families()))
def test_leading_eigenfunctions_form_tz_systems(name):
    spec = compute_spectrum(builtin_families()[name].system(9, eta=0.2))
    for n in range(1, 6):
        assert certify(psi_table(spec, n)).kind == "T_Z"


def test_refute_finds_counterexample_and_never_certifies():
    hit = refute(t0_counterexample_table(6), samples=500, rng=1)
    assert hit is not None and hit.kind == "T0_only"
    assert refute(monomial_table(8, 3), samples=200, rng=1) is None


def test_dual_functional_annihilates_system():
    assert np.allclose(np.abs(dual_functional(monomial_table(1, 1), [0, 1])), [1, 1])
    assert dual_functional(monomial_table(1, 1), [0, 1]).sum() == pytest.approx(0)
    assert np.allclose(dual_functional(monomial_table(2, 2), [0, 1, 2]), [-0.5, 1, -0.5])
    S = psi_table(compute_spectrum(legendre().system(7)), 3)
    pts = [0, 2, 5, 7]
    lam = dual_functional(S, pts)
    assert np.max(np.abs(S.table[:, pts] @ lam)) < 1e-12
    assert np.all(lam[1:] * lam[:-1] < 0)


def test_bordered_det_row_order():
    S = monomial_table(4, 3)
    D = bordered_det(S, 0, [2, 4])
    ref = np.linalg.det(np.array([[1, 4, 16], [1, 2, 4], [1, 0, 0]], dtype=float))
    assert D == pytest.approx(ref)
    assert bordered_det(S, 2, [2, 4]) == pytest.approx(0, abs=1e-12)


def test_det_tolerance_is_hadamard_scaled():
    S = SystemTable(np.array([[3.0, 4.0], [0.0, 2.0]]))
    assert det_tolerance(S) == pytest.approx(1e-10 * 5 * 2)


def test_sign_law_on_monomials_and_eigenfunctions():
    assert lemma14_check(monomial_table(8, 2), trials=200, rng=0).passed
    spec = compute_spectrum(legendre().system(10, eta=-0.5))
    for m in (1, 2, 3):
        rep = lemma14_check(psi_table(spec, m + 1), trials=200, rng=m)
        assert rep.passed, rep.failure
