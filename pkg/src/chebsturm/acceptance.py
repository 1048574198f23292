"""The acceptance battery shared by ``chebsturm suite`` and the test suite.

Each criterion is a function ``(rng, faults) -> (passed, detail)`` registered
with a number, a short name and a time limit.  ``faults`` is a set of
deliberately injected defects used to show that the battery detects them:

``"spectrum"``
    every computed spectrum is shifted by ``1e-6``;
``"splus"``
    the ``S_plus`` count is replaced by a rule that ignores boundary runs.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import pi, sqrt
from typing import Callable

import numpy as np

from ._backend import BACKEND
from .chebsys import certify, t0_counterexample_table, monomial_table, psi_table
from .classical import compare_determinant, trig_cos_coeffs, trig_sin_coeffs
from .errors import ChebSturmError, NumericalError
from .families import appendix_family, builtin_families, chebyshev_t, chebyshev_u
from .gapfourier import classify_and_verify, eta_b, gap_expand
from .minimax import best_approx, best_approx_oracle, example_2_7, find_alternance, verify_optimality
from .oscillation import DiscreteFunction, oscillation_report, verify_theorem5, verify_theorem6
from .spectrum import Spectrum, compute_spectrum
from .yudin import yudin_extremal

__all__ = ["FAULTS", "CRITERIA", "CriterionResult", "run_battery", "run_criterion", "format_line"]

FAULTS = ("spectrum", "splus")
SPECTRUM_SHIFT = 1e-6


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    time_limit: float | None
    run: Callable


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    elapsed: float
    time_limit: float | None
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"criterion": self.number, "name": self.name, "passed": self.passed,
                "elapsed_s": round(self.elapsed, 3), "time_limit_s": self.time_limit,
                "detail": self.detail}


CRITERIA: dict[int, Criterion] = {}


def _criterion(number: int, name: str, time_limit: float | None = None):
    def deco(fn):
        CRITERIA[number] = Criterion(number, name, time_limit, fn)
        return fn
    return deco


def _spectrum(sys, faults) -> Spectrum:
    spec = compute_spectrum(sys)
    return spec.perturbed(SPECTRUM_SHIFT) if "spectrum" in faults else spec


def _splus(values, faults) -> int:
    r = oscillation_report(values)
    if "splus" not in faults:
        return r.S_plus
    s = DiscreteFunction(values).signs()
    nz = np.flatnonzero(s)
    return r.S_plus - int(nz.size and nz[0] > 0) - int(nz.size and nz[-1] < s.size - 1)


def _count_families():
    fams = builtin_families()
    return {k: fams[k] for k in ("chebyshev-t", "chebyshev-u", "legendre",
                                 "appendix-i", "appendix-ii", "appendix-iii", "appendix-iv")}


@_criterion(1, "eigenfunction oscillation counts are exact", 5.0)
def _c1(rng, faults):
    checked, failures = 0, []
    for name, F in _count_families().items():
        for q in (5, 12, 30):
            eb = eta_b(F.system(q))
            for eta in (0.0, 0.5, -0.5, eb):
                spec = _spectrum(F.system(q, eta), faults)
                rep = verify_theorem5(spec)
                checked += 1
                if not rep.passed:
                    failures.append([name, q, eta, rep.first_failure])
    return not failures, {"systems": checked, "failures": failures[:5]}


@_criterion(2, "combination counts stay inside [m-1, n-1]", 10.0)
def _c2(rng, faults):
    fams = list(builtin_families().values())
    bad = []
    for draw in range(500):
        F = fams[int(rng.integers(len(fams)))]
        q = int(rng.integers(1, 16))
        pick = int(rng.integers(4))
        eta = eta_b(F.system(q)) if pick == 3 else (0.0, 0.5, -0.5)[pick]
        m = int(rng.integers(1, q + 2))
        n = int(rng.integers(m, q + 2))
        a = rng.standard_normal(n - m + 1)
        spec = _spectrum(F.system(q, eta), faults)
        rep = verify_theorem6(spec, m, n, a)
        if not rep.passed:
            bad.append([F.name, q, eta, m, n, list(rep.chain())])
    return not bad, {"draws": 500, "violations": len(bad), "first": bad[:3]}


def _splus_oracle(s) -> int:
    zeros = [i for i, v in enumerate(s) if v == 0]
    best = 0
    for mask in range(1 << len(zeros)):
        t = list(s)
        for b, i in enumerate(zeros):
            t[i] = 1 if (mask >> b) & 1 else -1
        best = max(best, sum(t[i] != t[i + 1] for i in range(len(t) - 1)))
    return best


@_criterion(3, "S_plus run rule matches brute force", 2.0)
def _c3(rng, faults):
    bad = []
    for _ in range(1000):
        length = int(rng.integers(1, 13))
        n_zeros = int(rng.integers(0, min(length, 10) + 1))
        s = rng.choice([-1, 1], size=length)
        s[rng.choice(length, size=n_zeros, replace=False)] = 0
        fast = _splus(s.astype(float), faults)
        slow = _splus_oracle(s.tolist())
        if fast != slow:
            bad.append([s.tolist(), fast, slow])
    return not bad, {"patterns": 1000, "mismatches": len(bad), "first": bad[:3]}


@_criterion(4, "closed-form determinants match numeric ones", 5.0)
def _c4(rng, faults):
    worst, bad = 0.0, []
    for case in ("i", "ii", "iii", "iv"):
        for _ in range(100):
            q = int(rng.integers(1, 11))
            m = int(rng.integers(0, min(3, q) + 1))
            nus = np.sort(rng.choice(np.arange(1, q + 1), size=m, replace=False))
            nu = int(rng.integers(0, q + 1))
            r = compare_determinant(case, nu, nus, q)
            if np.isfinite(r["rel_diff"]):
                worst = max(worst, r["rel_diff"] if abs(r["closed_form"]) > 1e-12 else 0.0)
            if not r["passed"]:
                bad.append([case, q, nu, nus.tolist(), r["rel_diff"]])
    return not bad, {"tuples": 400, "worst_rel_diff": worst, "failures": bad[:3]}


@_criterion(5, "spectra match closed-form zeros")
def _c5(rng, faults):
    lam = _spectrum(chebyshev_t().system(2, 0.0), faults).lambdas
    expect = np.array([sqrt(3) / 2, 0.0, -sqrt(3) / 2])
    err_t = float(np.max(np.abs(lam - expect)))
    err_u = 0.0
    for q in range(0, 21):
        lam = _spectrum(chebyshev_u().system(q), faults).lambdas
        err_u = max(err_u, float(np.max(np.abs(lam - np.cos(pi * np.arange(1, q + 2) / (q + 2))))))
    return err_t <= 1e-12 and err_u <= 1e-10, {"chebyshev_t_err": err_t, "chebyshev_u_err": err_u}


@_criterion(6, "gap expansion values, route agreement and monotonicity verdicts")
def _c6(rng, faults):
    sys = chebyshev_t().system(1, 0.0)
    a = gap_expand(sys, _spectrum(sys, faults), 0).coefficients
    val_err = float(np.max(np.abs(a - [sqrt(2), 1.0])))
    fams = list(builtin_families().values())
    worst_gap, route_fail = 0.0, []
    for _ in range(100):
        F = fams[int(rng.integers(len(fams)))]
        q = int(rng.integers(1, 21))
        m = int(rng.integers(0, q + 1))
        eta = float(rng.uniform(-2.0, 2.0))
        sys = F.system(q, eta)
        try:
            g = gap_expand(sys, _spectrum(sys, faults), m).route_gap
        except NumericalError as exc:
            route_fail.append([F.name, q, m, eta, str(exc)])
            continue
        worst_gap = max(worst_gap, g)
    verdict_fail, spread_b = [], 0.0
    for name, F in builtin_families().items():
        q = 8
        eb = eta_b(F.system(q))
        for eta in (eb - 1.0, eb, eb + 1.0):
            sys = F.system(q, eta)
            for m in (0, 1, 2):
                try:
                    c = classify_and_verify(gap_expand(sys, _spectrum(sys, faults), m), sys)
                except NumericalError as exc:
                    verdict_fail.append([name, eta, m, str(exc)])
                    continue
                if c.case == "b":
                    spread_b = max(spread_b, c.spread)
                if not c.consistent:
                    verdict_fail.append([name, eta, m, c.case, c.verdict])
    passed = val_err <= 1e-12 and not route_fail and not verdict_fail and spread_b <= 1e-8
    return passed, {"value_err": val_err, "worst_route_gap": worst_gap,
                    "route_failures": route_fail[:3], "verdict_failures": verdict_fail[:3],
                    "case_b_spread": spread_b}


@_criterion(7, "exchange matches the exhaustive oracle")
def _c7(rng, faults):
    fams = list(builtin_families().values())
    worst, bad = 0.0, []
    for i in range(200):
        q = int(rng.integers(2, 13))
        n = int(rng.integers(1, min(5, q) + 1))
        if i % 2 == 0:
            S = monomial_table(q, n)
        else:
            F = fams[int(rng.integers(len(fams)))]
            S = psi_table(_spectrum(F.system(q, float(rng.uniform(-1, 1))), faults), n)
        f = rng.standard_normal(q + 1)
        r = best_approx(f, S)
        o = best_approx_oracle(f, S)
        diff = abs(r.E - o.E)
        worst = max(worst, diff)
        ver = verify_optimality(f, S, r)
        if diff > 1e-9 or not ver["passed"]:
            bad.append([i, q, n, r.E, o.E, ver["passed"]])
    r = best_approx([0.0, 1.0, 4.0], monomial_table(2, 2))
    sq_err = abs(r.E - 0.5)
    return not bad and sq_err <= 1e-12, {"instances": 200, "worst_E_diff": worst,
                                         "failures": bad[:3], "square_E_err": sq_err}


@_criterion(8, "closed form for the T_0 counterexample")
def _c8(rng, faults):
    worst, bad = 0.0, []
    for q in (3, 6):
        S = t0_counterexample_table(q)
        for _ in range(50):
            f = rng.standard_normal(q + 1)
            coef, lam, E = example_2_7(f)
            o = best_approx_oracle(f, S)
            worst = max(worst, abs(E - o.E))
            err = S.evaluate(coef) - f
            alt = find_alternance(err, q + 1) if lam != 0 else None
            if abs(E - o.E) > 1e-10 or alt is not None:
                bad.append([q, E, o.E, alt])
    return not bad, {"worst_E_diff": worst, "failures": bad[:3]}


@_criterion(9, "extremal gap polynomial for the second-kind family")
def _c9(rng, faults):
    r = yudin_extremal(appendix_family("iii"), 4, 1, variant=1, check=False)
    a = r.p_coeffs
    top = float(np.max(np.abs(a)))
    checks = {
        "B": abs(r.B - 0.5) <= 1e-12,
        "coefficients_nonnegative": float(np.min(a)) >= -1e-10 * float(np.max(a)),
        "mu_0": abs(r.moments[0]) <= 1e-9 * r.sup_norm,
        "a_1": abs(a[1]) <= 1e-9 * top,
        "sign": r.sign_check >= -1e-9 * r.sup_norm,
    }
    return all(checks.values()), {"checks": checks, "B": r.B, "min_a": float(np.min(a)),
                                  "mu_0": float(r.moments[0]), "a_1": float(a[1]),
                                  "sign_check": r.sign_check}


@_criterion(10, "trigonometric coefficients decrease strictly")
def _c10(rng, faults):
    bad = []
    for q in range(0, 21):
        for m in range(0, q + 1):
            try:
                trig_cos_coeffs(q, m)
                if m >= 1:
                    trig_sin_coeffs(q, m)
            except NumericalError as exc:
                bad.append([q, m, str(exc)[:80]])
    val_err = float(np.max(np.abs(trig_cos_coeffs(1, 0) - [2 * sqrt(2), 2.0])))
    return not bad and val_err <= 1e-12, {"value_err": val_err, "failures": bad[:3]}


@_criterion(11, "determinant sweeps certify T_Z", 30.0)
def _c11(rng, faults):
    bad, swept = [], 0
    for name, F in builtin_families().items():
        for q in range(1, 10):
            spec = _spectrum(F.system(q), faults)
            for n in range(1, q + 2):
                c = certify(psi_table(spec, n))
                swept += c.subsets_checked
                if c.kind != "T_Z":
                    bad.append([name, q, n, c.kind])
    for q in range(1, 10):
        for n in range(1, min(5, q + 1) + 1):
            c = certify(monomial_table(q, n))
            swept += c.subsets_checked
            if c.kind != "T_Z":
                bad.append(["monomial", q, n, c.kind])
    kinds = {q: certify(t0_counterexample_table(q)).kind for q in (3, 6)}
    ok = not bad and all(k == "T0_only" for k in kinds.values())
    return ok, {"subsets": swept, "failures": bad[:3], "example_kinds": kinds}


def run_criterion(number: int, seed: int = 0, faults=()) -> CriterionResult:
    """Run one criterion with its own seeded stream; errors count as failures."""
    crit = CRITERIA[number]
    faults = frozenset(faults)
    rng = np.random.default_rng([seed, number])
    t0 = time.perf_counter()
    try:
        passed, detail = crit.run(rng, faults)
    except ChebSturmError as exc:
        passed, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    elapsed = time.perf_counter() - t0
    if crit.time_limit is not None and elapsed > crit.time_limit:
        passed = False
        detail = {**detail, "timeout": True}
    return CriterionResult(number, crit.name, bool(passed), elapsed, crit.time_limit, detail)


def run_battery(only=None, seed: int = 0, faults=()) -> list[CriterionResult]:
    numbers = sorted(CRITERIA) if only is None else list(only)
    return [run_criterion(k, seed, faults) for k in numbers]


def format_line(r: CriterionResult) -> str:
    limit = f" / {r.time_limit:g} s" if r.time_limit else ""
    return f"criterion {r.number:2d} {'PASS' if r.passed else 'FAIL'}  {r.name}  ({r.elapsed:.2f} s{limit})"


def summary(results: list[CriterionResult], seed: int, faults=()) -> dict:
    return {"backend": BACKEND, "seed": seed, "faults": sorted(faults),
            "passed": all(r.passed for r in results),
            "criteria": [r.to_json() for r in results]}
