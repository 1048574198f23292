"""The acceptance battery: every criterion at its stated tolerance and time limit.

Each test prints one PASS/FAIL line (visible with ``-s``); the same lines are
repeated in the terminal summary of every run.
"""
from __future__ import annotations

import pytest

from chebsturm.acceptance import CRITERIA, format_line, run_criterion

ACCEPTANCE_LINES: list[str] = []


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    result = run_criterion(number, seed=0)
    line = format_line(result)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert result.passed, result.to_json()


def test_all_eleven_criteria_registered():
    assert sorted(CRITERIA) == list(range(1, 12))


@pytest.mark.parametrize("seed", [1, 2])
def test_randomized_criteria_pass_for_other_seeds(seed):
    for number in (2, 3, 7):
        assert run_criterion(number, seed=seed).passed


@pytest.mark.parametrize("fault,caught_by", [("spectrum", {5, 6}), ("splus", {3})])
def test_injected_faults_are_caught(fault, caught_by):
    failed = {n for n in sorted(CRITERIA) if not run_criterion(n, faults=(fault,)).passed}
    assert caught_by <= failed


def test_battery_passes_on_python_fallback():
    import json
    import os
    import subprocess
    import sys

    env = dict(os.environ, CHEBSTURM_PURE_PYTHON="1")
    res = subprocess.run([sys.executable, "-m", "chebsturm", "suite", "--quiet"],
                         capture_output=True, text=True, env=env)
    report = json.loads(res.stdout)
    assert report["backend"] == "python"
    failed = [c["criterion"] for c in report["criteria"] if not c["passed"]]
    assert res.returncode == 0 and not failed, failed
