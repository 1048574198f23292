from __future__ import annotations

import doctest
import importlib

import pytest

MODULES = ["oscillation", "chebsys", "minimax", "gapfourier", "spectrum", "yudin", "classical",
           "recurrence", "families"]


@pytest.mark.parametrize("name", MODULES)
def test_docstring_examples(name):
    mod = importlib.import_module(f"chebsturm.{name}")
    res = doctest.testmod(mod, optionflags=doctest.NORMALIZE_WHITESPACE)
    assert res.failed == 0
