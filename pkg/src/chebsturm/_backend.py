"""Select the compiled kernels when available, else the numpy fallback.

Set ``CHEBSTURM_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

if os.environ.get("CHEBSTURM_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as kernels
else:
    try:
        from . import _ckernels as kernels
    except ImportError:  # extension not built
        from . import _pykernels as kernels

BACKEND = "cython" if kernels.__name__.endswith("_ckernels") else "python"

__all__ = ["kernels", "BACKEND"]
