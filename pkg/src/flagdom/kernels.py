"""Selects the compiled kernels when available, else the pure-Python fallback.

Set ``FLAGDOM_PURE_PYTHON=1`` to force the fallback.
"""
import os

BACKEND = "python"
if os.environ.get("FLAGDOM_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from ._kernels import best_subset, subset_codes  # noqa: F401

        BACKEND = "cython"
    except ImportError:
        pass
if BACKEND == "python":
    from ._kernels_py import best_subset, subset_codes  # noqa: F401

from . import _kernels_py as python_kernels  # noqa: E402,F401
