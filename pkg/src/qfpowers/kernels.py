"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``QF_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

MAX_BITS = 24

if os.environ.get("QF_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = "cython" if _impl is not _kernels_py else "python"
count_subset_xors = _impl.count_subset_xors
count_multiset_xors = _impl.count_multiset_xors
