"""Kernel backend selection: compiled extension when available, numpy otherwise.

Set JOFCMATCH_PURE=1 to force the pure-Python kernels.
"""

from __future__ import annotations

import os

from . import _core_py

if os.environ.get("JOFCMATCH_PURE", "") not in ("", "0"):
    kernels = _core_py
else:
    try:
        from . import _core as kernels  # noqa: F401
    except ImportError:
        kernels = _core_py

BACKEND = kernels.BACKEND


def get_kernels(backend=None):
    """Return the kernel module for an explicit backend name, or the default."""
    if backend is None:
        return kernels
    if backend == "python":
        return _core_py
    if backend == "cython":
        from . import _core

        return _core
    raise ValueError(f"unknown kernel backend {backend!r}")
