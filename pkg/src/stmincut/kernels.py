"""Kernel backend selection.

The compiled extension is used when it imports; otherwise, or when the
``STMINCUT_PURE_PYTHON`` environment variable is set to a non-empty value, the
pure-Python reference kernels are used.
"""

from __future__ import annotations

import os

from stmincut import _pykernels

_compiled = None
if not os.environ.get("STMINCUT_PURE_PYTHON"):
    try:
        from stmincut import _ckernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"
_impl = _compiled if _compiled is not None else _pykernels

stoer_wagner = _impl.stoer_wagner
dinic = _impl.dinic


def get(backend: str):
    """Return the kernel module for ``"compiled"`` or ``"python"``."""
    if backend == "python":
        return _pykernels
    if backend == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available")
        return _compiled
    raise ValueError(f"unknown kernel backend {backend!r}")


def compiled_available() -> bool:
    return _compiled is not None
