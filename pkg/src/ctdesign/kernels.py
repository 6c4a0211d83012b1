"""Kernel backend selection.

The compiled module is used when it imports; set ``CTDESIGN_PURE=1`` to
force the numpy fallback.
"""
from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def get_backend(name: str | None = None) -> ModuleType:
    if name is None:
        pure = os.environ.get("CTDESIGN_PURE", "").lower() in ("1", "true", "yes")
        name = "python" if pure or _ckernels is None else "cython"
    if name == "cython":
        if _ckernels is None:
            raise ImportError("compiled kernels are not available")
        return _ckernels
    if name == "python":
        return _pykernels
    raise ValueError(f"unknown backend {name!r}")


def available() -> list[str]:
    return ["cython", "python"] if _ckernels is not None else ["python"]


def use_backend(name: str) -> None:
    """Switch the module-level backend used by the rest of the package."""
    global impl, BACKEND
    impl = get_backend(name)
    BACKEND = name


impl = get_backend()
BACKEND = "cython" if impl is _ckernels else "python"
