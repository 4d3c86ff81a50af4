"""Kernel backend selection.

The hot numerical kernels exist twice: a numba ``@njit`` implementation
(`_kernels_numba`) and a pure-numpy fallback (`_kernels_numpy`) with the same
function set. The active backend is chosen at import time from the
``QTHERMO_BACKEND`` environment variable:

    QTHERMO_BACKEND=numba   force the jitted kernels (error if numba missing)
    QTHERMO_BACKEND=numpy   force the pure-numpy kernels
    unset / "auto"          numba when importable, numpy otherwise

``use(name)`` switches at runtime (used by tests and the benchmark). Results
are deterministic within a backend; the two backends agree to ~1e-12 but are
not guaranteed bit-identical to each other.
"""

from __future__ import annotations

import os

from . import _kernels_numpy

_ENV_VAR = "QTHERMO_BACKEND"
_active = None
_active_name = ""


def _load_numba_kernels():
    from . import _kernels_numba

    return _kernels_numba


def use(name: str):
    """Select the kernel backend ("numba" or "numpy"). Returns the module."""
    global _active, _active_name
    if name == "numpy":
        _active = _kernels_numpy
    elif name == "numba":
        _active = _load_numba_kernels()
    else:
        raise ValueError(f"unknown backend {name!r}; expected 'numba' or 'numpy'")
    _active_name = name
    return _active


def _init_from_env():
    global _active, _active_name
    choice = os.environ.get(_ENV_VAR, "auto").strip().lower()
    if choice in ("numba", "numpy"):
        use(choice)
        return
    if choice not in ("auto", ""):
        raise ValueError(f"{_ENV_VAR}={choice!r}; expected 'numba', 'numpy' or 'auto'")
    try:
        use("numba")
    except ImportError:
        use("numpy")


def kernels():
    """The active kernel module."""
    return _active


def active_name() -> str:
    return _active_name


_init_from_env()
