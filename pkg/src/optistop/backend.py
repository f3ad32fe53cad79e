"""Execution backend selection for the Monte-Carlo kernels.

Every simulation kernel exists in two functionally identical flavors:
numba ``@njit`` machine code and vectorized NumPy.  The environment
variable ``OPTISTOP_BACKEND`` picks one explicitly (``numba`` or
``numpy``); when unset (or ``auto``) the numba path is used whenever
numba imports, with the NumPy path as the fallback.

``benchmarks/bench_backends.py`` times the two paths against each other.
"""

from __future__ import annotations

import os

BACKEND_ENV = "OPTISTOP_BACKEND"

try:
    import numba as _numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via OPTISTOP_BACKEND=numpy
    _numba = None
    HAVE_NUMBA = False


def scalar_jit(fn):
    """Compile a scalar math function with numba when available.

    The decorated functions restrict themselves to ``math.*`` calls and
    plain arithmetic so the exact same source works interpreted.
    """
    if HAVE_NUMBA:
        return _numba.njit(cache=True, nogil=True)(fn)
    return fn


def active_backend() -> str:
    """Resolve the kernel backend for the current call: 'numba' or 'numpy'."""
    choice = os.environ.get(BACKEND_ENV, "auto").strip().lower()
    if choice in ("", "auto"):
        return "numba" if HAVE_NUMBA else "numpy"
    if choice == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError(
                f"{BACKEND_ENV}=numba requested but numba is not importable"
            )
        return "numba"
    if choice == "numpy":
        return "numpy"
    raise ValueError(f"unrecognized {BACKEND_ENV} value: {choice!r}")
