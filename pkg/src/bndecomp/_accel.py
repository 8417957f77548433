"""Backend switch for the hot kernels.

Set ``BNDECOMP_NUMBA=0`` to route every kernel through the pure numpy/Python
path. The flag is read once, at import time. Jitted variants are still built
when numba is importable so the benchmark can compare both in one process.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and os.environ.get("BNDECOMP_NUMBA", "1").strip().lower() not in (
    "0", "false", "no", "off")


def njit(fn):
    """``numba.njit(cache=True)``, or ``None`` without numba."""
    if numba is None:
        return None
    return numba.njit(cache=True)(fn)


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
