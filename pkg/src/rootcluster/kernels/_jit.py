"""Kernel backend selection.

``ROOTCLUSTER_KERNELS=numba`` (default when numba imports) compiles the hot
loops; ``ROOTCLUSTER_KERNELS=numpy`` uses the vectorized fallbacks.
"""

from __future__ import annotations

import os

_requested = os.environ.get("ROOTCLUSTER_KERNELS", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ImportError(f"ROOTCLUSTER_KERNELS must be 'numba' or 'numpy', not {_requested!r}")

try:
    if _requested != "numba":
        raise ImportError
    import numba

    HAVE_NUMBA = True
except ImportError:
    numba = None
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def njit(fn):
    """Compile with numba when available; the plain function otherwise."""
    if numba is None:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)
