"""Numeric kernels for the three working-precision tiers."""

from . import bigint, dd, fp
from ._jit import BACKEND, HAVE_NUMBA

__all__ = ["BACKEND", "HAVE_NUMBA", "bigint", "dd", "fp"]
