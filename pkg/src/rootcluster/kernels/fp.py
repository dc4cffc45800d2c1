"""float64 / complex128 kernels: Taylor shift, Graeffe step, positive majorants.

Each public function exists in a compiled loop form and a vectorized numpy
form with identical results up to floating-point rounding; the error bounds
used by callers hold for both.
"""

from __future__ import annotations

import math

import numpy as np

from ._jit import HAVE_NUMBA, njit


@njit
def _shift_complex_loop(a, c):
    a = a.copy()
    d = a.shape[0] - 1
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            a[j] += c * a[j + 1]
    return a


@njit
def _shift_real_loop(a, x):
    a = a.copy()
    d = a.shape[0] - 1
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            a[j] += x * a[j + 1]
    return a


@njit
def _graeffe_loop(m, q, rad):
    """Root-squared coefficients plus the two positive error sums.

    Returns (g, cq, rq) with cq_k = sum_{a+b=2k} q_a q_b and
    rq_k = sum_{a+b=2k} rad_a q_b.
    """
    n = m.shape[0]
    g = np.zeros(n, dtype=np.complex128)
    cq = np.zeros(n, dtype=np.float64)
    rq = np.zeros(n, dtype=np.float64)
    for k in range(n):
        lo = 2 * k - (n - 1)
        if lo < 0:
            lo = 0
        acc = 0j
        s1 = 0.0
        s2 = 0.0
        hi = 2 * k
        if hi > n - 1:
            hi = n - 1
        for a in range(lo, hi + 1):
            b = 2 * k - a
            t = m[a] * m[b]
            if a & 1:
                acc -= t
            else:
                acc += t
            s1 += q[a] * q[b]
            s2 += rad[a] * q[b]
        g[k] = acc
        cq[k] = s1
        rq[k] = s2
    return g, cq, rq


def _shift_complex_np(a, c):
    a = np.array(a, dtype=np.complex128)
    d = a.shape[0] - 1
    for i in range(d):
        lo = d - 1 - i
        a[lo:d] += c * a[lo + 1:]
    return a


def _shift_real_np(a, x):
    a = np.array(a, dtype=np.float64)
    d = a.shape[0] - 1
    for i in range(d):
        lo = d - 1 - i
        a[lo:d] += x * a[lo + 1:]
    return a


def _graeffe_np(m, q, rad):
    n = m.shape[0]
    ev = m[0::2]
    od = m[1::2]
    e2 = np.convolve(ev, ev)
    g = np.zeros(n, dtype=np.complex128)
    g[: min(n, e2.shape[0])] = e2[:n]
    if od.shape[0]:
        o2 = np.convolve(od, od)
        k = min(n - 1, o2.shape[0])
        g[1 : k + 1] -= o2[:k]
    cq = np.convolve(q, q)[0::2][:n]
    rq = np.convolve(rad, q)[0::2][:n]
    return g, cq, rq


U = 2.0**-53
ETA = 2.0**-1000  # absorbs all underflow


@njit
def _enclose_graeffe_loop(m, rad):
    """One root-squaring step with its error radius, renormalized.

    Returns (g, rg, S, ok): the true iterate is (g +- rg) * 2**S times the
    square of the input scale.
    """
    n = m.shape[0]
    q = np.empty(n)
    for j in range(n):
        q[j] = abs(m[j]) * (1 + 2 * U) + rad[j]
    g, cq, rq = _graeffe_loop(m, q, rad)
    rg = np.empty(n)
    top = 0.0
    ok = True
    c1 = (2 * n + 16) * U
    c2 = 1 + (n + 6) * U
    for k in range(n):
        rg[k] = (2 * rq[k] + c1 * cq[k]) * c2 + ETA
        up = abs(g[k]) * (1 + 2 * U) + rg[k]
        if not np.isfinite(up):
            ok = False
        elif up > top:
            top = up
    if not ok or top == 0.0:
        return g, rg, 0, False
    S = math.frexp(top)[1]
    for k in range(n):
        g[k] = complex(math.ldexp(g[k].real, -S), math.ldexp(g[k].imag, -S))
        rg[k] = math.ldexp(rg[k], -S) + ETA
    return g, rg, S, True


def _enclose_graeffe_np(m, rad):
    n = m.shape[0]
    with np.errstate(all="ignore"):
        q = np.abs(m) * (1 + 2 * U) + rad
        g, cq, rq = _graeffe_np(m, q, rad)
        rg = (2 * rq + (2 * n + 16) * U * cq) * (1 + (n + 6) * U) + ETA
        up = np.abs(g) * (1 + 2 * U) + rg
        if not (np.all(np.isfinite(up)) and np.all(np.isfinite(g))):
            return g, rg, 0, False
        top = up.max()
        if top == 0.0:
            return g, rg, 0, False
        S = int(np.frexp(top)[1])
        g = np.ldexp(g.real, -S) + 1j * np.ldexp(g.imag, -S)
        rg = np.ldexp(rg, -S) + ETA
    return g, rg, S, True


@njit
def _decide_loop(lo, hi, r0, k, theta):
    """Soft comparisons of lo/hi magnitude bounds; (status, r).

    status: 1 dominance certified at r, 0 no r in r0..k dominates,
    -1 unresolved at r.
    """
    n = lo.shape[0]
    g = (n + 4) * U
    tl = 0.0
    th = 0.0
    unit = 0.0
    for j in range(n):
        tl += lo[j]
        th += hi[j]
        if hi[j] > unit:
            unit = hi[j]
    # sequential sums carry relative error <= n U; inflate both ways
    for r in range(r0, k + 1):
        blo = (tl * (1 - g) - lo[r]) * (1 - 2 * U)
        bhi = (th * (1 + g) - hi[r]) * (1 + 2 * U)
        if lo[r] > bhi:
            return 1, r
        if hi[r] < blo:
            continue
        spread = max(abs(hi[r] - blo), abs(lo[r] - bhi)) * (1 + 4 * U)
        if spread <= theta * max(unit, bhi):
            continue
        return -1, r
    return 0, -1


if HAVE_NUMBA:
    shift_complex = _shift_complex_loop
    shift_real = _shift_real_loop
    graeffe_complex = _graeffe_loop
    enclose_graeffe = _enclose_graeffe_loop
    decide = _decide_loop
else:
    shift_complex = _shift_complex_np
    shift_real = _shift_real_np
    graeffe_complex = _graeffe_np
    enclose_graeffe = _enclose_graeffe_np
    decide = _decide_loop  # plain Python loop; called once per comparison batch


def log2_shift_majorant(logA: np.ndarray, log2x: float) -> np.ndarray:
    """log2 of sum_j A_j C(j,k) x^(j-k) for every k, overflow-free.

    Zero entries of A are passed as -inf. The result is accurate to a
    relative 2**-40 or so; callers inflate it.
    """
    n = logA.shape[0]
    lc = _log2_binomials(n)
    j = np.arange(n)
    # terms[k, j] = logA_j + log2 C(j,k) + (j-k) log2 x, for j >= k
    with np.errstate(invalid="ignore"):
        terms = logA[None, :] + lc + (j[None, :] - j[:, None]) * log2x
    terms = np.where(lc > -np.inf, terms, -np.inf)
    top = terms.max(axis=1)
    safe = np.where(np.isfinite(top), top, 0.0)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        s = np.exp2(terms - safe[:, None]).sum(axis=1)
        out = safe + np.log2(s)
    return np.where(np.isfinite(top), out, -np.inf)


_LC_CACHE: dict[int, np.ndarray] = {}


def _log2_binomials(n: int) -> np.ndarray:
    """Matrix lc[k, j] = log2 C(j, k) (or -inf when j < k)."""
    hit = _LC_CACHE.get(n)
    if hit is None:
        from math import lgamma, log

        lg = np.array([lgamma(i + 1) for i in range(n)]) / log(2.0)
        k = np.arange(n)[:, None]
        j = np.arange(n)[None, :]
        with np.errstate(invalid="ignore"):
            hit = np.where(j >= k, lg[np.maximum(j, 0)] - lg[k] - lg[np.maximum(j - k, 0)], -np.inf)
        _LC_CACHE[n] = hit
    return hit
