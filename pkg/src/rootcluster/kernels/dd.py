"""Double-double (about 106-bit) complex kernels.

A complex number is four float64 values (re_hi, re_lo, im_hi, im_lo). The
primitive error-free transforms are plain arithmetic, so the same functions
serve scalars inside compiled loops and whole arrays in the numpy fallback.
"""

from __future__ import annotations

import numpy as np

from ._jit import HAVE_NUMBA

_SPLIT = 134217729.0  # 2**27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _fast_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _split(a):
    t = _SPLIT * a
    hi = t - (t - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_add(ah, al, bh, bl):
    s, e = _two_sum(ah, bh)
    t, f = _two_sum(al, bl)
    s, e = _fast_two_sum(s, e + t)
    return _fast_two_sum(s, e + f)


def _dd_mul(ah, al, bh, bl):
    p, e = _two_prod(ah, bh)
    return _fast_two_sum(p, e + (ah * bl + al * bh))


def _cmul(arh, arl, aih, ail, brh, brl, bih, bil):
    acr, acl = _dd_mul(arh, arl, brh, brl)
    bdr, bdl = _dd_mul(aih, ail, bih, bil)
    adr, adl = _dd_mul(arh, arl, bih, bil)
    bcr, bcl = _dd_mul(aih, ail, brh, brl)
    rh, rl = _dd_add(acr, acl, -bdr, -bdl)
    ih, il = _dd_add(adr, adl, bcr, bcl)
    return rh, rl, ih, il


def _cabs(rh, rl, ih, il):
    xh, xl = _dd_mul(rh, rl, rh, rl)
    yh, yl = _dd_mul(ih, il, ih, il)
    nh, nl = _dd_add(xh, xl, yh, yl)
    s = np.sqrt(nh)
    p, e = _two_prod(s, s)
    with np.errstate(invalid="ignore", divide="ignore"):
        corr = ((nh - p) - e + nl) / (2.0 * s)
    corr = np.where(s > 0, corr, 0.0) if isinstance(s, np.ndarray) else (corr if s > 0 else 0.0)
    return _fast_two_sum(s, corr)


# compiled scalar versions for use inside loops
if HAVE_NUMBA:
    import numba

    _jit_inline = numba.njit(inline="always", cache=True)
    _split_j = _jit_inline(_split)
    two_sum = _jit_inline(_two_sum)
    fast_two_sum = _jit_inline(_fast_two_sum)

    @_jit_inline
    def _two_prod_j(a, b):
        p = a * b
        ah, al = _split_j(a)
        bh, bl = _split_j(b)
        return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl

    @_jit_inline
    def _dd_add_j(ah, al, bh, bl):
        s, e = two_sum(ah, bh)
        t, f = two_sum(al, bl)
        s, e = fast_two_sum(s, e + t)
        return fast_two_sum(s, e + f)

    @_jit_inline
    def _dd_mul_j(ah, al, bh, bl):
        p, e = _two_prod_j(ah, bh)
        return fast_two_sum(p, e + (ah * bl + al * bh))

    @_jit_inline
    def _cmul_j(arh, arl, aih, ail, brh, brl, bih, bil):
        acr, acl = _dd_mul_j(arh, arl, brh, brl)
        bdr, bdl = _dd_mul_j(aih, ail, bih, bil)
        adr, adl = _dd_mul_j(arh, arl, bih, bil)
        bcr, bcl = _dd_mul_j(aih, ail, brh, brl)
        rh, rl = _dd_add_j(acr, acl, -bdr, -bdl)
        ih, il = _dd_add_j(adr, adl, bcr, bcl)
        return rh, rl, ih, il

    @numba.njit(cache=True, nogil=True)
    def _shift_loop(rh, rl, ih, il, crh, crl, cih, cil):
        rh = rh.copy()
        rl = rl.copy()
        ih = ih.copy()
        il = il.copy()
        d = rh.shape[0] - 1
        for i in range(d):
            for j in range(d - 1, i - 1, -1):
                ph, pl, qh, ql = _cmul_j(crh, crl, cih, cil, rh[j + 1], rl[j + 1], ih[j + 1], il[j + 1])
                rh[j], rl[j] = _dd_add_j(rh[j], rl[j], ph, pl)
                ih[j], il[j] = _dd_add_j(ih[j], il[j], qh, ql)
        return rh, rl, ih, il

    @numba.njit(cache=True, nogil=True)
    def _graeffe_loop(rh, rl, ih, il):
        n = rh.shape[0]
        grh = np.zeros(n)
        grl = np.zeros(n)
        gih = np.zeros(n)
        gil = np.zeros(n)
        for k in range(n):
            lo = 2 * k - (n - 1)
            if lo < 0:
                lo = 0
            hi = 2 * k
            if hi > n - 1:
                hi = n - 1
            ah = 0.0
            al = 0.0
            bh = 0.0
            bl = 0.0
            for a in range(lo, hi + 1):
                b = 2 * k - a
                ph, pl, qh, ql = _cmul_j(rh[a], rl[a], ih[a], il[a], rh[b], rl[b], ih[b], il[b])
                if a & 1:
                    ph, pl, qh, ql = -ph, -pl, -qh, -ql
                ah, al = _dd_add_j(ah, al, ph, pl)
                bh, bl = _dd_add_j(bh, bl, qh, ql)
            grh[k] = ah
            grl[k] = al
            gih[k] = bh
            gil[k] = bl
        return grh, grl, gih, gil


def _shift_np(rh, rl, ih, il, crh, crl, cih, cil):
    rh, rl, ih, il = (np.array(x, dtype=np.float64) for x in (rh, rl, ih, il))
    d = rh.shape[0] - 1
    for i in range(d):
        lo = d - 1 - i
        ph, pl, qh, ql = _cmul(crh, crl, cih, cil, rh[lo + 1:], rl[lo + 1:], ih[lo + 1:], il[lo + 1:])
        rh[lo:d], rl[lo:d] = _dd_add(rh[lo:d], rl[lo:d], ph, pl)
        ih[lo:d], il[lo:d] = _dd_add(ih[lo:d], il[lo:d], qh, ql)
    return rh, rl, ih, il


def _graeffe_np(rh, rl, ih, il):
    n = rh.shape[0]
    acc = [np.zeros(n) for _ in range(4)]
    for a in range(n):
        # k with 0 <= 2k - a <= n - 1 and k <= n - 1
        k0 = (a + 1) // 2
        k1 = min(n - 1, (a + n - 1) // 2)
        if k1 < k0:
            continue
        ks = np.arange(k0, k1 + 1)
        b = 2 * ks - a
        ph, pl, qh, ql = _cmul(rh[a], rl[a], ih[a], il[a], rh[b], rl[b], ih[b], il[b])
        if a & 1:
            ph, pl, qh, ql = -ph, -pl, -qh, -ql
        acc[0][ks], acc[1][ks] = _dd_add(acc[0][ks], acc[1][ks], ph, pl)
        acc[2][ks], acc[3][ks] = _dd_add(acc[2][ks], acc[3][ks], qh, ql)
    return tuple(acc)


if HAVE_NUMBA:
    shift = _shift_loop
    graeffe = _graeffe_loop
else:
    shift = _shift_np
    graeffe = _graeffe_np

# vectorized helpers used outside the hot loops in both backends
dd_add = _dd_add
dd_mul = _dd_mul
cmul = _cmul
cabs = _cabs
two_sum_v = _two_sum
