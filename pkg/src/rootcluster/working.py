"""Disc polynomials at a given working precision.

``disc_poly(f, disc, L)`` returns the Taylor shift f(c + r z) enclosed at
precision ``L`` in one of three representations:

* L <= 53: complex128 midpoints with float64 radii,
* L <= 106: double-double midpoints with float64 radii,
* otherwise: fixed-point Gaussian integers with integer radii.

Every representation stores ``coefficient = stored * 2**E`` and keeps the
largest stored magnitude near one (or 2**W in the integer case), so that
Graeffe iterates never overflow. Radii bound the complex modulus of the
error and absorb every rounding, including underflow.

Methods return ``None`` in place of a polynomial when the representation
cannot hold the values (overflow); callers treat that as "unresolved".
"""

from __future__ import annotations

import math

import numpy as np

from .geometry import Disc
from .kernels import bigint, dd, fp
from .numeric import ComplexBall, Dyadic, RealBall, TriBool
from .polynomial import CoeffOracle

U = 2.0**-53
U2 = 2.0**-100  # per-operation bound for double-double arithmetic
ETA = 2.0**-1000  # absorbs all underflow
THETA_BITS = 30

TRUE, FALSE, UNRESOLVED = TriBool.TRUE, TriBool.FALSE, TriBool.UNRESOLVED


# -- conversions ---------------------------------------------------------------


def _dy_float(x: Dyadic, shift: int = 0) -> float:
    """Correctly rounded float of ``x * 2**-shift``; may raise OverflowError."""
    e = x.exp - shift
    if e >= 0:
        return float(x.man << e)
    return x.man / (1 << -e)


def _dy_float_up(x: Dyadic, shift: int = 0) -> float:
    """Float >= |x| * 2**-shift."""
    v = abs(_dy_float(x, shift))
    return v * (1 + 2 * U) + 2.0**-1074


def _pow_cache(mu: float, d: int, cache: dict = {}) -> np.ndarray:
    hit = cache.get((mu, d))
    if hit is None:
        hit = np.cumprod(np.concatenate(([1.0], np.full(d, mu))))
        cache[(mu, d)] = hit
    return hit


def _pow_cache_dd(mu: float, d: int, cache: dict = {}) -> tuple[np.ndarray, np.ndarray]:
    hit = cache.get((mu, d))
    if hit is None:
        h = np.empty(d + 1)
        lo = np.empty(d + 1)
        h[0], lo[0] = 1.0, 0.0
        for k in range(1, d + 1):
            h[k], lo[k] = dd.dd_mul(h[k - 1], lo[k - 1], mu, 0.0)
        hit = (h, lo)
        cache[(mu, d)] = hit
    return hit


def _work_cache(f: CoeffOracle) -> dict:
    c = f.__dict__.get("_work_cache")
    if c is None:
        c = f.__dict__.setdefault("_work_cache", {})
    return c


def _source_dyadics(f: CoeffOracle, bits: int):
    """(re, im, rad) Dyadic triples with radius small relative to the max."""
    if f.exact:
        return [(Dyadic(a), Dyadic(b), Dyadic(0)) for a, b in f.gaussian_integers()]
    L = bits + 10
    while True:
        cs = f.approximate(L)
        top = max(max(abs(c.re.mid), abs(c.im.mid)) for c in cs)
        lg = top.log2_abs()
        if lg >= 0 or L >= bits + 10 - math.floor(lg):
            return [(c.re.mid, c.im.mid, c.re.rad + c.im.rad) for c in cs]
        L = bits + 10 - math.floor(lg)


def _top_exponent(src) -> int:
    lg = max(max(re.log2_abs(), im.log2_abs()) for re, im, _ in src)
    return math.floor(lg) + 1


def _float_input(f: CoeffOracle):
    cache = _work_cache(f)
    hit = cache.get("f64")
    if hit is None:
        src = _source_dyadics(f, 53)
        E0 = _top_exponent(src)
        m = np.array([complex(_dy_float(a, E0), _dy_float(b, E0)) for a, b, _ in src])
        rad = np.array([_dy_float_up(r, E0) for _, _, r in src])
        rad = rad + np.abs(m) * (3 * U) + ETA
        hit = (m, rad, E0)
        cache["f64"] = hit
    return hit


def _dd_input(f: CoeffOracle):
    cache = _work_cache(f)
    hit = cache.get("dd")
    if hit is None:
        src = _source_dyadics(f, 106)
        E0 = _top_exponent(src)
        parts = []
        for a, b, _ in src:
            row = []
            for x in (a, b):
                h = _dy_float(x, E0)
                rest = x - Dyadic.from_float(h).shift(E0)
                row += [h, _dy_float(rest, E0)]
            parts.append(row)
        arr = np.array(parts, dtype=np.float64).reshape(-1, 4)
        rad = np.array([_dy_float_up(r, E0) for _, _, r in src])
        mag = np.hypot(arr[:, 0], arr[:, 2])
        rad = rad + mag * (4 * U * U) + ETA
        hit = (arr[:, 0].copy(), arr[:, 1].copy(), arr[:, 2].copy(), arr[:, 3].copy(), rad, E0)
        cache["dd"] = hit
    return hit


def _big_input(f: CoeffOracle, W: int):
    cache = _work_cache(f)
    key = ("big", W)
    hit = cache.get(key)
    if hit is None:
        src = _source_dyadics(f, W)
        E = _top_exponent(src) - W
        re, im, rad = [], [], []
        for a, b, r in src:
            for x, out in ((a, re), (b, im)):
                e = x.exp - E
                out.append(x.man << e if e >= 0 else x.man >> -e)
            exact = a.exp >= E and b.exp >= E
            rr = 0 if exact else 2
            if r:
                e = r.exp - E
                rr += (r.man << e) if e >= 0 else -((-r.man) >> -e)
            rad.append(rr)
        hit = (re, im, rad, E)
        cache[key] = hit
    return hit


# -- shared decision logic -------------------------------------------------


_STATUS = {1: TRUE, 0: FALSE, -1: UNRESOLVED}


def _decide_floats(lo: np.ndarray, hi: np.ndarray, r0: int, k: int):
    status, r = fp.decide(lo, hi, r0, k, 2.0**-THETA_BITS)
    return _STATUS[int(status)], (None if status == 0 else int(r))


LOG_SLACK = 2.0**-40


def _log2_pair(lo, hi, E: int) -> tuple[float, float]:
    """log2 bounds of [lo, hi] * 2**E, widened to cover log2 rounding."""
    a = math.log2(lo) + E if lo > 0 else -math.inf
    b = math.log2(hi) + E if hi > 0 else -math.inf
    if a > -math.inf:
        a -= LOG_SLACK * (1 + abs(a))
    if b > -math.inf:
        b += LOG_SLACK * (1 + abs(b))
    return a, b


def _disc_floats(disc: Disc):
    """Float center with its error bound, and the radius split as mu * 2**e."""
    cr = _dy_float(disc.cre)
    ci = _dy_float(disc.cim)
    err = abs(disc.cre - Dyadic.from_float(cr)) + abs(disc.cim - Dyadic.from_float(ci))
    delta = _dy_float_up(err) if err else 0.0
    rf = _dy_float(disc.radius)
    if Dyadic.from_float(rf) != disc.radius:
        return None
    mu, er = math.frexp(rf)
    return complex(cr, ci), delta, mu, er


class WorkPoly:
    tier = "abstract"
    degree: int
    E: int

    def graeffe(self):
        raise NotImplementedError

    def head(self, length: int):
        raise NotImplementedError

    def decide(self, r0: int, k: int):
        raise NotImplementedError

    def mag_ball(self, j: int, prec: int) -> RealBall:
        raise NotImplementedError

    def log2_bounds(self, j: int) -> tuple[float, float]:
        """Bounds on log2 |coefficient j| (-inf for a zero lower bound)."""
        raise NotImplementedError


# -- float64 tier ------------------------------------------------------------------


class FloatPoly(WorkPoly):
    tier = "f64"

    def __init__(self, m: np.ndarray, rad: np.ndarray, E: int):
        self.m = m
        self.rad = rad
        self.E = E
        self.degree = m.shape[0] - 1

    @classmethod
    def build(cls, f: CoeffOracle, disc: Disc):
        geo = _disc_floats(disc)
        if geo is None:
            return None
        c, delta, mu, er = geo
        m, rad_in, E0 = _float_input(f)
        d = m.shape[0] - 1
        with np.errstate(all="ignore"):
            q = np.abs(m) * (1 + 2 * U) + rad_in
            xc = abs(c) * (1 + 2 * U) + delta
            gpos = (2 * d + 4) * U
            M = fp.shift_real(q, xc) * (1 + gpos)
            R = fp.shift_real(rad_in, xc) * (1 + gpos)
            h = fp.shift_complex(m, c) if c != 0 else m.copy()
            err = R + (4 * d + 8) * U * M
            if delta:
                dm = np.zeros(d + 1)
                dm[:d] = delta * np.arange(1, d + 1) * M[1:]
                err = err + dm
            err = err * (1 + 4 * U)
            pw = _pow_cache(mu, d)
            hp = h * pw
            ks = np.arange(d + 1)
            up = (np.abs(hp) + err * pw) * (1 + (ks + 4) * U)
            if not (np.all(np.isfinite(up)) and np.all(np.isfinite(hp))):
                return None
            top = up.max()
            if top == 0:
                return None
            exps = np.frexp(np.where(up > 0, up, top))[1] + ks * er
            S = int(exps.max())
            sh = ks * er - S
            g = np.ldexp(hp.real, sh) + 1j * np.ldexp(hp.imag, sh)
            rg = np.ldexp(up - np.abs(hp) * (1 - 2 * U), sh) * (1 + 2 * U) + ETA
        return cls(g, rg, E0 + S)

    def _step(self, m, rad):
        g, rg, S, ok = fp.enclose_graeffe(m, rad)
        return (g, rg, S) if ok else None

    def graeffe(self):
        out = self._step(self.m, self.rad)
        if out is None:
            return None
        g, rg, S = out
        return FloatPoly(g, rg, 2 * self.E + S)

    def head(self, length: int):
        n = min(self.m.shape[0], 2 * length - 1)
        out = self._step(self.m[:n], self.rad[:n])
        if out is None:
            return None
        g, rg, S = out
        return FloatPoly(g[:length].copy(), rg[:length].copy(), 2 * self.E + S)

    def bounds(self):
        a = np.abs(self.m)
        lo = np.maximum(0.0, a * (1 - 2 * U) - self.rad) * (1 - U)
        hi = (a * (1 + 2 * U) + self.rad) * (1 + U)
        return lo, hi

    def decide(self, r0: int, k: int):
        return _decide_floats(*self.bounds(), r0, k)

    def log2_bounds(self, j: int) -> tuple[float, float]:
        lo, hi = self.bounds()
        return _log2_pair(lo[j], hi[j], self.E)

    def mag_ball(self, j: int, prec: int) -> RealBall:
        z = ComplexBall.exact(Dyadic.from_float(self.m[j].real), Dyadic.from_float(self.m[j].imag))
        b = z.abs(prec)
        b = RealBall(b.mid, b.rad + Dyadic.from_float(float(self.rad[j])))
        return b.mul_2exp(self.E)


# -- double-double tier ----------------------------------------------------------


class DDPoly(WorkPoly):
    tier = "dd"

    def __init__(self, rh, rl, ih, il, rad, E: int):
        self.rh, self.rl, self.ih, self.il = rh, rl, ih, il
        self.rad = rad
        self.E = E
        self.degree = rh.shape[0] - 1

    @classmethod
    def build(cls, f: CoeffOracle, disc: Disc):
        cr_h = _dy_float(disc.cre)
        ci_h = _dy_float(disc.cim)
        rr = disc.cre - Dyadic.from_float(cr_h)
        ri = disc.cim - Dyadic.from_float(ci_h)
        cr_l = _dy_float(rr)
        ci_l = _dy_float(ri)
        err = abs(rr - Dyadic.from_float(cr_l)) + abs(ri - Dyadic.from_float(ci_l))
        delta = _dy_float_up(err) if err else 0.0
        rf = _dy_float(disc.radius)
        if Dyadic.from_float(rf) != disc.radius:
            return None
        mu, er = math.frexp(rf)
        rh, rl, ih, il, rad_in, E0 = _dd_input(f)
        d = rh.shape[0] - 1
        with np.errstate(all="ignore"):
            q = np.hypot(rh, ih) * (1 + 4 * U) + rad_in
            xc = math.hypot(cr_h, ci_h) * (1 + 4 * U) + delta
            gpos = (2 * d + 4) * U
            M = fp.shift_real(q, xc) * (1 + gpos)
            R = fp.shift_real(rad_in, xc) * (1 + gpos)
            if cr_h or ci_h:
                hrh, hrl, hih, hil = dd.shift(rh, rl, ih, il, cr_h, cr_l, ci_h, ci_l)
            else:
                hrh, hrl, hih, hil = rh.copy(), rl.copy(), ih.copy(), il.copy()
            err_s = R + (4 * d + 8) * U2 * M
            if delta:
                dm = np.zeros(d + 1)
                dm[:d] = delta * np.arange(1, d + 1) * M[1:]
                err_s = err_s + dm
            err_s = err_s * (1 + 4 * U)
            ph, pl = _pow_cache_dd(mu, d)
            ks = np.arange(d + 1)
            grh, grl = dd.dd_mul(hrh, hrl, ph, pl)
            gih, gil = dd.dd_mul(hih, hil, ph, pl)
            mag = np.hypot(grh, gih) * (1 + 4 * U)
            rg = (err_s * ph * (1 + 4 * U) + mag * (ks + 4) * U2) * (1 + 2 * U)
            up = mag + rg
            if not (np.all(np.isfinite(up)) and np.all(np.isfinite(grl)) and np.all(np.isfinite(gil))):
                return None
            top = up.max()
            if top == 0:
                return None
            exps = np.frexp(np.where(up > 0, up, top))[1] + ks * er
            S = int(exps.max())
            sh = ks * er - S
            out = [np.ldexp(x, sh) for x in (grh, grl, gih, gil)]
            rg = np.ldexp(rg, sh) + ETA
        return cls(*out, rg, E0 + S)

    def _step(self, rh, rl, ih, il, rad):
        n = rh.shape[0]
        with np.errstate(all="ignore"):
            q = np.hypot(rh, ih) * (1 + 4 * U) + rad
            g = dd.graeffe(rh, rl, ih, il)
            cq = np.convolve(q, q)[0::2][:n]
            rq = np.convolve(rad, q)[0::2][:n]
            rg = (2 * rq + (2 * n + 16) * U2 * cq) * (1 + (2 * n + 8) * U) + ETA
            up = np.hypot(g[0], g[2]) * (1 + 4 * U) + rg
            if not (np.all(np.isfinite(up)) and all(np.all(np.isfinite(x)) for x in g)):
                return None
            S = int(np.frexp(up.max())[1])
            g = [np.ldexp(x, -S) for x in g]
            rg = np.ldexp(rg, -S) + ETA
        return g, rg, S

    def graeffe(self):
        out = self._step(self.rh, self.rl, self.ih, self.il, self.rad)
        if out is None:
            return None
        g, rg, S = out
        return DDPoly(*g, rg, 2 * self.E + S)

    def head(self, length: int):
        n = min(self.rh.shape[0], 2 * length - 1)
        out = self._step(self.rh[:n], self.rl[:n], self.ih[:n], self.il[:n], self.rad[:n])
        if out is None:
            return None
        g, rg, S = out
        return DDPoly(*(x[:length].copy() for x in g), rg[:length].copy(), 2 * self.E + S)

    def bounds(self):
        mh, ml = dd.cabs(self.rh, self.rl, self.ih, self.il)
        mag = mh + ml
        lo = np.maximum(0.0, mag * (1 - 4 * U) - self.rad) * (1 - U)
        hi = (mag * (1 + 4 * U) + self.rad) * (1 + U)
        return lo, hi

    def decide(self, r0: int, k: int):
        return _decide_floats(*self.bounds(), r0, k)

    def log2_bounds(self, j: int) -> tuple[float, float]:
        lo, hi = self.bounds()
        return _log2_pair(lo[j], hi[j], self.E)

    def mag_ball(self, j: int, prec: int) -> RealBall:
        re = Dyadic.from_float(float(self.rh[j])) + Dyadic.from_float(float(self.rl[j]))
        im = Dyadic.from_float(float(self.ih[j])) + Dyadic.from_float(float(self.il[j]))
        b = ComplexBall.exact(re, im).abs(prec)
        b = RealBall(b.mid, b.rad + Dyadic.from_float(float(self.rad[j])))
        return b.mul_2exp(self.E)


# -- fixed-point integer tier ------------------------------------------------


def _ceil_shift(x: int, s: int) -> int:
    """ceil(x * 2**-s) for x >= 0 (s may be negative)."""
    return x << -s if s <= 0 else -((-x) >> s)


def _pow2_ceil(y: float) -> int:
    """An integer >= 2**y."""
    e = math.floor(y)
    m = math.ceil(2.0 ** (y - e + 32)) + 1
    return m << (e - 32) if e >= 32 else -((-m) >> (32 - e))


def _radius_majorant(base: list[int], cr: int, ci: int, t: int) -> list[int]:
    """Integers bounding sum_j base_j C(j,k) |c|^(j-k) with c = (cr + i ci) 2**-t."""
    n2 = cr * cr + ci * ci
    log2c = 0.5 * math.log2(n2) - t + 2.0**-30
    logA = np.array([math.log2(b) if b > 0 else -math.inf for b in base])
    out = fp.log2_shift_majorant(logA, log2c)
    return [_pow2_ceil(float(y) + 2.0**-20 * (1 + abs(float(y)))) if np.isfinite(y) else 0
            for y in out]


class BigPoly(WorkPoly):
    tier = "big"

    def __init__(self, re, im, rad, E: int, W: int):
        self.re, self.im, self.rad = re, im, rad
        self.E = E
        self.W = W
        self.degree = len(re) - 1

    @classmethod
    def build(cls, f: CoeffOracle, disc: Disc, L: int):
        W = L + 16
        re, im, rad, E = _big_input(f, W + 8)
        d = len(re) - 1
        # center as (cr + i ci) 2**-t
        t = max(0, -disc.cre.exp if disc.cre else 0, -disc.cim.exp if disc.cim else 0)
        cr = disc.cre.man << (disc.cre.exp + t) if disc.cre else 0
        ci = disc.cim.man << (disc.cim.exp + t) if disc.cim else 0
        if cr or ci:
            hr, hi_ = bigint.shift_fixed(re, im, cr, ci, t)
            hrad = _radius_majorant([r + 2 * d for r in rad], cr, ci, t)
        else:
            hr, hi_, hrad = list(re), list(im), list(rad)
        # scale coefficient k by r^k = (R 2**er)^k
        R, er = disc.radius.man, disc.radius.exp
        vals_r, vals_i, vrad, keys = [], [], [], []
        p = 1
        for k in range(d + 1):
            a, b, rr = hr[k] * p, hi_[k] * p, hrad[k] * p
            vals_r.append(a)
            vals_i.append(b)
            vrad.append(rr)
            size = max(abs(a), abs(b)) + rr
            keys.append(size.bit_length() + er * k if size else None)
            p *= R
        S = max(x for x in keys if x is not None) - (W + 8)
        gr, gi, grad = [], [], []
        for k in range(d + 1):
            sh = er * k - S
            a, b, rr = vals_r[k], vals_i[k], vrad[k]
            if sh >= 0:
                gr.append(a << sh)
                gi.append(b << sh)
                grad.append(rr << sh)
            else:
                gr.append(a >> -sh)
                gi.append(b >> -sh)
                grad.append(_ceil_shift(rr, -sh) + 2)
        return cls(gr, gi, grad, E + S, W)

    def _float_view(self, re, im, rad):
        """Scaled float64 magnitudes and radii: (s, mag, radf), values * 2**s."""
        top = max(max(abs(a).bit_length(), abs(b).bit_length(), r.bit_length())
                  for a, b, r in zip(re, im, rad))
        s = max(0, top - 500)
        a = np.array([float(x >> s) for x in re])
        b = np.array([float(x >> s) for x in im])
        # floor shifts lose < 1 unit per part; rad rounds up
        radf = np.array([float(-((-r) >> s)) for r in rad]) * (1 + 2 * U) + 2.0
        return s, np.hypot(a, b), radf

    def bounds(self):
        s, mag, radf = self._float_view(self.re, self.im, self.rad)
        lo = np.maximum(0.0, mag * (1 - 4 * U) - radf) * (1 - U)
        hi = (mag * (1 + 4 * U) + radf) * (1 + U)
        return lo, hi, s

    def _step(self, re, im, rad):
        n = len(re)
        gr, gi = bigint.graeffe(re, im)
        if any(rad):
            s, mag, radf = self._float_view(re, im, rad)
            q = (mag * (1 + 4 * U) + radf) * (1 + U)
            rq = np.convolve(radf, q)[0::2][:n] * (2 * (1 + (2 * n + 4) * U))
            grad = [int(math.ceil(v)) << (2 * s) for v in rq.tolist()]
        else:
            grad = [0] * n
        top = max(max(abs(a), abs(b)) + r for a, b, r in zip(gr, gi, grad))
        S = max(0, top.bit_length() - (self.W + 8))
        if S:
            gr = [a >> S for a in gr]
            gi = [b >> S for b in gi]
            grad = [_ceil_shift(r, S) + 2 for r in grad]
        return gr, gi, grad, S

    def graeffe(self):
        gr, gi, grad, S = self._step(self.re, self.im, self.rad)
        return BigPoly(gr, gi, grad, 2 * self.E + S, self.W)

    def head(self, length: int):
        n = min(len(self.re), 2 * length - 1)
        gr, gi, grad, S = self._step(self.re[:n], self.im[:n], self.rad[:n])
        return BigPoly(gr[:length], gi[:length], grad[:length], 2 * self.E + S, self.W)

    def decide(self, r0: int, k: int):
        lo, hi, _ = self.bounds()
        return _decide_floats(lo, hi, r0, k)

    def log2_bounds(self, j: int) -> tuple[float, float]:
        # one coefficient on its own scale, same rounding as _float_view
        a, b, r = self.re[j], self.im[j], self.rad[j]
        s = max(0, max(abs(a).bit_length(), abs(b).bit_length(), r.bit_length()) - 500)
        mag = math.hypot(float(a >> s), float(b >> s))
        radf = float(-((-r) >> s)) * (1 + 2 * U) + 2.0
        lo = max(0.0, mag * (1 - 4 * U) - radf) * (1 - U)
        hi = (mag * (1 + 4 * U) + radf) * (1 + U)
        return _log2_pair(lo, hi, self.E + s)

    def mag_ball(self, j: int, prec: int) -> RealBall:
        b = ComplexBall.exact(self.re[j], self.im[j]).abs(prec)
        b = RealBall(b.mid, b.rad + Dyadic(self.rad[j]))
        return b.mul_2exp(self.E)


def disc_poly(f: CoeffOracle, disc: Disc, L: int):
    """Taylor shift of ``f`` onto ``disc`` at working precision ``L``."""
    if L <= 53:
        return FloatPoly.build(f, disc)
    if L <= 106:
        return DDPoly.build(f, disc)
    return BigPoly.build(f, disc, L)
