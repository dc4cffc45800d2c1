"""Midpoint-radius real and complex balls over :class:`Dyadic`.

Every operation takes an explicit working precision ``prec`` (bits kept in
the midpoint). Rounding errors are folded into the radius, which is itself
kept as a short dyadic rounded upward.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from math import isqrt

from .dyadic import ONE, ZERO, Dyadic

#: significant bits kept in radii (always rounded up)
RAD_BITS = 30

#: soft-comparison slack used by :func:`int_compare`
THETA = Dyadic(1, -30)


class TriBool(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNRESOLVED = "unresolved"


def _up(x: Dyadic) -> Dyadic:
    return abs(x).round(RAD_BITS, "c")


def _round_mid(x: Dyadic, prec: int) -> tuple[Dyadic, Dyadic]:
    r = x.round(prec, "n")
    if r is x:
        return x, ZERO
    return r, abs(x - r)


def _as_dyadic(x) -> Dyadic:
    if isinstance(x, Dyadic):
        return x
    if isinstance(x, int):
        return Dyadic(x, 0)
    return Dyadic.from_fraction(Fraction(x))


def _sqrt_floor(x: Dyadic, prec: int) -> Dyadic:
    """Largest dyadic with ~``prec`` bits whose square is <= x (x >= 0)."""
    if x.man == 0:
        return ZERO
    m, e = x.man, x.exp
    if e & 1:
        m <<= 1
        e -= 1
    k = max(0, prec + 2 - m.bit_length() // 2)
    m <<= 2 * k
    e -= 2 * k
    return Dyadic(isqrt(m), e // 2)


def _sqrt_ceil(x: Dyadic, prec: int) -> Dyadic:
    if x.man == 0:
        return ZERO
    m, e = x.man, x.exp
    if e & 1:
        m <<= 1
        e -= 1
    k = max(0, prec + 2 - m.bit_length() // 2)
    m <<= 2 * k
    e -= 2 * k
    s = isqrt(m)
    if s * s != m:
        s += 1
    return Dyadic(s, e // 2)


class RealBall:
    """The closed interval ``[mid - rad, mid + rad]``."""

    __slots__ = ("mid", "rad")

    def __init__(self, mid=ZERO, rad=ZERO):
        mid = _as_dyadic(mid)
        rad = _as_dyadic(rad)
        if rad < 0:
            raise ValueError("ball radius must be non-negative")
        self.mid = mid
        self.rad = rad

    @classmethod
    def exact(cls, x) -> RealBall:
        return cls(_as_dyadic(x), ZERO)

    @classmethod
    def from_fraction(cls, q, prec: int) -> RealBall:
        """Enclosure of a rational ``q`` with a ``prec``-bit midpoint."""
        q = Fraction(q)
        den = q.denominator
        if den & (den - 1) == 0:
            return cls(*_round_mid(Dyadic.from_fraction(q), prec))
        m = Dyadic.from_fraction(q, prec, "n")
        err = abs(q - m.to_fraction())
        return cls(m, Dyadic.from_fraction(err, RAD_BITS, "c"))

    @classmethod
    def from_interval(cls, lo: Dyadic, hi: Dyadic, prec: int) -> RealBall:
        mid, err = _round_mid((lo + hi).shift(-1), prec)
        return cls(mid, _up((hi - lo).shift(-1) + err))

    def lower(self) -> Dyadic:
        return self.mid - self.rad

    def upper(self) -> Dyadic:
        return self.mid + self.rad

    def contains(self, x) -> bool:
        x = Fraction(x) if not isinstance(x, Dyadic) else x.to_fraction()
        return self.lower().to_fraction() <= x <= self.upper().to_fraction()

    def contains_ball(self, other: RealBall) -> bool:
        return self.lower() <= other.lower() and other.upper() <= self.upper()

    def overlaps(self, other: RealBall) -> bool:
        return self.lower() <= other.upper() and other.lower() <= self.upper()

    def contains_zero(self) -> bool:
        return abs(self.mid) <= self.rad

    def is_exact(self) -> bool:
        return self.rad.man == 0

    def __repr__(self) -> str:
        return f"RealBall({self.mid}, {self.rad})"

    def __str__(self) -> str:
        return f"[{self.mid.decimal(20)} +/- {self.rad.decimal(3)}]"

    def __eq__(self, other) -> bool:
        return isinstance(other, RealBall) and self.mid == other.mid and self.rad == other.rad

    def __hash__(self) -> int:
        return hash((self.mid, self.rad))

    # -- arithmetic -----------------------------------------------------

    def neg(self) -> RealBall:
        return RealBall(-self.mid, self.rad)

    def add(self, other: RealBall, prec: int) -> RealBall:
        mid, err = _round_mid(self.mid + other.mid, prec)
        return RealBall(mid, _up(self.rad + other.rad + err))

    def sub(self, other: RealBall, prec: int) -> RealBall:
        mid, err = _round_mid(self.mid - other.mid, prec)
        return RealBall(mid, _up(self.rad + other.rad + err))

    def mul(self, other: RealBall, prec: int) -> RealBall:
        mid, err = _round_mid(self.mid * other.mid, prec)
        rad = abs(self.mid) * other.rad + abs(other.mid) * self.rad + self.rad * other.rad + err
        return RealBall(mid, _up(rad))

    def sqr(self, prec: int) -> RealBall:
        mid, err = _round_mid(self.mid * self.mid, prec)
        rad = abs(self.mid) * self.rad.shift(1) + self.rad * self.rad + err
        return RealBall(mid, _up(rad))

    def mul_2exp(self, k: int) -> RealBall:
        return RealBall(self.mid.shift(k), self.rad.shift(k))

    def div_int(self, n: int, prec: int) -> RealBall:
        """Divide by a nonzero integer."""
        if n == 0:
            raise ZeroDivisionError("ball division by zero")
        q = self.mid.to_fraction() / n
        mid = Dyadic.from_fraction(q, prec, "n")
        err = abs(q - mid.to_fraction()) + self.rad.to_fraction() / abs(n)
        return RealBall(mid, Dyadic.from_fraction(err, RAD_BITS, "c"))

    def abs(self) -> RealBall:
        m = abs(self.mid)
        if m >= self.rad:
            return RealBall(m, self.rad)
        hi = _up(m + self.rad)
        return RealBall(hi.shift(-1), hi.shift(-1))

    def sqrt(self, prec: int) -> RealBall:
        hi = self.upper()
        if hi < 0:
            raise ValueError("square root of a negative ball")
        lo = self.lower()
        slo = _sqrt_floor(lo, prec) if lo > 0 else ZERO
        shi = _sqrt_ceil(hi, prec)
        return RealBall.from_interval(slo, shi, prec)

    def pow2k(self, n: int, prec: int) -> RealBall:
        """``self ** (2 ** n)`` by ``n`` certified squarings."""
        x = self
        for _ in range(n):
            x = x.sqr(prec)
        return x


class ComplexBall:
    """A rectangle ``re + i*im`` of two real balls."""

    __slots__ = ("re", "im")

    def __init__(self, re: RealBall | None = None, im: RealBall | None = None):
        self.re = re if re is not None else RealBall()
        self.im = im if im is not None else RealBall()

    @classmethod
    def exact(cls, re, im=0) -> ComplexBall:
        return cls(RealBall.exact(re), RealBall.exact(im))

    @classmethod
    def from_fractions(cls, re, im, prec: int) -> ComplexBall:
        return cls(RealBall.from_fraction(re, prec), RealBall.from_fraction(im, prec))

    def __repr__(self) -> str:
        return f"ComplexBall({self.re!r}, {self.im!r})"

    def __str__(self) -> str:
        return f"({self.re} + i{self.im})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ComplexBall) and self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def contains(self, re, im=0) -> bool:
        return self.re.contains(re) and self.im.contains(im)

    def overlaps(self, other: ComplexBall) -> bool:
        return self.re.overlaps(other.re) and self.im.overlaps(other.im)

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def rad_bound(self) -> Dyadic:
        """Upper bound on the modulus of any point minus the midpoint."""
        return self.re.rad + self.im.rad

    def neg(self) -> ComplexBall:
        return ComplexBall(self.re.neg(), self.im.neg())

    def conj(self) -> ComplexBall:
        return ComplexBall(self.re, self.im.neg())

    def add(self, other: ComplexBall, prec: int) -> ComplexBall:
        return ComplexBall(self.re.add(other.re, prec), self.im.add(other.im, prec))

    def sub(self, other: ComplexBall, prec: int) -> ComplexBall:
        return ComplexBall(self.re.sub(other.re, prec), self.im.sub(other.im, prec))

    def mul(self, other: ComplexBall, prec: int) -> ComplexBall:
        a, b, c, d = self.re, self.im, other.re, other.im
        # exact midpoints, single rounding per component
        rm, re_err = _round_mid(a.mid * c.mid - b.mid * d.mid, prec)
        im_, im_err = _round_mid(a.mid * d.mid + b.mid * c.mid, prec)
        am, bm, cm, dm = abs(a.mid), abs(b.mid), abs(c.mid), abs(d.mid)
        ar, br, cr, dr = a.rad, b.rad, c.rad, d.rad
        # |(x+e)(y+f) - xy| <= |x| f + |y| e + e f, summed over both products
        prop_re = am * cr + cm * ar + ar * cr + bm * dr + dm * br + br * dr
        prop_im = am * dr + dm * ar + ar * dr + bm * cr + cm * br + br * cr
        return ComplexBall(RealBall(rm, _up(prop_re + re_err)), RealBall(im_, _up(prop_im + im_err)))

    def mul_real(self, x: RealBall, prec: int) -> ComplexBall:
        return ComplexBall(self.re.mul(x, prec), self.im.mul(x, prec))

    def mul_2exp(self, k: int) -> ComplexBall:
        return ComplexBall(self.re.mul_2exp(k), self.im.mul_2exp(k))

    def sqr(self, prec: int) -> ComplexBall:
        return self.mul(self, prec)

    def abs(self, prec: int) -> RealBall:
        """Enclosure of the modulus via a certified square root."""
        n2 = self.re.mid * self.re.mid + self.im.mid * self.im.mid
        lo = _sqrt_floor(n2, prec)
        hi = _sqrt_ceil(n2, prec)
        r2 = self.re.rad * self.re.rad + self.im.rad * self.im.rad
        spread = _sqrt_ceil(r2, RAD_BITS) if r2.man else ZERO
        lo = lo - spread
        if lo < 0:
            lo = ZERO
        return RealBall.from_interval(lo, hi + spread, prec)

    def pow2k(self, n: int, prec: int) -> ComplexBall:
        x = self
        for _ in range(n):
            x = x.sqr(prec)
        return x


def ball_arith(op: str, args, working_precision: int):
    """Dispatch ``op`` in {add, sub, mul, sqr, abs, sqrt, pow2k} on balls."""
    if working_precision < 2:
        raise ValueError("working precision must be at least 2 bits")
    p = working_precision
    a = args[0]
    if op == "add":
        return a.add(args[1], p)
    if op == "sub":
        return a.sub(args[1], p)
    if op == "mul":
        return a.mul(args[1], p)
    if op == "sqr":
        return a.sqr(p)
    if op == "abs":
        return a.abs() if isinstance(a, RealBall) else a.abs(p)
    if op == "sqrt":
        return a.sqrt(p)
    if op == "pow2k":
        return a.pow2k(int(args[1]), p)
    raise ValueError(f"unknown ball operation {op!r}")


def int_compare(a: RealBall, b: RealBall, theta: Dyadic = THETA) -> TriBool:
    """Soft comparison of two enclosed reals.

    TRUE certifies a > b. FALSE certifies a < b, or that the enclosures pin
    |a - b| below ``theta * max(1, |b|)``. Anything else is UNRESOLVED.
    """
    alo, ahi = a.lower(), a.upper()
    blo, bhi = b.lower(), b.upper()
    if alo > bhi:
        return TriBool.TRUE
    if ahi < blo:
        return TriBool.FALSE
    spread = max(abs(ahi - blo), abs(alo - bhi))
    bmag = max(abs(blo), abs(bhi))
    scale = bmag if bmag > ONE else ONE
    if spread <= theta * scale:
        return TriBool.FALSE
    return TriBool.UNRESOLVED
