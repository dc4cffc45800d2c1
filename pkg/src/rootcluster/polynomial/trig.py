"""Certified enclosures of pi and of exp(i*pi*t) for rational t."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..numeric import ComplexBall, Dyadic, RealBall


def _atan_inv(x: int, g: int) -> tuple[int, int]:
    """atan(1/x) in fixed point 2**-g, with an error bound in the same units."""
    x2 = x * x
    power = (1 << g) // x  # 1/x**(2k+1), truncated
    total = 0
    k = 0
    while power:
        term = power // (2 * k + 1)
        total += -term if k & 1 else term
        power //= x2
        k += 1
    # each truncation costs < 1 unit; the tail is below one unit
    return total, 2 * k + 2


@lru_cache(maxsize=32)
def pi_ball(prec: int) -> RealBall:
    """Enclosure of pi with about ``prec`` correct bits (Machin's formula)."""
    g = prec + 20
    a, ea = _atan_inv(5, g)
    b, eb = _atan_inv(239, g)
    mid = 16 * a - 4 * b
    err = 16 * ea + 4 * eb
    return RealBall(Dyadic(mid, -g), Dyadic(err, -g))


def _sin_cos(x: RealBall, prec: int) -> tuple[RealBall, RealBall]:
    """Taylor series with a Lagrange remainder; intended for |x| <= 2."""
    p = prec + 16
    cos = RealBall.exact(1)
    sin = RealBall()
    term = RealBall.exact(1)  # x**m / m!
    m = 0
    stop = Dyadic(1, -(p + 4))
    while True:
        term = term.mul(x, p).div_int(m + 1, p)
        m += 1
        mag = abs(term.mid) + term.rad
        if mag < stop:
            break
        if m & 1:
            sin = sin.add(term, p) if (m // 2) % 2 == 0 else sin.sub(term, p)
        else:
            cos = cos.add(term, p) if (m // 2) % 2 == 0 else cos.sub(term, p)
    # |sin^(m)|, |cos^(m)| <= 1, so the remainder after degree m-1 is <= |x|^m/m!
    tail = RealBall(0, mag)
    return sin.add(tail, p), cos.add(tail, p)


def cis_pi(t, prec: int) -> ComplexBall:
    """Enclosure of ``exp(i*pi*t)`` for rational ``t``."""
    t = Fraction(t)
    t = t - 2 * (t // 2)  # now 0 <= t < 2
    if t > 1:
        t -= 2  # -1 < t <= 1
    exact = {Fraction(0): (1, 0), Fraction(1, 2): (0, 1), Fraction(1): (-1, 0), Fraction(-1, 2): (0, -1)}
    if t in exact:
        return ComplexBall.exact(*exact[t])
    sign = -1 if t < 0 else 1
    a = abs(t)
    flip = a > Fraction(1, 2)
    if flip:
        a = 1 - a
    x = pi_ball(prec + 8).mul(RealBall.from_fraction(a, prec + 16), prec + 16)
    s, c = _sin_cos(x, prec)
    if flip:
        c = c.neg()
    if sign < 0:
        s = s.neg()
    return ComplexBall(c, s)
