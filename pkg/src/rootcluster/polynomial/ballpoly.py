"""Ball-coefficient polynomials and their certified transforms.

These are the reference implementations: slow, simple, and used as the
oracle against which the vectorized kernels are tested.
"""

from __future__ import annotations

from ..geometry import Disc
from ..numeric import ComplexBall, RealBall

DEFAULT_PREC = 128


class BallPoly:
    """Polynomial with ComplexBall coefficients in ascending degree."""

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs, prec: int = DEFAULT_PREC):
        coeffs = [c if isinstance(c, ComplexBall) else ComplexBall.exact(c) for c in coeffs]
        if not coeffs:
            raise ValueError("a polynomial needs at least one coefficient")
        self.coeffs = coeffs
        self.prec = prec

    @classmethod
    def from_ints(cls, values, prec: int = DEFAULT_PREC) -> BallPoly:
        out = []
        for v in values:
            if isinstance(v, tuple):
                out.append(ComplexBall.exact(*v))
            elif isinstance(v, complex):
                out.append(ComplexBall.exact(int(v.real), int(v.imag)))
            else:
                out.append(ComplexBall.exact(v))
        return cls(out, prec)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __repr__(self) -> str:
        return f"BallPoly(degree={self.degree}, prec={self.prec})"

    def magnitude(self, i: int) -> RealBall:
        """Certified enclosure of the modulus of coefficient ``i``."""
        return self.coeffs[i].abs(self.prec)

    def contains(self, values) -> bool:
        """True when every exact value (re, im) lies in the matching ball."""
        if len(values) != len(self.coeffs):
            return False
        for c, v in zip(self.coeffs, values):
            re, im = (v, 0) if not isinstance(v, tuple) else v
            if not c.contains(re, im):
                return False
        return True

    def max_radius(self):
        return max(max(c.re.rad, c.im.rad) for c in self.coeffs)


def poly_mul(a: list[ComplexBall], b: list[ComplexBall], prec: int) -> list[ComplexBall]:
    """Schoolbook product of ball coefficient lists."""
    out = [ComplexBall() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j].add(x.mul(y, prec), prec)
    return out


def product_of_linear(roots: list[ComplexBall], prec: int) -> list[ComplexBall]:
    """Coefficients of prod (z - r) via a balanced product tree."""
    layer = [[r.neg(), ComplexBall.exact(1)] for r in roots]
    if not layer:
        return [ComplexBall.exact(1)]
    while len(layer) > 1:
        nxt = [poly_mul(layer[i], layer[i + 1], prec) for i in range(0, len(layer) - 1, 2)]
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = nxt
    return layer[0]


def taylor_shift(p: BallPoly, disc: Disc) -> BallPoly:
    """Enclosure of ``p(c + r z)`` for the disc ``D(c, r)``."""
    prec = p.prec
    c = ComplexBall.exact(disc.cre, disc.cim)
    a = list(p.coeffs)
    d = len(a) - 1
    # Horner-based shift: d passes of a[j] += c * a[j+1]
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            a[j] = a[j].add(c.mul(a[j + 1], prec), prec)
    r = RealBall.exact(disc.radius)
    rk = RealBall.exact(1)
    for k in range(1, d + 1):
        rk = rk.mul(r, prec)
        a[k] = a[k].mul_real(rk, prec)
    return BallPoly(a, prec)


def _coef(p: list[ComplexBall], i: int) -> ComplexBall | None:
    return p[i] if 0 <= i < len(p) else None


def graeffe_coeffs(p: list[ComplexBall], length: int, prec: int,
                   degree: int | None = None) -> list[ComplexBall]:
    """First ``length`` coefficients of the root-squared polynomial.

    g_k = (-1)^d [(-1)^k p_k^2 + 2 * sum_{j<k} (-1)^j p_j p_{2k-j}], entries
    past the end of ``p`` read as zero. ``degree`` (d) defaults to
    ``len(p) - 1``; pass it when ``p`` is only a prefix.
    """
    odd = ((len(p) - 1) if degree is None else degree) & 1
    out = []
    for k in range(length):
        pk = _coef(p, k)
        acc = ComplexBall()
        for j in range(k):
            q = _coef(p, 2 * k - j)
            if q is None:
                continue
            t = p[j].mul(q, prec)
            acc = acc.sub(t, prec) if j & 1 else acc.add(t, prec)
        acc = acc.mul_2exp(1)
        if pk is not None:
            sq = pk.sqr(prec)
            acc = acc.sub(sq, prec) if k & 1 else acc.add(sq, prec)
        out.append(acc.neg() if odd else acc)
    return out


def graeffe_step(p: BallPoly) -> BallPoly:
    """One Graeffe iteration g(z^2) = (-1)^d p(z) p(-z); roots get squared, monic stays monic."""
    return BallPoly(graeffe_coeffs(p.coeffs, len(p.coeffs), p.prec), p.prec)


def graeffe_head(p: BallPoly, m: int, length: int | None = None) -> list[BallPoly]:
    """Coefficient prefixes of the next ``m`` Graeffe iterates.

    The t-th returned prefix (t = 1..m) has ``2**(m-t) + 1`` coefficients,
    each obtained from the previous prefix alone. ``length`` overrides the
    prefix length when ``m == 1``.
    """
    if m < 1:
        return []
    out = []
    cur = p.coeffs
    for t in range(1, m + 1):
        n = (1 << (m - t)) + 1
        if length is not None and m == 1:
            n = length
        cur = graeffe_coeffs(cur, n, p.prec, p.degree)
        out.append(BallPoly(cur, p.prec))
    return out


def evaluate(p: BallPoly, z: ComplexBall) -> ComplexBall:
    """Horner evaluation in ball arithmetic."""
    acc = ComplexBall()
    for c in reversed(p.coeffs):
        acc = acc.mul(z, p.prec).add(c, p.prec)
    return acc
