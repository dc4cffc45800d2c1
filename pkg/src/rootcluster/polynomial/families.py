"""Benchmark polynomial families."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from ..numeric import ComplexBall, RealBall
from .oracle import CoeffOracle, ExactPoly, RootProductOracle
from .trig import cis_pi

FAMILIES = (
    "bernoulli",
    "mignotte",
    "wilkinson",
    "spiral",
    "wilkinson_multiple",
    "mignotte_cluster",
    "nested_cluster",
)


class FamilyDomainError(ValueError):
    """Parameters outside a family's domain."""


@lru_cache(maxsize=8)
def _bernoulli_cached(n: int) -> tuple[Fraction, ...]:
    b = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum(comb(m + 1, j) * b[j] for j in range(m))
        b.append(-s / (m + 1))
    return tuple(b)


def bernoulli_numbers(n: int) -> list[Fraction]:
    """Exact b_0..b_n with b_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return list(_bernoulli_cached(n))


def _pmul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _ppow(a: list[int], k: int) -> list[int]:
    out = [1]
    for _ in range(k):
        out = _pmul(out, a)
    return out


def _padd(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _monomial(d: int) -> list[int]:
    return [0] * d + [1]


def bernoulli(d: int) -> ExactPoly:
    b = bernoulli_numbers(d)
    return ExactPoly([comb(d, k) * b[d - k] for k in range(d + 1)], f"Ber{d}")


def mignotte(d: int, a: int) -> ExactPoly:
    q = _ppow([-1, 1 << a], 2)
    c = _padd(_monomial(d), [-2 * x for x in q])
    return ExactPoly(c, f"Mig{d}(a={a})")


def wilkinson(d: int) -> ExactPoly:
    c = [1]
    for k in range(1, d + 1):
        c = _pmul(c, [-k, 1])
    return ExactPoly(c, f"Wil{d}")


def wilkinson_multiple(D: int) -> ExactPoly:
    c = [1]
    for k in range(1, D + 1):
        c = _pmul(c, _ppow([-k, 1], k))
    return ExactPoly(c, f"WilM({D})")


def mignotte_cluster(d: int, a: int, k: int) -> ExactPoly:
    s = 1 << a
    q = _pmul(_ppow([-1, s], k), _ppow([1, s], k))
    c = _padd(_monomial(d), [-2 * x for x in q])
    return ExactPoly(c, f"MigC{d}(a={a},k={k})")


def spiral_roots(d: int, prec: int) -> list[ComplexBall]:
    out = []
    for k in range(1, d + 1):
        rot = cis_pi(Fraction(4 * k, d), prec)
        out.append(rot.mul_real(RealBall.from_fraction(Fraction(k, d), prec), prec))
    return out


def spiral(d: int) -> RootProductOracle:
    return RootProductOracle(d, lambda prec: spiral_roots(d, prec), f"Spi{d}")


def _omega(prec: int) -> tuple[ComplexBall, ComplexBall]:
    h = RealBall.exact(3).sqrt(prec).mul_2exp(-1)
    half = RealBall.exact(Fraction(-1, 2))
    return ComplexBall(half, h), ComplexBall(half, h.neg())


def nested_cluster_roots(D: int, prec: int) -> list[ComplexBall]:
    w, w2 = _omega(prec)
    one = ComplexBall.exact(1)
    roots = [w, w2, one]
    for level in range(1, D):
        s = RealBall.exact(Fraction(1, 16**level))
        offsets = [w.mul_real(s, prec), w2.mul_real(s, prec), one.mul_real(s, prec)]
        roots = [r.add(o, prec) for r in roots for o in offsets]
    return roots


def nested_cluster(D: int) -> RootProductOracle:
    return RootProductOracle(3**D, lambda prec: nested_cluster_roots(D, prec), f"NesC({D})")


def _need(cond: bool, msg: str):
    if not cond:
        raise FamilyDomainError(msg)


def make_family(name: str, *params) -> CoeffOracle:
    """Build one of the seven benchmark families by name."""
    p = [int(x) for x in params]
    if name == "bernoulli":
        _need(len(p) == 1 and p[0] >= 1, "bernoulli takes d >= 1")
        return bernoulli(p[0])
    if name == "mignotte":
        _need(len(p) == 2 and p[0] >= 3 and p[1] >= 1, "mignotte takes d >= 3, a >= 1")
        return mignotte(*p)
    if name == "wilkinson":
        _need(len(p) == 1 and p[0] >= 1, "wilkinson takes d >= 1")
        return wilkinson(p[0])
    if name == "spiral":
        _need(len(p) == 1 and p[0] >= 1, "spiral takes d >= 1")
        return spiral(p[0])
    if name == "wilkinson_multiple":
        _need(len(p) == 1 and p[0] >= 1, "wilkinson_multiple takes D >= 1")
        return wilkinson_multiple(p[0])
    if name == "mignotte_cluster":
        _need(len(p) == 3 and p[1] >= 1 and p[2] >= 1 and p[0] >= 2 * p[2],
              "mignotte_cluster takes d, a >= 1, k >= 1 with d >= 2k")
        return mignotte_cluster(*p)
    if name == "nested_cluster":
        _need(len(p) == 1 and p[0] >= 1, "nested_cluster takes D >= 1")
        return nested_cluster(p[0])
    raise FamilyDomainError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")


def parse_family(spec: str) -> CoeffOracle:
    """``"name:p1,p2,..."`` as used on the command line."""
    name, _, rest = spec.partition(":")
    params = [x for x in rest.split(",") if x.strip()] if rest else []
    try:
        return make_family(name.strip(), *params)
    except ValueError as e:
        if isinstance(e, FamilyDomainError):
            raise
        raise FamilyDomainError(f"bad parameters in {spec!r}") from e
