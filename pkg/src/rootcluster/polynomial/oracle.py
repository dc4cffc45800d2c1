"""Coefficient oracles: polynomials that can be approximated to any precision."""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Callable, Sequence

from ..numeric import ComplexBall, Dyadic, RealBall
from .ballpoly import BallPoly, product_of_linear


class CoeffOracle:
    """Base class. Subclasses implement :meth:`_compute`."""

    exact = False

    def __init__(self, degree: int, name: str = "f"):
        if degree < 1:
            raise ValueError("polynomial degree must be at least 1")
        self.degree = degree
        self.name = name
        self._cache: dict[int, tuple[ComplexBall, ...]] = {}
        self._lock = threading.Lock()

    def approximate(self, L: int) -> list[ComplexBall]:
        """Coefficient balls of radius <= 2**-L, ascending degree."""
        if L < 2:
            raise ValueError("approximation precision must be at least 2 bits")
        hit = self._cache.get(L)
        if hit is None:
            hit = tuple(self._compute(L))
            with self._lock:
                hit = self._cache.setdefault(L, hit)
        return list(hit)

    def _compute(self, L: int) -> list[ComplexBall]:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name}, degree={self.degree})"


def _ball_for(q: Fraction, L: int) -> RealBall:
    if q == 0:
        return RealBall()
    mag = abs(q.numerator).bit_length() - q.denominator.bit_length() + 1
    return RealBall.from_fraction(q, max(2, L + mag + 2))


class ExactPoly(CoeffOracle):
    """Exact complex-rational coefficients ``(re, im)`` in ascending degree."""

    exact = True

    def __init__(self, coeffs: Sequence, name: str = "f"):
        cs = []
        for c in coeffs:
            if isinstance(c, tuple):
                re, im = c
            elif isinstance(c, complex):
                raise TypeError("use exact rationals, not floats")
            else:
                re, im = c, 0
            cs.append((Fraction(re), Fraction(im)))
        while len(cs) > 1 and cs[-1] == (0, 0):
            cs.pop()
        super().__init__(len(cs) - 1, name)
        self.coeffs = tuple(cs)
        self._ints = None

    def _compute(self, L: int) -> list[ComplexBall]:
        return [ComplexBall(_ball_for(re, L), _ball_for(im, L)) for re, im in self.coeffs]

    def gaussian_integers(self) -> tuple[tuple[int, int], ...]:
        """Coefficients times the lcm of all denominators (same roots)."""
        if self._ints is None:
            den = 1
            for re, im in self.coeffs:
                den = math.lcm(den, re.denominator, im.denominator)
            self._ints = tuple(
                (int(re * den), int(im * den)) for re, im in self.coeffs
            )
        return self._ints

    def to_ballpoly(self, prec: int = 128) -> BallPoly:
        return BallPoly(self.approximate(prec), prec)

    def value(self, re, im=0) -> tuple[Fraction, Fraction]:
        """Exact value at a complex rational point."""
        zr, zi = Fraction(re), Fraction(im)
        ar, ai = Fraction(0), Fraction(0)
        for cr, ci in reversed(self.coeffs):
            ar, ai = ar * zr - ai * zi + cr, ar * zi + ai * zr + ci
        return ar, ai


class RootProductOracle(CoeffOracle):
    """Monic polynomial given by certified enclosures of its roots.

    ``roots(prec)`` must return ComplexBalls of radius about 2**-prec. The
    product is expanded at L + 2d + 16 bits and the precision doubled until
    every coefficient radius is at most 2**-L.
    """

    def __init__(self, degree: int, roots: Callable[[int], list[ComplexBall]], name: str = "f"):
        super().__init__(degree, name)
        self._roots = roots

    def roots(self, prec: int) -> list[ComplexBall]:
        return self._roots(prec)

    def _compute(self, L: int) -> list[ComplexBall]:
        target = Dyadic(1, -L)
        wp = L + 2 * self.degree + 16
        while True:
            coeffs = product_of_linear(self._roots(wp), wp)
            worst = max(c.rad_bound() for c in coeffs)
            if worst <= target:
                return coeffs
            wp *= 2


def get_approximation(f: CoeffOracle, L: int) -> BallPoly:
    """Ball polynomial whose coefficients are within 2**-L of ``f``'s."""
    return BallPoly(f.approximate(L), max(L, 53))
