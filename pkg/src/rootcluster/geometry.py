"""Boxes and discs on a dyadic grid."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .numeric import Dyadic


def _dy(x) -> Dyadic:
    if isinstance(x, Dyadic):
        return x
    return Dyadic.from_fraction(Fraction(x))


@dataclass(frozen=True)
class Disc:
    """Closed disc ``D(center, radius)`` with exact dyadic data."""

    cre: Dyadic
    cim: Dyadic
    radius: Dyadic

    def __post_init__(self):
        for name in ("cre", "cim", "radius"):
            object.__setattr__(self, name, _dy(getattr(self, name)))
        if self.radius <= 0:
            raise ValueError("disc radius must be positive")

    @property
    def center(self) -> tuple[Dyadic, Dyadic]:
        return (self.cre, self.cim)

    def scaled(self, k) -> Disc:
        """Same-center dilation ``k * self``."""
        return Disc(self.cre, self.cim, self.radius * _dy(k))

    def contains_point(self, re, im) -> bool:
        dx = Fraction(re) - self.cre.to_fraction()
        dy = Fraction(im) - self.cim.to_fraction()
        return dx * dx + dy * dy <= self.radius.to_fraction() ** 2

    def intersects_disc(self, other: Disc) -> bool:
        dx = self.cre - other.cre
        dy = self.cim - other.cim
        s = self.radius + other.radius
        return dx * dx + dy * dy <= s * s

    def intersects_box(self, box: Box) -> bool:
        h = box.width.shift(-1)
        gx = abs(self.cre - box.cre) - h
        gy = abs(self.cim - box.cim) - h
        gx = gx if gx > 0 else Dyadic(0)
        gy = gy if gy > 0 else Dyadic(0)
        return gx * gx + gy * gy <= self.radius * self.radius

    def __str__(self) -> str:
        return f"D(({self.cre.decimal(12)}, {self.cim.decimal(12)}), {self.radius.decimal(6)})"


@dataclass(frozen=True)
class Box:
    """Axis-aligned closed square given by its center and width."""

    cre: Dyadic
    cim: Dyadic
    width: Dyadic
    depth: int = 0

    def __post_init__(self):
        for name in ("cre", "cim", "width"):
            object.__setattr__(self, name, _dy(getattr(self, name)))
        if self.width <= 0:
            raise ValueError("box width must be positive")

    @property
    def center(self) -> tuple[Dyadic, Dyadic]:
        return (self.cre, self.cim)

    def children(self) -> list[Box]:
        q = self.width.shift(-2)
        h = self.width.shift(-1)
        t = self.depth + 1
        return [
            Box(self.cre - q, self.cim - q, h, t),
            Box(self.cre + q, self.cim - q, h, t),
            Box(self.cre - q, self.cim + q, h, t),
            Box(self.cre + q, self.cim + q, h, t),
        ]

    def corners(self) -> tuple[Dyadic, Dyadic, Dyadic, Dyadic]:
        h = self.width.shift(-1)
        return (self.cre - h, self.cim - h, self.cre + h, self.cim + h)

    def contains_point(self, re, im) -> bool:
        x0, y0, x1, y1 = (c.to_fraction() for c in self.corners())
        return x0 <= Fraction(re) <= x1 and y0 <= Fraction(im) <= y1

    def __str__(self) -> str:
        return f"Box(({self.cre.decimal(12)}, {self.cim.decimal(12)}), w={self.width.decimal(6)})"


def containing_disc(b: Box) -> Disc:
    """Disc centered at the box center with radius ``3/4`` of the width."""
    return Disc(b.cre, b.cim, b.width * Dyadic(3, -2))
