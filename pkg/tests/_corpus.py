"""Random polynomials with known rational roots, and discs clear of them."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from rootcluster.geometry import Disc
from rootcluster.numeric import Dyadic
from rootcluster.polynomial import ExactPoly

CLEARANCE = Fraction(1, 2**10)


@dataclass
class Case:
    f: ExactPoly
    roots: list[tuple[Fraction, Fraction]]
    disc: Disc
    inside: int


def expand(roots):
    coeffs = [(Fraction(1), Fraction(0))]
    for a, b in roots:
        nxt = [(Fraction(0), Fraction(0))] * (len(coeffs) + 1)
        for i, (cr, ci) in enumerate(coeffs):
            nr, ni = nxt[i + 1]
            nxt[i + 1] = (nr + cr, ni + ci)
            nr, ni = nxt[i]
            nxt[i] = (nr - (cr * a - ci * b), ni - (cr * b + ci * a))
        coeffs = nxt
    return coeffs


def _dist2(c, z):
    return (z[0] - c[0]) ** 2 + (z[1] - c[1]) ** 2


def count_inside(disc: Disc, roots) -> int | None:
    """Roots in the closed disc, or None when one sits within the clearance band."""
    c = (disc.cre.to_fraction(), disc.cim.to_fraction())
    r = disc.radius.to_fraction()
    lo, hi = (r * (1 - CLEARANCE)) ** 2, (r * (1 + CLEARANCE)) ** 2
    n = 0
    for z in roots:
        d2 = _dist2(c, z)
        if lo < d2 < hi:
            return None
        n += d2 <= lo
    return n


def random_root(rng: random.Random, den: int = 16, span: int = 2):
    return (Fraction(rng.randint(-span * den, span * den), den),
            Fraction(rng.randint(-span * den, span * den), den))


def random_disc(rng: random.Random, roots) -> Disc:
    if rng.random() < 0.5:  # aim near a root so the counts are interesting
        a, b = rng.choice(roots)
        cx = Dyadic.from_fraction(a + Fraction(rng.randint(-8, 8), 64), 20, "n")
        cy = Dyadic.from_fraction(b + Fraction(rng.randint(-8, 8), 64), 20, "n")
    else:
        cx = Dyadic(rng.randint(-64, 64), -5)
        cy = Dyadic(rng.randint(-64, 64), -5)
    return Disc(cx, cy, Dyadic(rng.randint(1, 31), -rng.randint(1, 5)))


def corpus(n: int = 200, seed: int = 20240611, max_degree: int = 12) -> list[Case]:
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        d = rng.randint(1, max_degree)
        roots = [random_root(rng) for _ in range(d)]
        if rng.random() < 0.3 and d >= 2:  # repeated roots
            roots[1] = roots[0]
        disc = random_disc(rng, roots)
        m = count_inside(disc, roots)
        if m is None:
            continue
        out.append(Case(ExactPoly(expand(roots), f"rand{len(out)}"), roots, disc, m))
    return out
