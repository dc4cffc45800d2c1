"""Text format for exact polynomials.

    degree d
    re_num/re_den im_num/im_den     # coefficient of z^0
    ...                             # d+1 lines, ascending degree

Numerators may carry a sign, denominators are positive. ``#`` starts a
comment; blank lines are ignored.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

from .oracle import ExactPoly

_RAT = re.compile(r"([+-]?\d+)/(\d+)\Z")


class PolyParseError(ValueError):
    pass


def _rational(tok: str, lineno: int) -> Fraction:
    m = _RAT.match(tok)
    if not m:
        raise PolyParseError(f"line {lineno}: expected num/den, got {tok!r}")
    den = int(m.group(2))
    if den == 0:
        raise PolyParseError(f"line {lineno}: zero denominator")
    return Fraction(int(m.group(1)), den)


def parse_poly_text(text: str, name: str = "file") -> ExactPoly:
    lines = []
    for n, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].split()
        if body:
            lines.append((n, body))
    if not lines:
        raise PolyParseError("empty polynomial file")
    n, head = lines[0]
    if len(head) != 2 or head[0] != "degree" or not head[1].isdigit():
        raise PolyParseError(f"line {n}: expected 'degree d'")
    d = int(head[1])
    if d < 1:
        raise PolyParseError(f"line {n}: degree must be at least 1")
    rows = lines[1:]
    if len(rows) != d + 1:
        raise PolyParseError(f"expected {d + 1} coefficient lines, found {len(rows)}")
    coeffs = []
    for n, toks in rows:
        if len(toks) != 2:
            raise PolyParseError(f"line {n}: expected two rationals")
        coeffs.append((_rational(toks[0], n), _rational(toks[1], n)))
    if coeffs[-1] == (0, 0):
        raise PolyParseError("leading coefficient is zero")
    return ExactPoly(coeffs, name)


def read_poly_file(path) -> ExactPoly:
    p = Path(path)
    return parse_poly_text(p.read_text(), p.stem)


def format_poly(f: ExactPoly) -> str:
    out = [f"degree {f.degree}"]
    for re_, im in f.coeffs:
        out.append(f"{re_.numerator}/{re_.denominator} {im.numerator}/{im.denominator}")
    return "\n".join(out) + "\n"
