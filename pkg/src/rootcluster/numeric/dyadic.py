"""Exact dyadic rationals ``mantissa * 2**exponent``."""

from __future__ import annotations

from fractions import Fraction
import math

_EXP_LIMIT = 1 << 63


class DyadicOverflow(ArithmeticError):
    """Raised when an exponent leaves the signed 64-bit range."""


def _trailing_zeros(n: int) -> int:
    return (n & -n).bit_length() - 1


class Dyadic:
    """An exact dyadic number with canonical (zero or odd) mantissa.

    Ring operations and shifts are exact. Rounding only happens through
    :meth:`round` and the ``from_fraction`` constructor.
    """

    __slots__ = ("man", "exp")

    def __init__(self, man: int = 0, exp: int = 0):
        man = int(man)
        if man == 0:
            exp = 0
        else:
            tz = _trailing_zeros(man)
            if tz:
                man >>= tz
                exp += tz
            if not -_EXP_LIMIT <= exp < _EXP_LIMIT:
                raise DyadicOverflow(f"dyadic exponent {exp} out of range")
        self.man = man
        self.exp = exp

    # -- construction ---------------------------------------------------

    @classmethod
    def from_int(cls, n: int) -> Dyadic:
        return cls(n, 0)

    @classmethod
    def from_float(cls, x: float) -> Dyadic:
        if not math.isfinite(x):
            raise ValueError("cannot convert non-finite float to Dyadic")
        m, e = math.frexp(x)
        return cls(int(m * (1 << 53)), e - 53)

    @classmethod
    def from_fraction(cls, q, prec: int | None = None, rnd: str = "n") -> Dyadic:
        """Convert a rational; exact when ``q`` is dyadic and ``prec`` is None.

        With ``prec`` the result carries at most ``prec`` significant bits,
        rounded with ``rnd`` in {"n" nearest, "f" floor, "c" ceil}.
        """
        q = Fraction(q)
        num, den = q.numerator, q.denominator
        if den & (den - 1) == 0:
            d = cls(num, -(den.bit_length() - 1))
            return d if prec is None else d.round(prec, rnd)
        if prec is None:
            raise ValueError(f"{q} is not dyadic; a precision is required")
        neg = num < 0
        a = -num if neg else num
        # floor(a * 2**s / den) has prec+1 or prec+2 bits
        s = prec + 1 - (a.bit_length() - den.bit_length())
        if s >= 0:
            m, r = divmod(a << s, den)
        else:
            m, r = divmod(a, den << -s)
        extra = m.bit_length() - prec
        lo = m >> extra
        rem = m - (lo << extra)
        half = 1 << (extra - 1)
        # true magnitude lies strictly between lo and lo+1 (in units of 2**(extra-s))
        if rnd == "n":
            up = rem > half or (rem == half and r != 0)
        else:
            up = (rnd == "c") != neg
        if up:
            lo += 1
        return cls(-lo if neg else lo, extra - s)

    @classmethod
    def parse(cls, text: str) -> Dyadic:
        """Parse ``"m*2^e"``, an integer, or an exact dyadic decimal string."""
        t = text.strip().replace(" ", "")
        if "*2^" in t:
            m, e = t.split("*2^")
            return cls(int(m), int(e))
        if t.startswith("2^"):
            return cls(1, int(t[2:]))
        return cls.from_fraction(Fraction(t))

    # -- conversion -----------------------------------------------------

    def to_fraction(self) -> Fraction:
        if self.exp >= 0:
            return Fraction(self.man << self.exp)
        return Fraction(self.man, 1 << -self.exp)

    def __float__(self) -> float:
        if self.man == 0:
            return 0.0
        try:
            return math.ldexp(float(self.man), self.exp) if self.man.bit_length() <= 53 \
                else float(self.to_fraction())
        except OverflowError:
            return math.copysign(math.inf, self.man)

    def log2_abs(self) -> float:
        """Approximate log2 of the magnitude (-inf for zero)."""
        if self.man == 0:
            return -math.inf
        n = abs(self.man)
        b = n.bit_length()
        top = n >> max(0, b - 60)
        return math.log2(top) + max(0, b - 60) + self.exp

    def __repr__(self) -> str:
        return f"Dyadic({self.man}, {self.exp})"

    def __str__(self) -> str:
        return f"{self.man}*2^{self.exp}"

    def decimal(self, digits: int = 40) -> str:
        """Decimal rendering with ``digits`` significant digits."""
        if self.man == 0:
            return "0"
        q = self.to_fraction()
        sign = "-" if q < 0 else ""
        q = abs(q)
        k = math.floor(self.log2_abs() * math.log10(2))
        # adjust k so that 10**k <= q < 10**(k+1)
        while Fraction(10) ** k > q:
            k -= 1
        while Fraction(10) ** (k + 1) <= q:
            k += 1
        scaled = q / Fraction(10) ** (k - digits + 1)
        n = round(scaled)
        if n >= 10**digits:
            n //= 10
            k += 1
        s = str(n).rstrip("0") or "0"
        if len(s) == 1:
            body = s
        else:
            body = s[0] + "." + s[1:]
        return f"{sign}{body}e{k}" if k else f"{sign}{body}"

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return self.man == 0

    def sign(self) -> int:
        return (self.man > 0) - (self.man < 0)

    def __bool__(self) -> bool:
        return self.man != 0

    def __hash__(self) -> int:
        return hash((self.man, self.exp))

    def _cmp(self, other) -> int:
        other = _coerce(other)
        if other is NotImplemented:
            raise TypeError
        a, b = self.man, other.man
        if self.exp > other.exp:
            a <<= self.exp - other.exp
        elif other.exp > self.exp:
            b <<= other.exp - self.exp
        return (a > b) - (a < b)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.man == other.man and self.exp == other.exp

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    # -- exact arithmetic -----------------------------------------------

    def __neg__(self) -> Dyadic:
        return Dyadic(-self.man, self.exp)

    def __abs__(self) -> Dyadic:
        return self if self.man >= 0 else Dyadic(-self.man, self.exp)

    def __add__(self, other) -> Dyadic:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.man == 0:
            return other
        if other.man == 0:
            return self
        if self.exp >= other.exp:
            return Dyadic((self.man << (self.exp - other.exp)) + other.man, other.exp)
        return Dyadic(self.man + (other.man << (other.exp - self.exp)), self.exp)

    __radd__ = __add__

    def __sub__(self, other) -> Dyadic:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Dyadic:
        return _coerce(other) - self

    def __mul__(self, other) -> Dyadic:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Dyadic(self.man * other.man, self.exp + other.exp)

    __rmul__ = __mul__

    def shift(self, k: int) -> Dyadic:
        """Exact multiplication by ``2**k``."""
        if self.man == 0:
            return self
        return Dyadic(self.man, self.exp + k)

    # -- rounding -----------------------------------------------------------

    def bits(self) -> int:
        return abs(self.man).bit_length()

    def round(self, prec: int, rnd: str = "n") -> Dyadic:
        """Round to ``prec`` significant bits; ``rnd`` in {"n", "f", "c", "u", "d"}.

        "u"/"d" round away from / toward zero in magnitude.
        """
        b = self.bits()
        if b <= prec:
            return self
        extra = b - prec
        m = self.man
        lo = m >> extra  # floor
        rem = m - (lo << extra)
        if rem == 0:
            return Dyadic(lo, self.exp + extra)
        if rnd == "u":
            rnd = "c" if m > 0 else "f"
        elif rnd == "d":
            rnd = "f" if m > 0 else "c"
        if rnd == "c":
            lo += 1
        elif rnd == "n":
            half = 1 << (extra - 1)
            if rem > half or (rem == half and lo & 1):
                lo += 1
        return Dyadic(lo, self.exp + extra)

    def ulp_bound(self, prec: int) -> Dyadic:
        """Upper bound on the error of rounding ``self`` to ``prec`` bits."""
        b = self.bits()
        if b <= prec:
            return ZERO
        return Dyadic(1, self.exp + b - prec)


def _coerce(x):
    if isinstance(x, Dyadic):
        return x
    if isinstance(x, int):
        return Dyadic(x, 0)
    if isinstance(x, Fraction):
        return Dyadic.from_fraction(x)
    return NotImplemented


ZERO = Dyadic(0, 0)
ONE = Dyadic(1, 0)
