"""Soft Pellet counting tests with Graeffe iterations and adaptive precision.

``counting_test`` tries to certify that exactly ``r`` roots (with
multiplicity) lie in a disc by finding a dominant coefficient of some
root-squared iterate of the shifted polynomial. ``exclusion_test`` wraps it
with the strategies used by the subdivision, and ``filter_c0minus`` is a cheap
pre-check that detects discs the full test can never exclude.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .geometry import Disc
from .numeric import TriBool
from .polynomial import CoeffOracle
from .working import disc_poly

START_PRECISION = 53
MAX_PRECISION = 1 << 22


class Strategy(enum.Enum):
    V2 = "v2"  # exclusion with k = 0
    V3 = "v3"  # exclusion with k = d
    V4 = "v4"  # V3 behind the C0- filter
    V4E = "v4e"  # V4 plus the escape bound for single-root components

    @classmethod
    def parse(cls, text: str) -> Strategy:
        key = text.strip().lower().replace("'", "e").replace("prime", "e")
        for s in cls:
            if s.value == key:
                return s
        raise ValueError(f"unknown strategy {text!r}")

    @property
    def filtered(self) -> bool:
        return self in (Strategy.V4, Strategy.V4E)


@dataclass
class TestCounters:
    """Discarding tests run (n1), those returning -1 (n2), Graeffe iterations (n3)."""

    __test__ = False  # not a pytest class

    n1: int = 0
    n2: int = 0
    n3: int = 0
    filtered: int = 0
    max_precision: int = START_PRECISION

    def merge(self, other: TestCounters) -> None:
        self.n1 += other.n1
        self.n2 += other.n2
        self.n3 += other.n3
        self.filtered += other.filtered
        self.max_precision = max(self.max_precision, other.max_precision)


class PelletResult(int):
    """The count ``r`` (or -1), with a few diagnostics attached."""

    def __new__(cls, r: int, precision: int = START_PRECISION, iterations: int = 0,
                comparisons: int = 0):
        obj = super().__new__(cls, r)
        obj.precision = precision
        obj.iterations = iterations
        obj.comparisons = comparisons
        obj.gated = False
        return obj

    @property
    def r(self) -> int:
        return int(self)

    def __repr__(self) -> str:
        return f"PelletResult({int(self)}, L={self.precision})"


@dataclass(frozen=True)
class Exclusion:
    """Outcome of an exclusion test: EXCLUDE, or KEEP with an optional bound."""

    exclude: bool
    bound: int | None = None

    def __str__(self) -> str:
        if self.exclude:
            return "EXCLUDE"
        return f"KEEP({'unknown' if self.bound is None else self.bound})"


EXCLUDE = Exclusion(True, 0)


def graeffe_depth(d: int) -> int:
    """N = 4 + ceil(log2(1 + log2 d))."""
    return 4 + math.ceil(math.log2(1 + math.log2(d))) if d > 1 else 4


def filter_index(d: int, N: int) -> int:
    """Smallest i with 2**(N-i) <= d/4 (N when no such i <= N exists)."""
    for i in range(N + 1):
        if 4 << (N - i) <= d:
            return i
    return N


@dataclass
class _Iterates:
    """Graeffe iterates of the shifted polynomial at one working precision."""

    f: CoeffOracle
    disc: Disc
    L: int
    counters: TestCounters
    polys: list = field(default_factory=list)
    failed: bool = False
    computed: int = 0

    def __post_init__(self):
        p = disc_poly(self.f, self.disc, self.L)
        self.polys.append(p)
        self.failed = p is None
        self.counters.max_precision = max(self.counters.max_precision, self.L)

    def get(self, i: int):
        while len(self.polys) <= i:
            prev = self.polys[-1]
            nxt = prev.graeffe() if prev is not None else None
            self.polys.append(nxt)
            self.counters.n3 += 1
            self.computed += 1
        return self.polys[i]


def counting_test(f: CoeffOracle, disc: Disc, k: int, counters: TestCounters | None = None,
                  *, discarding: bool = True, iterates: _Iterates | None = None,
                  gate=None) -> PelletResult:
    """Certified number of roots in ``disc`` when it is at most ``k``, else -1.

    ``discarding=False`` marks bookkeeping calls (validation) that should not
    count towards n1/n2. ``iterates`` lets a caller share already-computed
    iterates at the starting precision. ``gate = (i, pred)`` calls
    ``pred(iterates)`` once, just before iterate ``i`` is first examined; a
    false answer abandons the test (result -1, ``gated`` set).
    """
    d = f.degree
    if not 0 <= k <= d:
        raise ValueError(f"k must be in 0..{d}")
    if counters is None:
        counters = TestCounters()
    N = graeffe_depth(d)
    it = iterates if iterates is not None else _Iterates(f, disc, START_PRECISION, counters)
    iterations_before = counters.n3
    comparisons = 0
    result = -1
    gated = False
    for i in range(N + 1):
        if gate is not None and i == gate[0] and not gate[1](it):
            gated = True
            break
        r = 0
        while r <= k:
            P = it.get(i)
            status, rr = (TriBool.UNRESOLVED, r) if P is None else P.decide(r, k)
            if status is TriBool.TRUE:
                comparisons += rr - r + 1
                result = rr
                break
            if status is TriBool.FALSE:
                comparisons += k - r + 1
                break
            comparisons += rr - r
            if it.L >= MAX_PRECISION:
                r = k + 1
                break
            it = _Iterates(f, disc, 2 * it.L, counters)
            r = rr
        if result >= 0:
            break
    if discarding:
        counters.n1 += 1
        counters.n2 += result < 0 and not gated
        counters.filtered += gated
    out = PelletResult(result, it.L, counters.n3 - iterations_before, comparisons)
    out.gated = gated
    return out


def _log2_add(a: float, b: float) -> float:
    if a == -math.inf:
        return b
    if b == -math.inf:
        return a
    hi, lo = max(a, b), min(a, b)
    return hi + math.log2(1.0 + 2.0 ** (lo - hi))


LOG_SLACK = 2.0**-40


def filter_c0minus(f: CoeffOracle, disc: Disc, L: int = START_PRECISION,
                   counters: TestCounters | None = None,
                   iterates: _Iterates | None = None) -> bool:
    """False when the full test is certain not to return 0 on ``disc``.

    Compares |g|_0 against |g|_1 + |g|_d for the N-th root-squared iterate g,
    where |g|_0 and |g|_d are powers of the shifted end coefficients and |g|_1
    comes from cheap prefix iterations. When the inequality |g|_0 <= |g|_1 +
    |g|_d holds, the first coefficient can never dominate.
    """
    if counters is None:
        counters = TestCounters()
    d = f.degree
    N = graeffe_depth(d)
    it = iterates if iterates is not None else _Iterates(f, disc, L, counters)
    P0 = it.get(0)
    if P0 is None:
        return True
    i = filter_index(d, N)
    g = it.get(i)
    for j in range(i + 1, N + 1):
        if g is None:
            return True
        g = g.head((1 << (N - j)) + 1)
    if g is None:
        return True
    # everything in log2 scale: powers by 2**N become products
    p = float(1 << N)
    a_hi = P0.log2_bounds(0)[1] * p
    if a_hi > -math.inf:
        a_hi += LOG_SLACK * (1 + abs(a_hi))
    gd_lo = P0.log2_bounds(d)[0] * p
    g1_lo = g.log2_bounds(1)[0]
    b_lo = _log2_add(gd_lo, g1_lo)
    if b_lo > -math.inf:
        b_lo -= LOG_SLACK * (1 + abs(b_lo))
    # FALSE only when |g|_0 <= |g|_1 + |g|_d is certain
    return not a_hi <= b_lo


def exclusion_test(f: CoeffOracle, disc: Disc, strategy: Strategy,
                   counters: TestCounters | None = None) -> Exclusion:
    """Try to show ``disc`` holds no root; otherwise report what is known."""
    if counters is None:
        counters = TestCounters()
    d = f.degree
    if strategy is Strategy.V2:
        r = counting_test(f, disc, 0, counters)
        return EXCLUDE if r == 0 else Exclusion(False, None)
    gate = None
    if strategy.filtered:
        # The filter reuses the full test's iterates up to its index, and is
        # only consulted when the full test is about to go past that index
        # (so tests that conclude there never pay for it).
        N = graeffe_depth(d)
        gate = (min(filter_index(d, N) + 1, N),
                lambda it: filter_c0minus(f, disc, it.L, counters, it))
    r = counting_test(f, disc, d, counters, gate=gate)
    if r.gated:
        return Exclusion(False, None)
    if r == 0:
        return EXCLUDE
    return Exclusion(False, None if r < 0 else int(r))
