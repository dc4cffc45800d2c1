import json
import os
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootcluster import kernels
from rootcluster.geometry import Disc
from rootcluster.kernels import bigint
from rootcluster.numeric import Dyadic, TriBool
from rootcluster.polynomial import ExactPoly, make_family
from rootcluster.working import BigPoly, DDPoly, FloatPoly, disc_poly


def cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def exact_disc_poly(coeffs, disc):
    """Exact f(c + r z) on pairs of Fractions."""
    a = [(Fraction(x), Fraction(y)) for x, y in coeffs]
    d = len(a) - 1
    c = (disc.cre.to_fraction(), disc.cim.to_fraction())
    r = disc.radius.to_fraction()
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            p = cmul(c, a[j + 1])
            a[j] = (a[j][0] + p[0], a[j][1] + p[1])
    return [(x * r**k, y * r**k) for k, (x, y) in enumerate(a)]


def exact_graeffe(a):
    n = len(a)
    out = []
    for k in range(n):
        s = (Fraction(0), Fraction(0))
        for i in range(max(0, 2 * k - n + 1), min(2 * k, n - 1) + 1):
            p = cmul(a[i], a[2 * k - i])
            sg = (-1) ** i
            s = (s[0] + sg * p[0], s[1] + sg * p[1])
        out.append(s)
    return out


def encloses(P, exact) -> bool:
    for k, (x, y) in enumerate(exact):
        mb = P.mag_ball(k, 200)
        lo, hi = mb.lower().to_fraction(), mb.upper().to_fraction()
        if not max(lo, 0) ** 2 <= x * x + y * y <= hi**2:
            return False
    return True


gauss_coeff = st.tuples(st.integers(-9, 9), st.integers(-9, 9))


@settings(max_examples=25, deadline=None)
@given(st.lists(gauss_coeff, min_size=1, max_size=24),
       st.integers(-40, 40), st.integers(-40, 40), st.integers(-6, 1),
       st.sampled_from([53, 106, 300]))
def test_tiers_enclose_exact_iterates(lower, cx, cy, er, L):
    coeffs = lower + [(1, 0)]
    f = ExactPoly(coeffs)
    disc = Disc(Dyadic(cx, -4), Dyadic(cy, -5), Dyadic(3, er))
    ex = exact_disc_poly(coeffs, disc)
    P = disc_poly(f, disc, L)
    for _ in range(4):
        if P is None:  # overflow is reported, never silently wrong
            break
        assert encloses(P, ex)
        P, ex = P.graeffe(), exact_graeffe(ex)


@pytest.mark.parametrize("L,cls", [(53, FloatPoly), (106, DDPoly), (200, BigPoly)])
def test_tier_selection(L, cls):
    P = disc_poly(make_family("wilkinson", 5), Disc(3, 0, 4), L)
    assert isinstance(P, cls)


def test_precision_tightens_enclosures():
    f = make_family("bernoulli", 20)
    disc = Disc(Dyadic(1, -1), Dyadic(1, -2), Dyadic(3, -2))
    widths = []
    for L in (53, 106, 212, 424):
        mb = disc_poly(f, disc, L).graeffe().graeffe().mag_ball(5, 600)
        widths.append(mb.rad.to_fraction() / mb.mid.to_fraction())
    assert widths == sorted(widths, reverse=True)
    assert widths[-1] < Fraction(1, 2**300)


@pytest.mark.parametrize("L", [53, 106, 300])
def test_heads_are_prefixes(L):
    f = make_family("mignotte", 12, 3)
    P = disc_poly(f, Disc(0, 0, 1), L)
    full = P.graeffe()
    h = P.head(5)
    for j in range(5):
        a, b = h.mag_ball(j, 200), full.mag_ball(j, 200)
        assert a.overlaps(b)


def test_decide_dominant_coefficient():
    # f = z - 4 on the unit disc: |f|_0 dominates
    f = ExactPoly([-4, 1])
    for L in (53, 106, 300):
        P = disc_poly(f, Disc(0, 0, 1), L)
        st_, r = P.decide(0, 1)
        assert st_ is TriBool.TRUE and r == 0


def test_log2_bounds_bracket_magnitude():
    f = make_family("bernoulli", 16)
    disc = Disc(Dyadic(1, -3), 0, Dyadic(1, -1))
    for L in (53, 106, 300):
        P = disc_poly(f, disc, L).graeffe()
        for j in range(17):
            lo, hi = P.log2_bounds(j)
            mb = P.mag_ball(j, 200)
            if mb.upper() > 0:
                assert lo <= mb.upper().log2_abs() + 1e-9
            if mb.lower() > 0:
                assert hi >= mb.lower().log2_abs() - 1e-9


# -- integer kernels ---------------------------------------------------------------


@settings(max_examples=50)
@given(st.lists(st.integers(-(2**200), 2**200), min_size=1, max_size=40),
       st.lists(st.integers(-(2**200), 2**200), min_size=1, max_size=40))
def test_kronecker_convolution_exact(x, y):
    # short operands take the schoolbook path, long ones Kronecker packing
    ref = [0] * (len(x) + len(y) - 1)
    for i, a in enumerate(x):
        for j, b in enumerate(y):
            ref[i + j] += a * b
    assert [int(v) for v in bigint.conv(x, y)] == ref
    sq = [0] * (2 * len(x) - 1)
    for i, a in enumerate(x):
        for j, b in enumerate(x):
            sq[i + j] += a * b
    assert [int(v) for v in bigint.sqr(x)] == sq


@settings(max_examples=30)
@given(st.lists(st.tuples(st.integers(-(2**80), 2**80), st.integers(-(2**80), 2**80)),
                min_size=2, max_size=12))
def test_integer_graeffe_matches_exact(cs):
    re = [a for a, _ in cs]
    im = [b for _, b in cs]
    gr, gi = bigint.graeffe(re, im)
    ex = exact_graeffe([(Fraction(a), Fraction(b)) for a, b in cs])
    assert [abs(complex(int(a), int(b))) for a, b in zip(gr, gi)] == pytest.approx(
        [abs(complex(float(x), float(y))) for x, y in ex], rel=1e-12, abs=1e-300)


# -- backends ------------------------------------------------------------------------

_PROBE = r"""
import json
from rootcluster import kernels
from rootcluster.geometry import Disc
from rootcluster.numeric import Dyadic
from rootcluster.polynomial import make_family
from rootcluster.working import disc_poly
out = {"backend": kernels.BACKEND, "mags": []}
f = make_family("bernoulli", 24)
for L in (53, 106):
    P = disc_poly(f, Disc(Dyadic(1, -2), Dyadic(-1, -3), Dyadic(3, -1)), L)
    for _ in range(3):
        P = P.graeffe()
    out["mags"].append([list(P.log2_bounds(j)) for j in range(25)])
print(json.dumps(out))
"""


def _probe(backend: str) -> dict:
    env = dict(os.environ, ROOTCLUSTER_KERNELS=backend)
    res = subprocess.run([sys.executable, "-c", _PROBE], env=env, capture_output=True,
                         text=True, check=True)
    return json.loads(res.stdout)


@pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")
def test_numba_and_numpy_backends_agree():
    a, b = _probe("numba"), _probe("numpy")
    assert a["backend"] == "numba" and b["backend"] == "numpy"
    x, y = np.array(a["mags"]), np.array(b["mags"])
    assert np.allclose(x, y, rtol=1e-9, atol=1e-9)


def test_bad_backend_flag_rejected():
    env = dict(os.environ, ROOTCLUSTER_KERNELS="fortran")
    res = subprocess.run([sys.executable, "-c", "import rootcluster.kernels"], env=env,
                         capture_output=True, text=True)
    assert res.returncode != 0
    assert "ROOTCLUSTER_KERNELS" in res.stderr
