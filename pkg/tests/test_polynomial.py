from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootcluster.geometry import Disc
from rootcluster.numeric import ComplexBall, Dyadic
from rootcluster.polynomial import (
    BallPoly,
    ExactPoly,
    FamilyDomainError,
    PolyParseError,
    bernoulli_numbers,
    evaluate,
    format_poly,
    get_approximation,
    graeffe_head,
    graeffe_step,
    make_family,
    nested_cluster_roots,
    parse_family,
    parse_poly_text,
    taylor_shift,
)

coef = st.integers(-20, 20)
gauss = st.tuples(coef, coef)


def poly_of(values, prec=128):
    return BallPoly.from_ints(values, prec)


def assert_coeffs(p: BallPoly, expected):
    assert len(p.coeffs) == len(expected)
    for c, e in zip(p.coeffs, expected):
        er, ei = (e, 0) if not isinstance(e, tuple) else e
        assert c.contains(er, ei), (c, e)


def root_square_product(a):
    """(-1)^d a(z) a(-z), written in z^2, exactly."""
    d = len(a) - 1
    b = [x * (-1) ** i for i, x in enumerate(a)]
    prod = [0] * (2 * d + 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] += x * y
    assert all(prod[k] == 0 for k in range(1, 2 * d + 1, 2))
    return [(-1) ** d * prod[2 * k] for k in range(d + 1)]


# -- oracle -------------------------------------------------------------------------


def test_get_approximation_small_integers():
    p = get_approximation(ExactPoly([1, 0, 1]), 53)
    for c, e in zip(p.coeffs, [1, 0, 1]):
        assert c.re.mid == Dyadic(e) and c.re.rad == 0 and c.im.rad == 0


def test_get_approximation_bernoulli_2():
    p = get_approximation(make_family("bernoulli", 2), 53)
    assert p.contains([Fraction(1, 6), -1, 1])
    assert p.max_radius() <= Dyadic(1, -53)


def test_get_approximation_spiral_1():
    p = get_approximation(make_family("spiral", 1), 53)
    assert p.contains([-1, 1])
    assert p.max_radius() <= Dyadic(1, -53)


@pytest.mark.parametrize("name,params", [("spiral", (5,)), ("nested_cluster", (2,)),
                                          ("bernoulli", (7,))])
def test_oracle_refinement_and_determinism(name, params):
    f = make_family(name, *params)
    a, b = f.approximate(40), f.approximate(80)
    assert [str(x.re.mid) for x in f.approximate(40)] == [str(x.re.mid) for x in a]
    for x, y in zip(a, b):
        assert x.overlaps(y)
        assert y.rad_bound() <= Dyadic(1, -80)


def test_spiral_coefficients_match_mpmath():
    d = 6
    f = make_family("spiral", d)
    mpmath.mp.prec = 200
    roots = [mpmath.mpf(k) / d * mpmath.expjpi(mpmath.mpf(4 * k) / d) for k in range(1, d + 1)]
    ref = [mpmath.mpc(1)]
    for r in roots:
        ref = [(ref[i - 1] if i > 0 else 0) - r * (ref[i] if i < len(ref) else 0)
               for i in range(len(ref) + 1)]
    for c, e in zip(f.approximate(100), ref):
        assert abs(float(c.re.mid.to_fraction()) - float(e.real)) < 1e-25
        assert abs(float(c.im.mid.to_fraction()) - float(e.imag)) < 1e-25


# -- transforms ------------------------------------------------------------------


@pytest.mark.parametrize("values,disc,expected", [
    ([0, 1], Disc(1, 0, 2), [1, 2]),
    ([0, 0, 1], Disc(0, 1, 1), [-1, (0, 2), 1]),
    ([-1, 0, 1], Disc(0, 0, 2), [-1, 0, 4]),
])
def test_taylor_shift_examples(values, disc, expected):
    assert_coeffs(taylor_shift(poly_of(values), disc), expected)


def assert_magnitudes(p: BallPoly, expected):
    assert len(p.coeffs) == len(expected)
    for c, e in zip(p.coeffs, expected):
        m = c.abs(128)
        assert m.contains(abs(e)), (c, e)


@pytest.mark.parametrize("values,expected", [
    ([-2, 1], [4, -1]),
    ([1, 0, 1], [1, 2, 1]),
    ([0, 1], [0, -1]),
])
def test_graeffe_step_examples(values, expected):
    # only magnitudes are convention-free; with the (-1)^d sign the odd-degree
    # examples come out negated and stay monic
    g = graeffe_step(poly_of(values))
    assert_magnitudes(g, expected)
    sign = (-1) ** (len(values) - 1)
    assert_coeffs(g, [sign * e for e in expected])


def test_graeffe_head_examples():
    (h,) = graeffe_head(poly_of([-2, 1]), 1, 2)
    assert_magnitudes(h, [4, -1])
    (h,) = graeffe_head(poly_of([1, 0, 1]), 1, 2)
    assert_coeffs(h, [1, 2])
    (h,) = graeffe_head(poly_of([3, 5, 7]), 1, 1)
    assert_coeffs(h, [9])


@pytest.mark.parametrize("values,z", [
    ([1, 0, 1], (0, 1)),
    ([-2, 1], (2, 0)),
    ([-1, 0, 4], (Fraction(1, 2), 0)),
])
def test_evaluate_roots(values, z):
    v = evaluate(poly_of(values), ComplexBall.from_fractions(z[0], z[1], 128))
    assert v.contains_zero()
    assert v.rad_bound() <= Dyadic(1, -100)


@settings(max_examples=60)
@given(st.lists(gauss, min_size=2, max_size=17))
def test_graeffe_identity_exact(values):
    if values[-1] == (0, 0):
        values[-1] = (1, 0)
    ex = root_square_product([complex(*v) for v in values])
    # exact integers survive ball arithmetic with zero radius
    g = graeffe_step(poly_of(values, 4096))
    for c, e in zip(g.coeffs, ex):
        assert c.re.rad == 0 and c.im.rad == 0
        assert c.re.mid == Dyadic(int(e.real)) and c.im.mid == Dyadic(int(e.imag))


@settings(max_examples=30)
@given(st.lists(st.fractions(-4, 4, max_denominator=64), min_size=2, max_size=10),
       st.fractions(-2, 2, max_denominator=16), st.fractions(-2, 2, max_denominator=16))
def test_graeffe_identity_at_points(values, x, y):
    if values[-1] == 0:
        values[-1] = Fraction(1)
    f = ExactPoly(values)
    p = f.to_ballpoly(200)
    g = graeffe_step(p)
    z = ComplexBall.from_fractions(x, y, 200)
    lhs = evaluate(g, z.sqr(200))
    a, b = f.value(x, y)
    c, e = f.value(-x, -y)
    s = (-1) ** f.degree
    assert lhs.contains(s * (a * c - b * e), s * (a * e + b * c))


@settings(max_examples=25)
@given(st.lists(gauss, min_size=2, max_size=12), st.integers(1, 4))
def test_heads_match_full_iterates(values, m):
    if values[-1] == (0, 0):
        values[-1] = (1, 0)
    p = poly_of(values, 512)
    heads = graeffe_head(p, m)
    full = p
    for t, h in enumerate(heads, 1):
        full = graeffe_step(full)
        for hc, fc in zip(h.coeffs, full.coeffs):
            assert hc.overlaps(fc)
        assert len(h.coeffs) == (1 << (m - t)) + 1


@settings(max_examples=30)
@given(st.fractions(-3, 3, max_denominator=8), st.fractions(-3, 3, max_denominator=8),
       st.lists(st.tuples(st.fractions(-3, 3, max_denominator=8),
                          st.fractions(-3, 3, max_denominator=8)), min_size=0, max_size=5))
def test_taylor_shift_maps_roots(rx, ry, others):
    roots = [(rx, ry)] + others
    coeffs = [(Fraction(1), Fraction(0))]
    for a, b in roots:  # multiply by (z - root)
        nxt = [(Fraction(0), Fraction(0))] * (len(coeffs) + 1)
        for i, (cr, ci) in enumerate(coeffs):
            nr, ni = nxt[i + 1]
            nxt[i + 1] = (nr + cr, ni + ci)
            nr, ni = nxt[i]
            nxt[i] = (nr - (cr * a - ci * b), ni - (cr * b + ci * a))
        coeffs = nxt
    disc = Disc(Dyadic(1, -2), Dyadic(-1, -3), Dyadic(5, -1))
    q = taylor_shift(ExactPoly(coeffs).to_ballpoly(256), disc)
    c, r = disc.cre.to_fraction(), disc.radius.to_fraction()
    z = ComplexBall.from_fractions((rx - c) / r, (ry - disc.cim.to_fraction()) / r, 256)
    assert evaluate(q, z).contains_zero()


# -- families ----------------------------------------------------------------------


@pytest.mark.parametrize("spec,expected", [
    ("wilkinson:2", [2, -3, 1]),
    ("mignotte:4,2", [-2, 16, -32, 0, 1]),
    ("nested_cluster:1", [-1, 0, 0, 1]),
    ("wilkinson_multiple:2", [-4, 8, -5, 1]),
    ("mignotte_cluster:6,2,1", [2, 0, -32, 0, 0, 0, 1]),
])
def test_family_examples(spec, expected):
    f = parse_family(spec)
    p = f.approximate(80)
    assert len(p) == len(expected)
    for c, e in zip(p, expected):
        assert c.contains(e, 0), (spec, c, e)


def test_bernoulli_numbers():
    assert bernoulli_numbers(0) == [1]
    assert bernoulli_numbers(2) == [1, Fraction(-1, 2), Fraction(1, 6)]
    assert bernoulli_numbers(4)[4] == Fraction(-1, 30)


@pytest.mark.parametrize("D", [1, 2, 3, 4, 5])
def test_family_degrees(D):
    assert make_family("wilkinson_multiple", D).degree == D * (D + 1) // 2
    assert make_family("nested_cluster", min(D, 3)).degree == 3 ** min(D, 3)


def test_nested_roots_closed_form():
    roots = nested_cluster_roots(2, 100)
    assert len(roots) == 9
    w = mpmath.exp(2j * mpmath.pi / 3)
    base = [w, w**2, 1]
    expected = [a + b / 16 for a in base for b in base]
    for r in roots:
        z = complex(float(r.re.mid.to_fraction()), float(r.im.mid.to_fraction()))
        assert min(abs(z - complex(e)) for e in expected) < 1e-14


def test_family_domain_errors():
    for bad in ["mignotte:2,1", "foo:3", "bernoulli:0", "bernoulli:x", "mignotte_cluster:3,2,2"]:
        with pytest.raises(FamilyDomainError):
            parse_family(bad)


# -- text format ----------------------------------------------------------------------


def test_poly_file_round_trip():
    text = "# a comment\ndegree 2\n-1/16 0/1\n0/1 0/1\n\n1/1 0/1  # leading\n"
    f = parse_poly_text(text)
    assert f.degree == 2
    assert f.coeffs[0] == (Fraction(-1, 16), 0)
    g = parse_poly_text(format_poly(f))
    assert g.coeffs == f.coeffs


@pytest.mark.parametrize("text", [
    "", "degree x\n1/1 0/1\n", "degree 1\n1/1 0/1\n", "degree 1\n1/0 0/1\n1/1 0/1\n",
    "degree 1\n1 0/1\n1/1 0/1\n", "degree 1\n1/1 0/1\n0/1 0/1\n", "degree 0\n1/1 0/1\n",
])
def test_poly_file_errors(text):
    with pytest.raises(PolyParseError):
        parse_poly_text(text)


def test_exact_poly_rejects_floats():
    with pytest.raises(TypeError):
        ExactPoly([1j, 1])
