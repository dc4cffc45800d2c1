from fractions import Fraction

import pytest
from _corpus import corpus, count_inside

from rootcluster import working
from rootcluster.geometry import Disc
from rootcluster.numeric import Dyadic
from rootcluster.pellet import (
    EXCLUDE,
    Strategy,
    TestCounters,
    counting_test,
    exclusion_test,
    filter_c0minus,
    filter_index,
    graeffe_depth,
)
from rootcluster.polynomial import ExactPoly

CASES = corpus(200)


def unit():
    return Disc(0, 0, 1)


@pytest.mark.parametrize("coeffs,disc,k,expected", [
    ([0, 1], Disc(0, 0, 1), 1, 1),
    ([-1, 0, 1], Disc(0, 0, Dyadic(1, -1)), 2, 0),
    ([Fraction(-1, 16), 0, 1], Disc(0, 0, Dyadic(1, -1)), 2, 2),
    ([-1, 1], Disc(0, 0, 1), 1, -1),
])
def test_counting_examples(coeffs, disc, k, expected):
    assert counting_test(ExactPoly(coeffs), disc, k) == expected


@pytest.mark.parametrize("coeffs,expected", [([0, 1], False), ([-1, 1], False), ([-4, 1], True)])
def test_filter_examples(coeffs, expected):
    assert filter_c0minus(ExactPoly(coeffs), unit(), 53) is expected


def test_exclusion_examples():
    assert exclusion_test(ExactPoly([-4, 1]), unit(), Strategy.V3) == EXCLUDE
    assert str(exclusion_test(ExactPoly([0, 1]), unit(), Strategy.V3)) == "KEEP(1)"
    c = TestCounters()
    res = exclusion_test(ExactPoly([-1, 1]), unit(), Strategy.V4, c)
    assert str(res) == "KEEP(unknown)"
    assert c.filtered == 1 and c.n1 == 1 and c.n2 == 0
    assert c.n3 == filter_index(1, graeffe_depth(1))


def test_graeffe_depth_values():
    assert graeffe_depth(1) == 4
    assert graeffe_depth(2) == 5  # 4 + ceil(log2(2))
    assert graeffe_depth(64) == 4 + 3  # log2(1 + 6) < 3
    assert graeffe_depth(128) == 4 + 3
    assert graeffe_depth(256) == 4 + 4


def test_filter_index_rule():
    assert filter_index(1, graeffe_depth(1)) == 4
    assert filter_index(64, 7) == 3
    assert filter_index(729, 8) == 1
    for d in (1, 3, 4, 16, 64, 128, 729):
        N = graeffe_depth(d)
        i = filter_index(d, N)
        if 4 << (N - i) <= d:
            assert i == 0 or 4 << (N - i + 1) > d
        else:
            assert i == N


def test_strategy_parse():
    assert Strategy.parse("V4'") is Strategy.V4E
    assert Strategy.parse("v2") is Strategy.V2
    with pytest.raises(ValueError):
        Strategy.parse("v9")


def test_k_range_checked():
    with pytest.raises(ValueError):
        counting_test(ExactPoly([-1, 1]), unit(), 2)


# -- corpus properties ------------------------------------------------------------------


def test_corpus_count_correctness():
    wrong = []
    conclusive = 0
    for case in CASES:
        r = counting_test(case.f, case.disc, case.f.degree)
        if r >= 0:
            conclusive += 1
            if r != case.inside:
                wrong.append((case.f.name, int(r), case.inside))
    assert not wrong
    assert conclusive >= len(CASES) // 2


def test_corpus_filter_soundness():
    violations = []
    for case in CASES:
        if not filter_c0minus(case.f, case.disc):
            r = counting_test(case.f, case.disc, case.f.degree)
            if r == 0:
                violations.append(case.f.name)
            assert case.inside > 0 or r != 0
    assert not violations


def test_corpus_exclusion_strategies_agree():
    for case in CASES[:60]:
        for s in Strategy:
            res = exclusion_test(case.f, case.disc, s)
            if res.exclude:
                assert case.inside == 0, (case.f.name, s)


def test_monotone_exclusion_on_nested_discs():
    checked = 0
    for case in CASES:
        if counting_test(case.f, case.disc, case.f.degree) != 0:
            continue
        for q in (Fraction(1, 2), Fraction(3, 4), Fraction(1, 8)):
            inner = Disc(case.disc.cre, case.disc.cim, case.disc.radius * Dyadic.from_fraction(q))
            if count_inside(inner, case.roots) is None:
                continue
            assert counting_test(case.f, inner, case.f.degree) <= 0
            checked += 1
    assert checked > 20


def test_loop_bound_and_iteration_accounting(monkeypatch):
    calls = {"n": 0}
    originals = {}
    for cls in (working.FloatPoly, working.DDPoly, working.BigPoly):
        originals[cls] = cls.graeffe

        def wrapped(self, _orig=originals[cls]):
            calls["n"] += 1
            return _orig(self)

        monkeypatch.setattr(cls, "graeffe", wrapped)
    for case in CASES[:80]:
        d = case.f.degree
        c = TestCounters()
        calls["n"] = 0
        r = counting_test(case.f, case.disc, d, c)
        N = graeffe_depth(d)
        assert r.comparisons <= (N + 1) * (d + 1)
        assert c.n3 == calls["n"] == r.iterations
        assert c.n1 == 1 and c.n2 == (r < 0)


def test_counters_skip_bookkeeping_calls():
    c = TestCounters()
    f = ExactPoly([-1, 0, 1])
    counting_test(f, unit(), 2, c, discarding=False)
    assert c.n1 == 0 and c.n2 == 0 and c.n3 > 0


def test_filter_heads_not_counted():
    f = ExactPoly([-1, 1])
    c = TestCounters()
    filter_c0minus(f, unit(), 53, c)
    # only full iterates up to the filter index
    assert c.n3 == filter_index(1, graeffe_depth(1))
