import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from combindep.covers import TraceSet, f_s
from combindep.errors import BudgetError
from combindep.shattering import (
    count_shattered,
    is_fully_shattered,
    key_lemma_constants,
    key_lemma_witness,
    km_witness,
    largest_shattered,
    two_valued_decompose,
)
from oracles import brute_count_shattered, brute_largest_shattered, sauer_bound


def ts(window, k, *pats):
    return TraceSet(tuple(window), k, frozenset(tuple(int(c) for c in p) for p in pats))


THREE = ts([1, 2], 2, "11", "12", "21")


def test_is_fully_shattered_examples():
    assert is_fully_shattered(TraceSet.full(2, (1, 2, 3)), (1, 2, 3))
    assert not is_fully_shattered(THREE, (1, 2))
    assert is_fully_shattered(THREE, (1,))
    assert is_fully_shattered(THREE, ())
    with pytest.raises(ValueError):
        is_fully_shattered(THREE, (3,))


def test_largest_and_count_examples():
    assert largest_shattered(TraceSet.full(2, (1, 2, 3))) == (1, 2, 3)
    assert largest_shattered(THREE) == (1,)
    assert largest_shattered(TraceSet((1, 2), 2, frozenset())) == ()
    for n in range(1, 6):
        assert count_shattered(TraceSet.full(2, tuple(range(1, n + 1)))) == 2**n - 1
    assert count_shattered(THREE) == 2
    assert count_shattered(ts([1, 2, 3], 2, "121")) == 0


def test_search_bound():
    big = TraceSet(tuple(range(30)), 2, frozenset({(1,) * 30, (2,) * 30}))
    with pytest.raises(BudgetError):
        largest_shattered(big)
    with pytest.raises(BudgetError):
        count_shattered(big, search_bound=10)


def test_key_lemma_constants_examples():
    c2 = key_lemma_constants(2, 1)
    assert c2.lam == Fraction(1, 4)
    assert math.isclose(c2.b1, 1 + math.log2(0.75))
    assert round(c2.b1, 3) == 0.585
    c3 = key_lemma_constants(3, 1)
    assert math.isclose(c3.b2, 1.0)
    for c in (c2, c3):
        assert 0 < c.lam < Fraction(1, 3)
        assert c.b1 > 0 and c.b2 > 0 and c.t > 0 and c.c > 0
        assert math.isclose(c.t, c.b1 * math.log2((c.k + 1) / c.k) / (2 * c.b2))
        for n in range(1, 300):
            total = sum(math.comb(n, j) for j in range(1, math.floor(c.c * n) + 1))
            assert total < 2 ** (c.t * n)


def test_key_lemma_constants_small_b_moves_lambda():
    c = key_lemma_constants(2, Fraction(1, 10))
    assert c.lam < Fraction(1, 4) and c.b1 > 0


def test_key_lemma_constants_errors():
    with pytest.raises(ValueError):
        key_lemma_constants(2, 0)
    with pytest.raises(ValueError):
        key_lemma_constants(1, 1)


def test_key_lemma_witness_examples():
    full = TraceSet.full(2, (1, 2, 3, 4))
    rep = key_lemma_witness(full, Fraction(1, 2))
    assert rep.holds_hypothesis and rep.f_s == 16
    assert rep.w == (1, 2, 3, 4) and rep.ratio == 1
    single = ts([1, 2, 3, 4], 2, "1212")
    rep = key_lemma_witness(single, Fraction(1, 2))
    assert not rep.holds_hypothesis and rep.f_s == 1


def test_km_witness_examples():
    full = TraceSet.full(2, (1, 2, 3))
    assert km_witness(full, 2) == (1, 2, 3)
    seven = TraceSet((1, 2, 3), 2, frozenset(sorted(full.patterns)[:7]))
    assert km_witness(seven, 2) is None
    assert km_witness(TraceSet.full(3, (1, 2)), Fraction(3, 2)) == (1, 2)
    with pytest.raises(ValueError):
        km_witness(ts([1], 2, "0"), 2)
    with pytest.raises(ValueError):
        km_witness(full, 1)


def test_two_valued_decompose_examples():
    assert two_valued_decompose([("z",), (1,)], {"z"}) == (1, (1,))
    assert two_valued_decompose([("z",), (2,)], {"z"}) == (2, (1,))
    assert two_valued_decompose([(1, 2)], set()) == brute_two_valued([(1, 2)], [], 2) == (1, (1,))
    with pytest.raises(ValueError):
        two_valued_decompose([("z",), (1,), (2,)], {"z"})
    with pytest.raises(ValueError):
        two_valued_decompose([(1,)], {3})


def brute_two_valued(patterns, zs, n):
    best = None
    for branch in (1, 2):
        vals = list(zs) + [branch]
        for size in range(n, -1, -1):
            hit = [c for c in itertools.combinations(range(n), size) if _contains(patterns, c, vals)]
            if hit:
                cand = (size, branch, tuple(i + 1 for i in hit[0]))
                if best is None or size > best[0]:
                    best = cand
                break
    return best[1], best[2]


def _contains(patterns, idx, vals):
    seen = {tuple(p[i] for i in idx) for p in patterns}
    return all(r in seen for r in itertools.product(vals, repeat=len(idx)))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2), st.data())
def test_two_valued_decompose_matches_brute_force(n, nz, data):
    zs = list(range(4, 4 + nz))
    # pick a lift of every collapsed pattern: each 3 becomes 1 or 2
    patterns = []
    for img in itertools.product(zs + [3], repeat=n):
        lift = tuple(data.draw(st.sampled_from([1, 2])) if v == 3 else v for v in img)
        patterns.append(lift)
    branch, got = two_valued_decompose(patterns, zs)
    assert _contains(patterns, [w - 1 for w in got], zs + [branch])
    assert (branch, got) == brute_two_valued(patterns, zs, n)


# -- properties ----------------------------------------------------------------


@st.composite
def traces(draw, max_n=5, max_k=3, zero=True):
    k = draw(st.integers(2, max_k))
    n = draw(st.integers(1, max_n))
    lo = 0 if zero else 1
    pats = draw(st.sets(st.tuples(*[st.integers(lo, k)] * n), max_size=40))
    start = draw(st.integers(-3, 3))
    return TraceSet(tuple(range(start, start + n)), k, frozenset(pats))


@settings(max_examples=150, deadline=None)
@given(traces())
def test_largest_and_count_match_oracles(s):
    assert largest_shattered(s) == brute_largest_shattered(s.window, s.k, s.patterns)
    assert count_shattered(s) == brute_count_shattered(s.window, s.k, s.patterns)


@settings(max_examples=100, deadline=None)
@given(traces(max_n=6))
def test_counting_inference(s):
    n = len(s.window)
    h = count_shattered(s)
    size = len(largest_shattered(s))
    for m in range(n + 1):
        if h > sum(math.comb(n, j) for j in range(1, m + 1)):
            assert size > m


@settings(max_examples=100, deadline=None)
@given(traces(), st.data())
def test_shattering_is_monotone(s, data):
    w = largest_shattered(s)
    sub = data.draw(st.sets(st.sampled_from(w))) if w else set()
    assert is_fully_shattered(s, sorted(sub))


@settings(max_examples=80, deadline=None)
@given(traces(max_n=4, zero=False), st.fractions(Fraction(11, 10), Fraction(3)))
def test_km_witness_is_shattered(s, lam):
    w = km_witness(s, lam)
    if len(s.patterns) >= ((s.k - 1) * lam) ** len(s.window):
        assert w is not None and is_fully_shattered(s, w)
    else:
        assert w is None


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sauer_shelah_exhaustive_small(n):
    window = tuple(range(1, n + 1))
    cube = list(itertools.product((1, 2), repeat=n))
    for r in range(len(cube) + 1):
        for sub in itertools.combinations(cube, r):
            s = TraceSet(window, 2, frozenset(sub))
            size = len(largest_shattered(s))
            for m in range(n + 2):
                if len(sub) > sauer_bound(n, m):
                    assert size >= m


@pytest.mark.parametrize("n", [1, 2, 3])
def test_full_window_shattered_gives_full_cover_count(n):
    window = tuple(range(1, n + 1))
    cube = list(itertools.product((1, 2), repeat=n))
    for r in range(len(cube) + 1):
        for sub in itertools.combinations(cube, r):
            s = TraceSet(window, 2, frozenset(sub))
            if largest_shattered(s) == window:
                assert f_s(s) == 2**n


@settings(max_examples=40, deadline=None)
@given(traces(max_n=4), st.sampled_from([Fraction(1, 4), Fraction(1, 2), Fraction(1)]))
def test_key_lemma_witness_consistent(s, b):
    rep = key_lemma_witness(s, b)
    fs = f_s(s)
    assert rep.f_s == fs
    assert rep.holds_hypothesis == (fs >= s.k ** (float(b) * len(s.window)) - 1e-9)
    if rep.holds_hypothesis:
        assert rep.w == largest_shattered(s)
