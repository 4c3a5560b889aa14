import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from combindep.errors import HorizonError
from combindep.symbolic import (
    SFT,
    ClopenSet,
    Cylinder,
    FullShift,
    clopen_product,
    feasible,
    format_word,
    golden_mean,
    language,
    memberships,
    parse_word,
    product,
    shift_preimage,
)
from oracles import sft_words


def words(*texts):
    return {parse_word(t) for t in texts}


def test_full_shift_language():
    assert language(FullShift(2), 2) == words("00", "01", "10", "11")


def test_golden_mean_language():
    assert language(golden_mean(), 2) == words("00", "01", "10")
    assert len(language(golden_mean(), 4)) == 8


def test_language_rejects_zero():
    with pytest.raises(ValueError):
        language(FullShift(2), 0)


def test_word_digits_round_trip():
    assert parse_word("0a9z") == (0, 10, 9, 35)
    assert format_word((0, 10, 9, 35)) == "0a9z"


def test_shift_preimage_offsets():
    w = (1, 0, 1)
    at0 = ClopenSet.cylinder(0, w, 2)
    assert shift_preimage(at0, 0) == at0
    assert shift_preimage(at0, 3) == ClopenSet.cylinder(3, w, 2)
    assert shift_preimage(ClopenSet.cylinder(-2, w, 2), -2) == ClopenSet.cylinder(-4, w, 2)


def test_feasible_examples():
    assert feasible(FullShift(2), [(0, 1), (5, 0)])
    assert not feasible(golden_mean(), [(0, 1), (1, 1)])
    assert feasible(golden_mean(), [(0, 1), (2, 1), (4, 1)])
    assert not feasible(golden_mean(), [(3, 0), (3, 1)])


def test_product_examples():
    assert language(product(FullShift(2), FullShift(2)), 3) == language(FullShift(4), 3)
    gm = product(golden_mean(), FullShift(2))
    assert len(language(gm, 2)) == 12
    gg = product(golden_mean(), golden_mean())
    one_one = gg.pair(1, 1)
    assert (one_one, one_one) not in language(gg, 2)


def test_sft_trims_transient_states():
    # both fixed points, but no word may switch between them
    two_points = SFT(2, ["01", "10"])
    assert language(two_points, 3) == words("000", "111")
    # "x(0)=1 forces x(1)=0 and 00 is forbidden": the only points alternate
    alt = SFT(2, ["11", "00"])
    assert language(alt, 4) == words("0101", "1010")


def test_sft_pads_short_words():
    s = SFT(3, ["2", "01"], memory=3)
    assert language(s, 3) == sft_words(3, [(2,), (0, 1)], 3, pad=4)


def test_clopen_normal_form_is_canonical():
    a = ClopenSet.from_cylinders([Cylinder(0, (1,)), Cylinder(0, (0,))], 2)
    assert a == ClopenSet.whole(2)
    b = ClopenSet.from_cylinders([Cylinder(0, (1, 0)), Cylinder(0, (1, 1))], 2)
    assert b == ClopenSet.symbol_at(0, 1, 2)
    assert b.support == (0,)


def test_clopen_algebra():
    a = ClopenSet.symbol_at(0, 1, 2)
    b = ClopenSet.symbol_at(1, 1, 2)
    both = a & b
    assert both == ClopenSet.cylinder(0, (1, 1), 2)
    assert (a | b).complement() == ClopenSet.cylinder(0, (0, 0), 2)
    assert (a - a).is_empty()
    assert (a | a.complement()).is_whole()
    assert both.issubset(a) and not a.issubset(both)
    assert a.isdisjoint(a.complement())


def test_clopen_product_pairs_symbols():
    spec = product(golden_mean(), FullShift(2))
    a = ClopenSet.symbol_at(0, 1, 2)
    b = ClopenSet.symbol_at(0, 0, 2)
    ab = clopen_product(a, b)
    assert ab == ClopenSet.symbol_at(0, spec.pair(1, 0), 4)


def test_memberships_golden_mean():
    one_at = [ClopenSet.symbol_at(s, 1, 2) for s in (0, 1)]
    assert memberships(golden_mean(), one_at) == {(False, False), (True, False), (False, True)}


def test_horizon_error_message():
    err = HorizonError(20, 10)
    assert "horizon" in str(err)


# -- properties ----------------------------------------------------------------

@st.composite
def sfts(draw, max_k=3, max_len=3):
    k = draw(st.integers(1, max_k))
    n_words = draw(st.integers(0, 3))
    forbidden = [
        tuple(draw(st.lists(st.integers(0, k - 1), min_size=1, max_size=max_len))) for _ in range(n_words)
    ]
    return SFT(k, forbidden), forbidden


@settings(max_examples=60, deadline=None)
@given(sfts(), st.integers(1, 4))
def test_language_matches_padded_enumeration(pair, n):
    spec, forbidden = pair
    pad = 4 if spec.alphabet == 3 else 6
    assert language(spec, n) == sft_words(spec.alphabet, forbidden, n, pad=pad)


@settings(max_examples=60, deadline=None)
@given(sfts(), st.integers(2, 6))
def test_factorial_and_extendable(pair, n):
    spec, _ = pair
    shorter = language(spec, n - 1)
    longer = language(spec, n)
    for w in longer:
        assert w[1:] in shorter and w[:-1] in shorter
    for w in shorter:
        assert any(v[:-1] == w for v in longer)
        assert any(v[1:] == w for v in longer)


@settings(max_examples=80, deadline=None)
@given(sfts(max_k=4, max_len=2), st.data())
def test_feasible_agrees_with_language(pair, data):
    spec, _ = pair
    k = spec.alphabet
    span = data.draw(st.integers(1, 8))
    cons = data.draw(st.lists(st.tuples(st.integers(0, span - 1), st.integers(0, k - 1)), min_size=1, max_size=4))
    lo = min(p for p, _ in cons)
    hi = max(p for p, _ in cons)
    expect = any(all(w[p - lo] == a for p, a in cons) for w in language(spec, hi - lo + 1))
    assert feasible(spec, cons) == expect
    shifted = [(p + 7, a) for p, a in cons]
    assert feasible(spec, shifted) == expect


@st.composite
def clopens(draw, k=2):
    lo = draw(st.integers(-3, 3))
    width = draw(st.integers(0, 3))
    support = list(range(lo, lo + width))
    space = list(itertools.product(range(k), repeat=width))
    chosen = draw(st.lists(st.sampled_from(space), unique=True)) if space else []
    return ClopenSet.make(k, support, chosen)


def pointwise(c, x, origin):
    return tuple(x[p - origin] for p in c.support) in c.patterns


@settings(max_examples=80, deadline=None)
@given(clopens(), clopens(), st.integers(-4, 4), st.integers(-4, 4))
def test_clopen_ops_match_pointwise(a, b, s, t):
    origin = -12
    assert shift_preimage(shift_preimage(a, s), t) == shift_preimage(a, s + t)
    window = range(-4, 5)
    rng_points = itertools.islice(itertools.product(range(2), repeat=9), 0, 512, 7)
    for bits in rng_points:
        x = [0] * 24
        for i, p in enumerate(window):
            x[p - origin] = bits[i]
        ina, inb = pointwise(a, x, origin), pointwise(b, x, origin)
        assert pointwise(a & b, x, origin) == (ina and inb)
        assert pointwise(a | b, x, origin) == (ina or inb)
        assert pointwise(a - b, x, origin) == (ina and not inb)
        assert pointwise(a.complement(), x, origin) == (not ina)
        # (T^s x)(t) = x(t + s): x lies in s^{-1} a iff the shifted point lies in a
        sh = shift_preimage(a, s)
        shifted_point = [x[i + s] if 0 <= i + s < len(x) else 0 for i in range(len(x))]
        assert pointwise(sh, x, origin) == pointwise(a, shifted_point, origin)
