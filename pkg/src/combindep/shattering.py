"""Shattered windows of trace sets and the constants behind the shattering lemma.

A subset ``W`` of the window is *fully shattered* by ``S`` when every map
``W -> {1..k}`` is the restriction of a pattern of ``S``.  The family of
shattered sets is downward closed, which every search here relies on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .covers import TraceSet, f_s
from .search import check_bound, count_members, max_member

DEFAULT_WINDOW_BOUND = 24


def _shatter_test(s: TraceSet, values):
    """Predicate on tuples of window positions: is ``values^W`` inside ``S|_W``."""
    where = {z: i for i, z in enumerate(s.window)}
    allowed = frozenset(values)
    pats = list(s.patterns)
    size = len(allowed)

    def accept(w):
        if not w:
            return True
        idx = [where[z] for z in w]
        seen = {tuple(p[i] for i in idx) for p in pats}
        return sum(1 for r in seen if all(v in allowed for v in r)) == size ** len(w)

    return accept


def is_fully_shattered(s: TraceSet, w: Iterable[int]) -> bool:
    w = sorted(set(w))
    s.indices(w)
    return _shatter_test(s, range(1, s.k + 1))(w)


def _cap(s: TraceSet) -> int:
    """Shattering ``W`` needs ``k^|W|`` distinct patterns."""
    if s.k < 2:
        return len(s.window)
    m = 0
    while s.k ** (m + 1) <= len(s.patterns):
        m += 1
    return m


def largest_shattered(s: TraceSet, *, search_bound: int = DEFAULT_WINDOW_BOUND) -> tuple:
    """A largest fully shattered subset of the window, lexicographically least."""
    check_bound(len(s.window), search_bound, "window")
    if not s.patterns:
        return ()
    return max_member(s.window, _shatter_test(s, range(1, s.k + 1)), cap=_cap(s))


def count_shattered(s: TraceSet, *, search_bound: int = DEFAULT_WINDOW_BOUND) -> int:
    """``H_S``: the number of nonempty fully shattered subsets of the window."""
    check_bound(len(s.window), search_bound, "window")
    if not s.patterns:
        return 0
    return count_members(s.window, _shatter_test(s, range(1, s.k + 1)))


# -- constants ----------------------------------------------------------------


def binary_entropy(x: float) -> float:
    if x <= 0 or x >= 1:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def as_fraction(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**9)
    return Fraction(x)


@dataclass(frozen=True)
class KeyLemmaConstants:
    k: int
    b: Fraction
    lam: Fraction
    b1: float
    b2: float
    t: float
    c: Fraction
    denominator_limit: int
    enforced: tuple


def _inverse_entropy(t: float) -> float:
    lo, hi = 0.0, 0.5
    for _ in range(200):
        mid = (lo + hi) / 2
        if binary_entropy(mid) <= t:
            lo = mid
        else:
            hi = mid
    return lo


def _pick_c(t: float, verify_up_to: int):
    """Largest ``p/q`` with ``H(p/q) <= t`` and ``q`` bounded.

    The denominator bound starts at 64 and grows by factors of 4 until some
    fraction qualifies.  ``sum_{0<=j<=cn} C(n, j) <= 2^{H(c) n}`` for
    ``c <= 1/2`` gives the tail bound for every ``n``; the finite range is
    also checked with exact binomial sums.
    """
    target = _inverse_entropy(t * (1 - 1e-12))
    limit = 64
    while limit * target < 1:
        limit *= 4
        if limit > 1 << 30:
            raise ValueError(f"t = {t:.3g} too small: no usable c")
    best = Fraction(0)
    for q in range(1, limit + 1):
        p = math.floor(target * q)
        while p >= 1 and binary_entropy(p / q) > t * (1 - 1e-12):
            p -= 1
        if p >= 1 and Fraction(p, q) > best:
            best = Fraction(p, q)
    for n in range(1, verify_up_to + 1):
        total = sum(math.comb(n, j) for j in range(1, math.floor(best * n) + 1))
        if total and math.log2(total) >= t * n:
            raise AssertionError(f"binomial tail bound fails at n={n}")
    return best, limit


def key_lemma_constants(k: int, b, *, verify_up_to: int = 200) -> KeyLemmaConstants:
    """Constants ``lambda, b1, b2, t, c`` for alphabet size ``k`` and exponent ``b``.

    ``lambda`` is 1/4 when that keeps ``b1 = b + log_k(1 - lambda)`` positive,
    otherwise the midpoint of the admissible part of ``(0, 1/3)``.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    b = as_fraction(b)
    if b <= 0:
        raise ValueError("infeasible b: b1 = b + log_k(1 - lambda) > 0 needs b > 0")
    upper = min(1 / 3, 1 - k ** (-float(b)))
    lam = Fraction(1, 4)
    if lam >= upper:
        lam = Fraction(upper / 2).limit_denominator(10**6)
        while lam <= 0 or lam >= upper:
            lam /= 2
    b1 = float(b) + math.log(1 - lam, k)
    if b1 <= 0:
        raise ValueError("infeasible b: b1 = b + log_k(1 - lambda) <= 0")
    b2 = math.log((1 - lam) / lam, k)
    t = b1 * math.log2((k + 1) / k) / (2 * b2)
    c, limit = _pick_c(t, verify_up_to)
    enforced = (
        "0 < lambda < 1/3",
        "b1 = b + log_k(1 - lambda) > 0",
        "b2 = log_k((1 - lambda) / lambda) > 0",
        "H(c) <= t, hence sum_{1<=j<=cn} C(n, j) < 2^{tn} for all n >= 1",
        f"sum_{{1<=j<=cn}} C(n, j) < 2^{{tn}} checked exactly for n <= {verify_up_to}",
    )
    return KeyLemmaConstants(k, b, lam, b1, b2, t, c, limit, enforced)


@dataclass(frozen=True)
class KeyLemmaReport:
    holds_hypothesis: bool
    f_s: int
    bound: float
    w: tuple | None
    ratio: Fraction | None
    constants: KeyLemmaConstants | None
    meets_c: bool | None


def key_lemma_witness(s: TraceSet, b, **budget) -> KeyLemmaReport:
    """Test ``F_S >= k^{b |Z|}`` and, when it holds, report a largest shattered ``W``.

    Whether ``|W| >= c |Z|`` is reported, not asserted: the constant is only
    guaranteed for large windows.
    """
    b = as_fraction(b)
    n = len(s.window)
    fs = f_s(s, **budget)
    holds = fs ** b.denominator >= s.k ** (b.numerator * n)
    bound = s.k ** (float(b) * n)
    if not holds:
        return KeyLemmaReport(False, fs, bound, None, None, None, None)
    w = largest_shattered(s)
    ratio = Fraction(len(w), n) if n else Fraction(0)
    try:
        constants = key_lemma_constants(s.k, b)
    except ValueError:
        constants = None
    meets = None if constants is None else ratio >= constants.c
    return KeyLemmaReport(True, fs, bound, w, ratio, constants, meets)


def km_witness(s: TraceSet, lam) -> tuple | None:
    """If ``|S| >= ((k-1) lam)^n`` return a largest fully shattered set, else ``None``."""
    if any(v == 0 for p in s.patterns for v in p):
        raise ValueError("patterns must take values in 1..k")
    lam = as_fraction(lam)
    if lam <= 1:
        raise ValueError("lambda must exceed 1")
    n = len(s.window)
    if len(s.patterns) * lam.denominator**n < ((s.k - 1) * lam.numerator) ** n:
        return None
    w = largest_shattered(s)
    if not is_fully_shattered(s, w):
        raise AssertionError("largest_shattered returned a non-shattered set")
    return w


def two_valued_decompose(s, z_alphabet: Iterable, window=None) -> tuple:
    """Find ``I`` with ``S|_I`` containing ``(Z u {1})^I`` or ``(Z u {2})^I``.

    ``s`` is a :class:`TraceSet` or a collection of equal-length tuples over
    ``Z u {1, 2}`` (window ``1..n`` unless given).  Collapsing 1 and 2 to 3
    must map ``s`` bijectively onto ``(Z u {3})^n``.  Returns ``(branch, I)``
    with ``I`` largest over both branches; ties go to branch 1.
    """
    if isinstance(s, TraceSet):
        window, patterns = s.window, list(s.patterns)
    else:
        patterns = [tuple(p) for p in s]
        n = len(patterns[0]) if patterns else 0
        window = tuple(window) if window is not None else tuple(range(1, n + 1))
    zs = frozenset(z_alphabet)
    if zs & {1, 2, 3}:
        raise ValueError("Z must avoid the values 1, 2 and 3")
    n = len(window)
    if any(len(p) != n for p in patterns):
        raise ValueError("patterns do not fit the window")
    if any(v not in zs and v not in (1, 2) for p in patterns for v in p):
        raise ValueError("pattern values must lie in Z u {1, 2}")
    images = {tuple(3 if v in (1, 2) else v for v in p) for p in patterns}
    if len(images) != len(set(patterns)) or len(images) != (len(zs) + 1) ** n:
        raise ValueError("collapsing 1, 2 -> 3 is not a bijection onto (Z u {3})^n")
    trace = _Loose(tuple(window), frozenset(patterns))
    found = [max_member(window, _shatter_test(trace, zs | {b})) for b in (1, 2)]
    branch = 1 if len(found[0]) >= len(found[1]) else 2
    return branch, found[branch - 1]


@dataclass(frozen=True)
class _Loose:
    window: tuple
    patterns: frozenset
