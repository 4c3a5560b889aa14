"""Brute-force reference implementations used only by the tests.

Nothing here imports the package's search, set-cover or de Bruijn code.
"""
import itertools
import math


def sft_words(k, forbidden, n, pad=8):
    """Words of length n seen in the middle of some allowed word of length n + 2*pad.

    For the small SFTs in the tests every allowed word that long extends to a
    bi-infinite point, so this is the language.
    """
    forbidden = [tuple(w) for w in forbidden]

    def ok(word):
        return not any(word[i:i + len(f)] == f for f in forbidden for i in range(len(word) - len(f) + 1))

    out = set()
    for w in itertools.product(range(k), repeat=n + 2 * pad):
        if ok(w):
            out.add(w[pad:pad + n])
    return out


def independent(words, positions, sets):
    """All sigma realized by some word; ``words`` spans ``0..``, sets are predicates on (word, s)."""
    k = len(sets)
    for sigma in itertools.product(range(k), repeat=len(positions)):
        if not any(all(sets[i](w, s) for s, i in zip(positions, sigma)) for w in words):
            return False
    return True


def all_subsets_max(candidates, accept):
    """Largest accepted subset by trying every subset, lexicographically least among ties."""
    cands = sorted(candidates)
    for size in range(len(cands), -1, -1):
        for c in itertools.combinations(cands, size):
            if accept(c):
                return c
    return ()


def shattered(patterns, idx, values):
    seen = {tuple(p[i] for i in idx) for p in patterns}
    return all(r in seen for r in itertools.product(values, repeat=len(idx)))


def brute_largest_shattered(window, k, patterns):
    n = len(window)
    for size in range(n, -1, -1):
        for idx in itertools.combinations(range(n), size):
            if shattered(patterns, idx, range(1, k + 1)):
                return tuple(window[i] for i in idx)
    return ()


def brute_count_shattered(window, k, patterns):
    n = len(window)
    return sum(
        1
        for size in range(1, n + 1)
        for idx in itertools.combinations(range(n), size)
        if shattered(patterns, idx, range(1, k + 1))
    )


def brute_min_cover(universe, sets):
    """Smallest number of ``sets`` whose union contains ``universe``; trial by size."""
    universe = set(universe)
    if not universe:
        return 0
    useful = [frozenset(s) & universe for s in sets]
    useful = [s for s in set(useful) if s]
    for size in range(1, len(useful) + 1):
        for combo in itertools.combinations(useful, size):
            if set().union(*combo) >= universe:
                return size
    return math.inf


def brute_f_s(k, patterns):
    """F_S by enumerating every product of coordinate complements."""
    patterns = list(patterns)
    if not patterns:
        return 0
    n = len(patterns[0])
    boxes = []
    for avoid in itertools.product(range(1, k + 1), repeat=n):
        boxes.append({p for p in patterns if all(v != a for v, a in zip(p, avoid))})
    return brute_min_cover(patterns, boxes)


def sauer_bound(n, m):
    return sum(math.comb(n, i) for i in range(m))
