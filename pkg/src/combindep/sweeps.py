"""Seeded randomized sweeps over finite instances.

Each sweep draws its instances from ``random.Random(seed)`` and returns a
JSON-ready summary.  Without an explicit seed the seed is derived from the
sweep's name and parameters, never from the clock.
"""
from __future__ import annotations

import itertools
import math
import random
import zlib

from .covers import TraceSet
from .independence import IndependenceProblem, decompose_independence, is_independence_set
from .search import max_member
from .shattering import count_shattered, largest_shattered
from .symbolic import ClopenSet, FullShift, Subshift, clopen_product, golden_mean, product

SWEEPS = ("counting", "decomposition", "product")


def derive_seed(name: str, *params) -> int:
    return zlib.crc32(repr((name,) + params).encode())


def random_trace(rng: random.Random, max_window: int = 8, max_k: int = 3) -> TraceSet:
    """Window of up to ``max_window`` integers, ``k <= max_k``; patterns kept at random density.

    ``(k+1)^n`` is capped at 4096 so each instance stays cheap.
    """
    k = rng.randint(1, max_k)
    n = rng.randint(1, max_window)
    while (k + 1) ** n > 4096 and n > 1:
        n -= 1
    window = sorted(rng.sample(range(-4, 12), n))
    density = rng.choice((0.3, 0.6, 0.85, 0.95, 1.0))
    pats = {p for p in itertools.product(range(1, k + 1), repeat=n) if rng.random() < density}
    for _ in range(rng.randint(0, 6)):
        pats.add(tuple(rng.randint(0, k) for _ in range(n)))
    return TraceSet(tuple(window), k, frozenset(pats))


def counting_sweep(count: int = 1000, seed: int | None = None) -> dict:
    """``H_S > sum_{1<=j<=m} C(n, j)`` must force a shattered set of size ``> m``."""
    seed = derive_seed("counting", count) if seed is None else seed
    rng = random.Random(seed)
    violations = []
    for i in range(count):
        s = random_trace(rng)
        n = len(s.window)
        h = count_shattered(s)
        w = len(largest_shattered(s))
        for m in range(n + 1):
            if h > sum(math.comb(n, j) for j in range(1, m + 1)) and not w > m:
                violations.append({"instance": i, "m": m, "H": h, "largest": w})
    return {"sweep": "counting", "seed": seed, "instances": count, "violations": violations}


def random_clopen(rng: random.Random, spec: Subshift, span: int = 3) -> ClopenSet:
    """A random nonempty (in ``spec``) clopen set on a window of length ``<= span``."""
    lo = rng.randint(-1, 1)
    support = list(range(lo, lo + rng.randint(1, span)))
    words = sorted(spec.realizations(support))
    chosen = [w for w in words if rng.random() < 0.5] or [rng.choice(words)]
    return ClopenSet.make(spec.alphabet, support, chosen)


def product_sweep(count: int = 200, seed: int | None = None) -> dict:
    """Golden mean x full 2-shift: ``J`` is independent for ``(A_i x B_i)`` iff for both tuples."""
    seed = derive_seed("product", count) if seed is None else seed
    rng = random.Random(seed)
    x, y = golden_mean(), FullShift(2)
    xy = product(x, y)
    violations = []
    agree = {True: 0, False: 0}
    for i in range(count):
        k = rng.randint(2, 3)
        left = [random_clopen(rng, x) for _ in range(k)]
        right = [random_clopen(rng, y) for _ in range(k)]
        j = sorted(rng.sample(range(0, 7), rng.randint(1, 4)))
        lhs = is_independence_set(IndependenceProblem(xy, [clopen_product(a, b) for a, b in zip(left, right)]), j)
        rhs = is_independence_set(IndependenceProblem(x, left), j) and is_independence_set(IndependenceProblem(y, right), j)
        agree[lhs] += 1
        if lhs != rhs:
            violations.append({"instance": i, "J": j, "product": lhs, "factors": rhs})
    return {
        "sweep": "product",
        "seed": seed,
        "instances": count,
        "independent": agree[True],
        "not_independent": agree[False],
        "violations": violations,
    }


def decomposition_sweep(count: int = 200, seed: int | None = None) -> dict:
    """Full 2-shift: split ``A_1`` by a random clopen set and decompose a verified ``h``."""
    seed = derive_seed("decomposition", count) if seed is None else seed
    rng = random.Random(seed)
    x = FullShift(2)
    failures = []
    ratio_met = 0
    sizes = []
    for i in range(count):
        k = rng.randint(2, 3)
        sets = [random_clopen(rng, x, span=2) for _ in range(k)]
        p = IndependenceProblem(x, sets)
        cands = sorted(rng.sample(range(0, 12), 6))
        h = max_member(cands, lambda t: is_independence_set(p, t))
        cut = random_clopen(rng, x, span=3)
        first_a, first_b = sets[0] & cut, sets[0] - cut
        branch, got = decompose_independence(p, first_a, first_b, h)
        q = p.refine(first_a if branch == 1 else first_b)
        if not (set(got) <= set(h) and is_independence_set(q, got)):
            failures.append({"instance": i, "h": list(h), "i": list(got), "branch": branch})
        if len(got) >= math.ceil(len(h) / 4):
            ratio_met += 1
        sizes.append((len(h), len(got)))
    return {
        "sweep": "decomposition",
        "seed": seed,
        "instances": count,
        "ratio_quarter_met": ratio_met,
        "mean_h": sum(a for a, _ in sizes) / count if count else 0.0,
        "mean_i": sum(b for _, b in sizes) / count if count else 0.0,
        "violations": failures,
    }


def run_sweep(name: str, count: int, seed: int | None = None) -> dict:
    if name == "counting":
        return counting_sweep(count, seed)
    if name == "product":
        return product_sweep(count, seed)
    if name == "decomposition":
        return decomposition_sweep(count, seed)
    raise ValueError(f"unknown sweep {name!r}; choose from {', '.join(SWEEPS)}")
