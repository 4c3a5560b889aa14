"""Open covers by clopen sets, minimal subcovers of iterated joins, and trace sets.

For a pairwise disjoint tuple ``(U_1, ..., U_k)`` the cover of interest is
``{U_1^c, ..., U_k^c}``.  Its ``n``-fold join ``V_{i=1..n} T^{-i} U`` has one
element per ``sigma in {1..k}^n``; the minimal subcover size ``N_n`` equals
the number ``F_S`` of the trace set ``S`` of the points on ``{1..n}``.  The
two sides are computed independently here: :func:`join_min_subcover` works
on words and clopen algebra, :func:`f_s` on trace patterns.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .setcover import DEFAULT_MAX_INCIDENCES, DEFAULT_MAX_NODES, min_set_cover
from .symbolic import ClopenSet, Subshift, memberships, shift_preimage


@dataclass(frozen=True)
class OpenCover:
    elements: tuple
    ambient: Subshift

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))


@dataclass(frozen=True)
class TraceSet:
    """A set of patterns ``window -> {0, 1, ..., k}``.

    ``patterns`` holds tuples aligned with ``window``; value 0 means "in no
    set of the tuple".
    """

    window: tuple
    k: int
    patterns: frozenset

    def __post_init__(self):
        window = tuple(int(z) for z in self.window)
        if any(a >= b for a, b in zip(window, window[1:])):
            raise ValueError("window positions must be strictly increasing")
        pats = frozenset(tuple(int(v) for v in p) for p in self.patterns)
        for p in pats:
            if len(p) != len(window):
                raise ValueError(f"pattern {p} does not fit window of size {len(window)}")
            if any(not 0 <= v <= self.k for v in p):
                raise ValueError(f"pattern {p} has values outside 0..{self.k}")
        object.__setattr__(self, "window", window)
        object.__setattr__(self, "patterns", pats)

    @classmethod
    def full(cls, k: int, window: Sequence[int], zero=False) -> "TraceSet":
        """All of ``{1..k}^window`` (``{0..k}^window`` with ``zero``)."""
        values = range(0 if zero else 1, k + 1)
        return cls(tuple(window), k, frozenset(itertools.product(values, repeat=len(window))))

    def __len__(self):
        return len(self.patterns)

    def indices(self, w: Iterable[int]) -> tuple:
        w = sorted(set(w))
        try:
            return tuple(self.window.index(z) for z in w)
        except ValueError:
            raise ValueError(f"{w} is not a subset of window {self.window}") from None

    def restrict(self, w: Iterable[int]) -> frozenset:
        idx = self.indices(w)
        return frozenset(tuple(p[i] for i in idx) for p in self.patterns)


@dataclass(frozen=True)
class EntropyProfile:
    """Rows ``(n, N_n, log(N_n) / n)``; logs are natural."""

    rows: tuple
    log_base: str = field(default="e")

    @property
    def counts(self):
        return [r[1] for r in self.rows]

    @property
    def rates(self):
        return [r[2] for r in self.rows]


def check_disjoint(sets: Sequence[ClopenSet]):
    for a, b in itertools.combinations(range(len(sets)), 2):
        if not sets[a].isdisjoint(sets[b]):
            raise ValueError(f"tuple elements {a + 1} and {b + 1} are not disjoint")


def is_cover(cover: OpenCover, window_length: int) -> bool:
    """Whether every admissible word on the window lies in some element.

    The window starts at the leftmost coordinate any element depends on and
    must be long enough to reach the rightmost one.
    """
    support = sorted({p for c in cover.elements for p in c.support})
    lo = support[0] if support else 0
    hi = support[-1] if support else 0
    if window_length < hi - lo + 1:
        raise ValueError(f"window length {window_length} shorter than cover span {hi - lo + 1}")
    cover.ambient.check_span(window_length)
    return all(any(v) for v in memberships(cover.ambient, cover.elements))


def join_min_subcover(
    spec: Subshift,
    sets: Sequence[ClopenSet],
    n: int,
    *,
    max_nodes: int = DEFAULT_MAX_NODES,
    max_incidences: int = DEFAULT_MAX_INCIDENCES,
) -> int:
    """Minimal number of join elements ``E_sigma = cap_t T^{-t} U_{sigma(t)}^c``
    (``t = 1..n``) needed to cover the subshift."""
    if n < 1:
        raise ValueError("n must be positive")
    sets = list(sets)
    check_disjoint(sets)
    k = len(sets)
    comps = [[shift_preimage(u.complement(), t) for u in sets] for t in range(1, n + 1)]
    positions = sorted({p for row in comps for c in row for p in c.support}) or [1]
    index = {p: i for i, p in enumerate(positions)}
    words = sorted(spec.realizations(positions))

    def allowed(word, c):
        return tuple(word[index[p]] for p in c.support) in c.patterns

    per_word = [[[i for i in range(k) if allowed(w, row[i])] for row in comps] for w in words]

    def options(e):
        return itertools.product(*per_word[e])

    size, _ = min_set_cover(len(words), options, max_nodes=max_nodes, max_incidences=max_incidences)
    return size


def comb_entropy_profile(spec: Subshift, sets: Sequence[ClopenSet], n_max: int, **budget) -> EntropyProfile:
    rows = []
    for n in range(1, n_max + 1):
        count = join_min_subcover(spec, sets, n, **budget)
        rows.append((n, count, math.log(count) / n))
    return EntropyProfile(tuple(rows))


def trace(spec: Subshift, sets: Sequence[ClopenSet], positions: Iterable[int]) -> TraceSet:
    """The set of ``j -> i`` maps (``i`` with ``T^j x in U_i``, else 0) over points x."""
    sets = list(sets)
    check_disjoint(sets)
    window = tuple(sorted(set(positions)))
    shifted = [shift_preimage(u, j) for j in window for u in sets]
    k = len(sets)
    patterns = set()
    for vec in memberships(spec, shifted):
        row = []
        for a in range(len(window)):
            hit = [i + 1 for i in range(k) if vec[a * k + i]]
            row.append(hit[0] if hit else 0)
        patterns.add(tuple(row))
    return TraceSet(window, k, frozenset(patterns))


def f_s(s: TraceSet, *, max_nodes: int = DEFAULT_MAX_NODES, max_incidences: int = DEFAULT_MAX_INCIDENCES) -> int:
    """Fewest sets ``prod_z {i_z}^c`` (``1 <= i_z <= k``) covering ``s``."""
    if s.k < 2:
        raise ValueError("F_S needs k >= 2")
    pats = sorted(s.patterns)
    choices = [[tuple(i for i in range(1, s.k + 1) if i != v) for v in p] for p in pats]

    def options(e):
        return itertools.product(*choices[e])

    def members(sigma):
        return [e for e, p in enumerate(pats) if all(v != i for v, i in zip(p, sigma))]

    size, _ = min_set_cover(len(pats), options, members, max_nodes=max_nodes, max_incidences=max_incidences)
    return size
