"""Independence sets of tuples of clopen sets, and finite evidence for IE/IN/IT.

A finite ``J`` is an independence set for ``(A_1, ..., A_k)`` when for every
``sigma: J -> {1..k}`` some point lies in ``T^{-s} A_{sigma(s)}`` for all
``s`` in ``J``.  Subshifts are shift invariant, so the answer only depends on
``J`` up to translation; results are memoized on the translated set.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .search import DEFAULT_SEARCH_BOUND, check_bound, max_member
from .symbolic import ClopenSet, Subshift, intersects, memberships, shift_preimage

DENSITY_THRESHOLD = Fraction(1, 20)

DENSITY_BOUNDED_BELOW = "densityBoundedBelow"
UNBOUNDED_GROWTH = "unboundedGrowth"
BOUNDED = "bounded"


@dataclass(frozen=True)
class IndependenceProblem:
    spec: Subshift
    sets: tuple
    checked: bool = field(default=True, compare=False, repr=False)
    _memo: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        sets = tuple(self.sets)
        object.__setattr__(self, "sets", sets)
        if not sets:
            raise ValueError("the tuple must have at least one set")
        for i, a in enumerate(sets):
            if a.alphabet != self.spec.alphabet:
                raise ValueError(f"set {i + 1} has alphabet {a.alphabet}, subshift has {self.spec.alphabet}")
            if self.checked and not intersects(self.spec, a):
                raise ValueError(f"set {i + 1} does not meet the subshift")

    @property
    def k(self):
        return len(self.sets)

    def refine(self, first: ClopenSet) -> "IndependenceProblem":
        """The same problem with the first set replaced."""
        return IndependenceProblem(self.spec, (first,) + self.sets[1:], checked=False)


def realized_assignments(p: IndependenceProblem, j: Iterable[int]) -> set:
    """All ``sigma`` (as tuples over sorted ``j``, values ``1..k``) realized by some point."""
    j = sorted(set(j))
    k = p.k
    shifted = [shift_preimage(a, s) for s in j for a in p.sets]
    out = set()
    for vec in memberships(p.spec, shifted):
        choices = [[i + 1 for i in range(k) if vec[a * k + i]] for a in range(len(j))]
        out.update(itertools.product(*choices))
    return out


def is_independence_set(p: IndependenceProblem, j: Iterable[int]) -> bool:
    j = sorted(set(j))
    if not j:
        return True
    rel = tuple(s - j[0] for s in j)
    hit = p._memo.get(rel)
    if hit is None:
        hit = p._memo[rel] = len(realized_assignments(p, rel)) == p.k ** len(rel)
    return hit


def max_independence_subset(p: IndependenceProblem, interval: tuple, *, search_bound: int = DEFAULT_SEARCH_BOUND) -> tuple:
    """Largest independence set inside ``[a, b)``, lexicographically least among maxima."""
    a, b = interval
    check_bound(b - a, search_bound, "interval")
    return max_member(range(a, b), lambda t: is_independence_set(p, t))


@dataclass(frozen=True)
class DensityProfile:
    """Rows ``(n, best(n), best(n)/n)`` and a heuristic label.

    The label is evidence only: ``densityBoundedBelow`` when the last ratio is
    at least 1/20, ``bounded`` when ``best`` is constant over the second half
    of the range, ``unboundedGrowth`` otherwise.
    """

    rows: tuple
    hint: str

    def to_csv(self) -> str:
        lines = ["n,best,ratio"]
        lines += [f"{n},{best},{float(ratio)!r}" for n, best, ratio in self.rows]
        return "\n".join(lines) + "\n"


def classify(rows: Sequence[tuple]) -> str:
    n_max, best_last, ratio_last = rows[-1]
    if ratio_last >= DENSITY_THRESHOLD:
        return DENSITY_BOUNDED_BELOW
    half = [best for n, best, _ in rows if 2 * n >= n_max]
    if all(b == best_last for b in half):
        return BOUNDED
    return UNBOUNDED_GROWTH


def density_profile(p: IndependenceProblem, n_max: int, *, search_bound: int = DEFAULT_SEARCH_BOUND) -> DensityProfile:
    if n_max < 1:
        raise ValueError("n_max must be positive")
    check_bound(n_max, search_bound, "interval")
    rows = []
    for n in range(1, n_max + 1):
        best = len(max_independence_subset(p, (0, n), search_bound=search_bound))
        rows.append((n, best, Fraction(best, n)))
    return DensityProfile(tuple(rows), classify(rows))


def decompose_independence(p: IndependenceProblem, first_a: ClopenSet, first_b: ClopenSet, h: Iterable[int]) -> tuple:
    """Split the first set as ``first_a | first_b`` and keep as much of ``h`` as possible.

    Returns ``(branch, i)`` where ``i`` is a largest subset of ``h`` that is an
    independence set after replacing the first set by ``first_a`` (branch 1)
    or ``first_b`` (branch 2).  Ties go to branch 1.
    """
    h = tuple(sorted(set(h)))
    if not is_independence_set(p, h):
        raise ValueError(f"{list(h)} is not an independence set for the tuple")
    if not p.sets[0].issubset(first_a | first_b):
        raise ValueError("the two pieces do not cover the first set")
    if not h:
        return 1, ()
    found = []
    for piece in (first_a, first_b):
        q = p.refine(piece)
        found.append(max_member(h, lambda t, q=q: is_independence_set(q, t)))
    branch = 1 if len(found[0]) >= len(found[1]) else 2
    return branch, found[branch - 1]


def joint_meeting_time(spec: Subshift, opens: Sequence[ClopenSet], s_range: tuple):
    """Least ``s`` in ``[a, b)`` with ``U_i`` meeting ``T^{-s} U_j`` for all ``i, j``."""
    opens = list(opens)
    if not opens:
        raise ValueError("need at least one open set")
    for i, u in enumerate(opens):
        if not intersects(spec, u):
            raise ValueError(f"open set {i + 1} does not meet the subshift")
    m = len(opens)
    for s in range(*s_range):
        vecs = memberships(spec, opens + [shift_preimage(u, s) for u in opens])
        if all(any(v[i] and v[m + j] for v in vecs) for i in range(m) for j in range(m)):
            return s
    return None
