"""Exact minimum set cover by branch and bound.

Elements are ``0..n-1``; candidate sets are opaque hashable keys whose
members are produced on demand, so a caller only materializes the
candidates that actually cover something.
"""
from __future__ import annotations

import itertools
from typing import Callable, Hashable, Iterable, Sequence

from .errors import BudgetError

DEFAULT_MAX_NODES = 2_000_000
DEFAULT_MAX_INCIDENCES = 5_000_000


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def min_set_cover(
    n_elements: int,
    options: Callable[[int], Iterable[Hashable]],
    members: Callable[[Hashable], Iterable[int]] | None = None,
    *,
    max_nodes: int = DEFAULT_MAX_NODES,
    max_incidences: int = DEFAULT_MAX_INCIDENCES,
):
    """Return ``(size, chosen_keys)`` for a minimum cover of all elements.

    ``options(e)`` lists keys of the candidate sets containing element ``e``.
    When ``members(key)`` is given, each materialized candidate is checked
    against it.  Raises ``BudgetError`` rather than returning a non-optimal
    answer, and ``ValueError`` when some element has no covering candidate.
    """
    if n_elements == 0:
        return 0, []
    keys = {}
    incidences = 0
    elem_opts = []
    for e in range(n_elements):
        ids = 0
        for key in options(e):
            idx = keys.setdefault(key, len(keys))
            ids |= 1 << idx
            incidences += 1
            if incidences > max_incidences:
                raise BudgetError(f"set-cover instance exceeds {max_incidences} incidences")
        if not ids:
            raise ValueError(f"element {e} is not covered by any candidate set")
        elem_opts.append(ids)
    key_list = sorted(keys, key=keys.get)
    masks = [0] * len(key_list)
    for e, ids in enumerate(elem_opts):
        for i in _bits(ids):
            masks[i] |= 1 << e
    for i, key in enumerate(key_list if members is not None else ()):
        stated = 0
        for e in members(key):
            stated |= 1 << e
        if stated & masks[i] != masks[i]:
            raise ValueError(f"members({key!r}) disagrees with options()")

    # Element e dominates e' when every set covering e also covers e'.
    order = sorted(range(n_elements), key=lambda e: (elem_opts[e].bit_count(), e))
    kept = []
    for e in order:
        if not any(elem_opts[f] & elem_opts[e] == elem_opts[f] for f in kept):
            kept.append(e)
    universe = 0
    for e in kept:
        universe |= 1 << e
    # A set that is the only option of some element belongs to every cover.
    forced = sorted({elem_opts[e].bit_length() - 1 for e in kept if elem_opts[e] & (elem_opts[e] - 1) == 0})
    for i in forced:
        universe &= ~masks[i]
    kept = [e for e in kept if universe >> e & 1]

    state = {"best": _greedy(universe, masks), "nodes": 0}

    def lower_bound(uncovered):
        # Pairwise disjoint option lists need distinct sets; so does sheer volume.
        used = 0
        count = 0
        for e in kept:
            if uncovered >> e & 1 and not elem_opts[e] & used:
                used |= elem_opts[e]
                count += 1
        widest = max((m & uncovered).bit_count() for m in masks)
        return max(count, -(-uncovered.bit_count() // widest))

    def search(uncovered, chosen):
        state["nodes"] += 1
        if state["nodes"] > max_nodes:
            raise BudgetError(f"set-cover search exceeded {max_nodes} nodes")
        if not uncovered:
            if len(chosen) < len(state["best"]):
                state["best"] = list(chosen)
            return
        if len(chosen) + lower_bound(uncovered) >= len(state["best"]):
            return
        pivot = min(
            (e for e in kept if uncovered >> e & 1),
            key=lambda e: elem_opts[e].bit_count(),
        )
        branch = sorted(_bits(elem_opts[pivot]), key=lambda i: (-(masks[i] & uncovered).bit_count(), i))
        for i in branch:
            chosen.append(i)
            search(uncovered & ~masks[i], chosen)
            chosen.pop()

    search(universe, [])
    chosen = sorted(forced + state["best"])
    return len(chosen), [key_list[i] for i in chosen]


def _greedy(universe, masks):
    chosen = []
    left = universe
    while left:
        i = max(range(len(masks)), key=lambda i: ((masks[i] & left).bit_count(), -i))
        chosen.append(i)
        left &= ~masks[i]
    return chosen


def min_set_cover_explicit(n_elements: int, sets: Sequence[Iterable[int]], **budget):
    """Convenience form taking the candidate sets as explicit element lists."""
    sets = [frozenset(s) for s in sets]
    covering = [[] for _ in range(n_elements)]
    for i, s in enumerate(sets):
        for e in s:
            covering[e].append(i)
    return min_set_cover(n_elements, covering.__getitem__, sets.__getitem__, **budget)


def naive_min_set_cover(n_elements: int, sets: Sequence[Iterable[int]]) -> int:
    """Exhaustive oracle: try every subfamily in order of size."""
    sets = [frozenset(s) for s in sets]
    target = frozenset(range(n_elements))
    for r in range(len(sets) + 1):
        for combo in itertools.combinations(sets, r):
            if frozenset().union(*combo) >= target:
                return r
    raise ValueError("candidate sets do not cover the universe")
