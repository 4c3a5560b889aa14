"""Depth-first search over downward-closed families of finite sets.

Both independence sets and shattered sets are closed under taking subsets,
so a set is only ever extended from a member of the family.  Candidates are
visited in increasing order, which makes the first maximum found the
lexicographically least one.
"""
from __future__ import annotations

from typing import Callable, Sequence

from .errors import BudgetError

DEFAULT_SEARCH_BOUND = 64
DEFAULT_MAX_NODES = 5_000_000


def max_member(
    candidates: Sequence,
    accept: Callable[[tuple], bool],
    *,
    cap: int | None = None,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> tuple:
    """Largest member of the family, lexicographically least among maxima.

    ``accept(t)`` is called on increasing tuples whose proper prefixes were
    accepted.  ``cap`` is an optional a priori bound on member size.
    """
    cands = sorted(candidates)
    best = ()
    nodes = 0
    limit = len(cands) if cap is None else min(cap, len(cands))

    def dfs(current, start):
        nonlocal best, nodes
        nodes += 1
        if nodes > max_nodes:
            raise BudgetError(f"search exceeded {max_nodes} nodes")
        if len(current) > len(best):
            best = current
        for i in range(start, len(cands)):
            if len(best) >= limit or len(current) + len(cands) - i <= len(best):
                return
            nxt = current + (cands[i],)
            if accept(nxt):
                dfs(nxt, i + 1)

    dfs((), 0)
    return best


def count_members(candidates: Sequence, accept: Callable[[tuple], bool], *, max_nodes: int = DEFAULT_MAX_NODES) -> int:
    """Number of nonempty members of the family."""
    cands = sorted(candidates)
    count = 0

    def dfs(current, start):
        nonlocal count
        for i in range(start, len(cands)):
            nxt = current + (cands[i],)
            if accept(nxt):
                count += 1
                if count > max_nodes:
                    raise BudgetError(f"search exceeded {max_nodes} nodes")
                dfs(nxt, i + 1)

    dfs((), 0)
    return count


def check_bound(size: int, bound: int, what: str):
    if size > bound:
        raise BudgetError(f"{what} of size {size} exceeds search bound {bound}")
