import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from combindep.errors import BudgetError
from combindep.setcover import min_set_cover, min_set_cover_explicit, naive_min_set_cover
from oracles import brute_min_cover


@st.composite
def instances(draw):
    n = draw(st.integers(0, 12))
    sets = draw(st.lists(st.sets(st.integers(0, max(n - 1, 0)), max_size=n), min_size=1, max_size=20))
    # make sure a cover exists
    sets.append(set(draw(st.permutations(range(n)))[: n // 2 + 1]) if n else set())
    covered = set().union(*sets)
    sets.extend({e} for e in range(n) if e not in covered)
    return n, [frozenset(s) for s in sets]


@settings(max_examples=150, deadline=None)
@given(instances())
def test_solvers_agree_with_exhaustive_oracles(inst):
    n, sets = inst
    expect = brute_min_cover(range(n), sets)
    size, chosen = min_set_cover_explicit(n, sets)
    assert size == expect == naive_min_set_cover(n, sets)
    assert set().union(*(sets[i] for i in chosen)) >= set(range(n)) if n else True


def test_lazy_entry_point():
    # elements 0..5, candidate sets keyed by name
    sets = {"a": {0, 1, 2}, "b": {3, 4, 5}, "c": {1, 4}, "d": {0, 3}, "e": {2, 5}}

    def options(e):
        return [k for k, v in sets.items() if e in v]

    size, chosen = min_set_cover(6, options, sets.__getitem__)
    assert size == 2 and sorted(chosen) == ["a", "b"]


def test_uncoverable_element():
    with pytest.raises(ValueError):
        min_set_cover(2, lambda e: ["x"] if e == 0 else [])


def test_inconsistent_members_rejected():
    with pytest.raises(ValueError):
        min_set_cover(2, lambda e: ["x"], lambda key: [0])


def test_budget_is_enforced():
    sets = [frozenset({i, (i + 1) % 12, (i + 5) % 12}) for i in range(12)]
    with pytest.raises(BudgetError):
        min_set_cover_explicit(12, sets, max_nodes=1)
    with pytest.raises(BudgetError):
        min_set_cover_explicit(12, sets, max_incidences=10)
