from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from ofsdouble import search
from ofsdouble.errors import BudgetExceeded


def _all(n, k, budget=None):
    return list(search.backtrack(n, lambda i, a: range(k), lambda i, a: True, budget))


@given(st.integers(0, 4), st.integers(1, 3))
def test_unconstrained_search_is_the_full_product(n, k):
    assert _all(n, k) == list(itertools.product(range(k), repeat=n))


@given(st.integers(1, 5), st.integers(1, 4))
def test_constraints_prune_like_a_filter(n, k):
    increasing = lambda i, a: i == 0 or a[i - 1] < a[i]
    found = list(search.backtrack(n, lambda i, a: range(k), increasing))
    assert found == [t for t in itertools.product(range(k), repeat=n) if list(t) == sorted(set(t))]


def test_budget_is_enforced_and_counted():
    search.reset_usage()
    with pytest.raises(BudgetExceeded) as info:
        _all(3, 3, budget=5)
    assert info.value.limit == 5 and search.budget_used() == 6


def test_shared_meter_spans_searches():
    m = search.Meter(10)
    _all(1, 5, m)
    with pytest.raises(BudgetExceeded):
        _all(1, 6, m)


def test_domains_see_earlier_values():
    # second variable ranges over values at least the first
    found = list(search.backtrack(2, lambda i, a: range(3) if i == 0 else range(a[0], 3), lambda i, a: True))
    assert len(found) == 6
