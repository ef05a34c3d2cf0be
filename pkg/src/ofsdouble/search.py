"""Budgeted backtracking used by every exhaustive enumeration."""
from __future__ import annotations

from typing import Callable, Iterable, Iterator

from .errors import BudgetExceeded

DEFAULT_BUDGET = 10_000_000

# running total across searches, read by the report writer
_usage = [0]


def budget_used() -> int:
    return _usage[0]


def reset_usage() -> None:
    _usage[0] = 0


class Meter:
    """Counts candidate checks for one search and enforces its limit."""

    def __init__(self, limit: int | None = None):
        self.limit = DEFAULT_BUDGET if limit is None else limit
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        _usage[0] += n
        if self.used > self.limit:
            raise BudgetExceeded(self.used, self.limit)


def meter(budget) -> Meter:
    if isinstance(budget, Meter):
        return budget
    return Meter(budget)


def backtrack(
    n_vars: int,
    domain: Callable[[int, list], Iterable],
    check: Callable[[int, list], bool],
    budget=None,
) -> Iterator[tuple]:
    """Yield every total assignment accepted by ``check``.

    Variable ``k`` draws candidates from ``domain(k, assign)`` where ``assign``
    holds the values of variables ``0..k-1``; ``check(k, assign)`` runs right
    after ``k`` is set and should test every constraint whose last variable is
    ``k``. Assignments come out in lexicographic order of candidate position.
    """
    m = meter(budget)
    if n_vars == 0:
        yield ()
        return
    assign: list = [None] * n_vars
    stack: list[Iterator] = [iter(domain(0, assign))]
    while stack:
        k = len(stack) - 1
        for value in stack[-1]:
            m.tick()
            assign[k] = value
            if check(k, assign):
                break
        else:
            assign[k] = None
            stack.pop()
            continue
        if k + 1 == n_vars:
            yield tuple(assign)
        else:
            stack.append(iter(domain(k + 1, assign)))

