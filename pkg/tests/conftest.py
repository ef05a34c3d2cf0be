from __future__ import annotations

import itertools

from hypothesis import settings, strategies as st

from ofsdouble.fincat import poset

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@st.composite
def posets(draw, max_size: int = 4):
    """A random finite poset: transitive closure of a random relation compatible with 0 < 1 < ... < n-1."""
    n = draw(st.integers(1, max_size))
    pairs = [(i, j) for i, j in itertools.combinations(range(n), 2)]
    chosen = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    leq = {(i, i) for i in range(n)} | set(chosen)
    grown = True
    while grown:
        extra = {(a, d) for (a, b) in leq for (c, d) in leq if b == c} - leq
        leq |= extra
        grown = bool(extra)
    return poset(range(n), lambda x, y: (x, y) in leq)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS, TITLES

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(TITLES):
        title, ok = RESULTS.get(k, (TITLES[k], None))
        status = "not run" if ok is None else ("PASS" if ok else "FAIL")
        terminalreporter.write_line(f"criterion {k:2d}: {status}  {title}")
