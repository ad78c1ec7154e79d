import itertools

import pytest
from hypothesis import settings, strategies as st

from posetmerge.order import Poset, reflexive_transitive_closure

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@st.composite
def posets(draw, max_size=6, prefix="x"):
    """Random labelled poset: random strict upper-triangular relation, closed, then shuffled."""
    n = draw(st.integers(0, max_size))
    rows = [1 << i for i in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        if draw(st.booleans()):
            rows[i] |= 1 << j
    closed = reflexive_transitive_closure(rows)
    perm = draw(st.permutations(range(n)))
    inv = {old: new for new, old in enumerate(perm)}
    new_rows = [0] * n
    for old, r in enumerate(closed):
        new_rows[inv[old]] = sum(1 << inv[j] for j in range(n) if (r >> j) & 1)
    return Poset(tuple(f"{prefix}{k + 1}" for k in range(n)), tuple(new_rows))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES
