import itertools

import pytest
from hypothesis import strategies as st

from skewsds.catalog import catalog
from skewsds.modring import ResidueSet

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def entries():
    return {e.name: e for e in catalog()}


def brute_difference_counts(members, n):
    """Ordered pair enumeration, independent of the vectorised path."""
    counts = [0] * n
    for i, j in itertools.permutations(members, 2):
        counts[(i - j) % n] += 1
    return counts


@st.composite
def residue_sets(draw, min_n=1, max_n=40):
    n = draw(st.integers(min_n, max_n))
    members = draw(st.sets(st.integers(0, n - 1)))
    return ResidueSet.from_members(n, members)
