import itertools
import sys

import pytest
from hypothesis import settings, strategies as st

from grothvex.core import Permutation

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def permutations(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    return Permutation(tuple(draw(st.permutations(range(1, n + 1)))))


def subsets(n):
    for r in range(n + 1):
        yield from (frozenset(c) for c in itertools.combinations(range(1, n + 1), r))


@pytest.fixture
def P():
    return Permutation.parse


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines, key=lambda s: (int(s.split()[2].rstrip(":")), s)):
        terminalreporter.write_line(line)
