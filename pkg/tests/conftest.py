import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from signrank import all_ones_realization, paper_pattern  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def paper():
    return paper_pattern()


@pytest.fixture(scope="session")
def ones(paper):
    return all_ones_realization(paper).matrix


def small_fractions(bound=6):
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, bound))


def rational_matrices(min_n=1, max_n=5, bound=6, square=True):
    @st.composite
    def build(draw):
        n = draw(st.integers(min_n, max_n))
        m = n if square else draw(st.integers(min_n, max_n))
        return [[draw(small_fractions(bound)) for _ in range(m)] for _ in range(n)]
    return build()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
