from fractions import Fraction as F

import pytest
from hypothesis import strategies as st

from mopbidiag.measures import DiscreteMeasureMatrix


@pytest.fixture
def two_node():
    """q = p = 1, unit masses at 1 and 2; moments 1 + 2^k."""
    return DiscreteMeasureMatrix.build(1, 1, [(1, [1]), (2, [1])])


@pytest.fixture
def node_at_zero():
    return DiscreteMeasureMatrix.build(1, 1, [(0, [1]), (1, [1])])


small = st.fractions(min_value=-9, max_value=9, max_denominator=12)


@st.composite
def measures(draw, max_nodes=5):
    """Random q x p discrete measure matrix with a size N inside the rank bound."""
    q = draw(st.integers(1, 3))
    p = draw(st.integers(1, 3))
    nodes = draw(st.lists(st.integers(-12, 12), min_size=1, max_size=max_nodes, unique=True))
    den = draw(st.integers(1, 3))
    pts = [(F(x, den), [[draw(small) for _ in range(p)] for _ in range(q)]) for x in nodes]
    mu = DiscreteMeasureMatrix.build(q, p, pts)
    n = draw(st.integers(1, min(8, len(nodes) * min(p, q))))
    return mu, n


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def acceptance_log(request):
    """Session list of one-line acceptance verdicts, echoed in the terminal summary."""
    return request.config.stash.setdefault(_ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
