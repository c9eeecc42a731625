import pytest
from hypothesis import strategies as st

from stpreach import RMatrix, RVector, delta, vprod

A_EX3 = RMatrix([[1, 0, 1, 1], [0, 1, 0, 1]])
Y1 = RVector([2, 2, 3, 2, 1, 1])
Y2 = RVector([3, 3, 3, 2, 3, 3])
Y3 = RVector([0, 0, 1, 1, -1, -1])


@pytest.fixture
def A():
    return A_EX3


@pytest.fixture
def d3():
    return [delta(3, i) for i in (1, 2, 3)]


@pytest.fixture
def Ad3(d3):
    return [vprod(A_EX3, x) for x in d3]


small_ints = st.integers(-3, 3)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_dim=8, rows=None, cols=None):
    r = rows if rows is not None else draw(st.integers(1, max_dim))
    c = cols if cols is not None else draw(st.integers(1, max_dim))
    return RMatrix(draw(st.lists(small_ints, min_size=r * c, max_size=r * c)), r, c)


@st.composite
def vectors(draw, max_dim=8, dim=None):
    n = dim if dim is not None else draw(st.integers(1, max_dim))
    return RVector(draw(st.lists(small_ints, min_size=n, max_size=n)))


def pytest_terminal_summary(terminalreporter):
    from tests.test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
