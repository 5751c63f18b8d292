import pytest

from privzone import build_graph


@pytest.fixture
def p3():
    return build_graph([(0, 1), (1, 2)])


@pytest.fixture
def p4():
    return build_graph([(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def c6():
    return build_graph([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])


@pytest.fixture
def k4():
    return build_graph([(i, j) for i in range(4) for j in range(i + 1, 4)])


@pytest.fixture
def s4():
    return build_graph([(0, 1), (0, 2), (0, 3), (0, 4)])
