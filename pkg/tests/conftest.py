import pytest

from infoineq import enumerate_eims, parse_universe


@pytest.fixture(scope="session")
def u2():
    return parse_universe("X1, X2")


@pytest.fixture(scope="session")
def u3():
    return parse_universe("X, Y, Z")


@pytest.fixture(scope="session")
def u4():
    return parse_universe("A, B, C, D")


@pytest.fixture(scope="session")
def g2():
    return enumerate_eims(2)


@pytest.fixture(scope="session")
def g3():
    return enumerate_eims(3)


@pytest.fixture(scope="session")
def g4():
    return enumerate_eims(4)
