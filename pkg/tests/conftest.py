import pytest

from metaplectic.field import Place


@pytest.fixture(scope="session")
def q2():
    return Place.parse("q2")


@pytest.fixture(scope="session")
def q3():
    return Place.parse("q3")


@pytest.fixture(scope="session")
def q5():
    return Place.parse("q5")


@pytest.fixture(scope="session")
def real():
    return Place("real")
