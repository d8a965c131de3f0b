import pytest

from wittlab.perfect import PerfectRing


@pytest.fixture(scope="session")
def F2():
    return PerfectRing.field(2, 1)


@pytest.fixture(scope="session")
def F3():
    return PerfectRing.field(3, 1)


@pytest.fixture(scope="session")
def F4():
    return PerfectRing.field(2, 2)


@pytest.fixture(scope="session")
def F9():
    return PerfectRing.field(3, 2)
