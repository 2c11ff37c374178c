import pytest

from twinlab.sieve import census


@pytest.fixture(scope="session")
def census_1e5():
    return census(10 ** 5)


@pytest.fixture(scope="session")
def census_1e7():
    return census(10 ** 7)


@pytest.fixture(scope="session")
def census_1e9():
    return census(10 ** 9, threads=2)
