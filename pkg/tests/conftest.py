import pytest

from sg_workbench import corpus
from sg_workbench.algebra.fields import PrimeField


@pytest.fixture(scope="session")
def gf3():
    return PrimeField(3)


@pytest.fixture(scope="session")
def gf2():
    return PrimeField(2)


@pytest.fixture(scope="session")
def dual_numbers():
    return corpus.truncated_polynomial(2)


@pytest.fixture(scope="session")
def cubic():
    return corpus.truncated_polynomial(3)


@pytest.fixture(scope="session")
def a2():
    return corpus.a2()


@pytest.fixture(scope="session")
def two_loop():
    return corpus.two_loop()


@pytest.fixture(scope="session")
def square():
    return corpus.commutative_square()


@pytest.fixture(scope="session")
def nc_local():
    return corpus.noncommutative_local()


