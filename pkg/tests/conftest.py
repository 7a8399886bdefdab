import pytest

from mumford.abelian import FinAbGroup
from mumford.group import GAction, cyclic, klein, symmetric


@pytest.fixture(scope="session")
def c2():
    return cyclic(2)


@pytest.fixture(scope="session")
def s3():
    return symmetric(3)


@pytest.fixture(scope="session")
def klein_trivial():
    V = klein()
    return GAction.trivial(V, FinAbGroup.cyclic(2))
