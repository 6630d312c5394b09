import pytest

from veech2 import fixtures


@pytest.fixture(scope="session")
def golden():
    return fixtures.golden_l()


@pytest.fixture(scope="session")
def d2():
    return fixtures.d2_h2()


@pytest.fixture(scope="session")
def torus():
    return fixtures.torus()
