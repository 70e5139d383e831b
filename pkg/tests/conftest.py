import pytest

from clttf_aut.fixtures import fixture


@pytest.fixture(scope="session")
def G6():
    return fixture("G6")


@pytest.fixture(scope="session")
def G8():
    return fixture("G8")


@pytest.fixture(scope="session")
def G13():
    return fixture("G13")


@pytest.fixture(scope="session")
def GEVEN():
    return fixture("GEVEN")
