import pytest

from latticelab import fixtures as fx


@pytest.fixture(scope="session")
def c2():
    return fx.c2()


@pytest.fixture(scope="session")
def c3():
    return fx.c3()


@pytest.fixture(scope="session")
def b2():
    return fx.b2()


@pytest.fixture(scope="session")
def b3():
    return fx.b3()


@pytest.fixture(scope="session")
def m3():
    return fx.m3()


@pytest.fixture(scope="session")
def n5():
    return fx.n5()


@pytest.fixture(scope="session")
def excip():
    return fx.excip()
