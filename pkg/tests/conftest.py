import pytest

from sring import ZMod, build_ring, mult_closure


@pytest.fixture(scope="session")
def z24():
    return build_ring(ZMod(24))


@pytest.fixture(scope="session")
def s24(z24):
    return mult_closure(z24, (2,))


@pytest.fixture(scope="session")
def z12():
    return build_ring(ZMod(12))


@pytest.fixture(scope="session")
def s12(z12):
    return mult_closure(z12, (4,))
