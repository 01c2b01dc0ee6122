import pytest

from bellops import FreeRing


@pytest.fixture
def ring():
    return FreeRing(("s", "u", "a0", "a1", "a2", "a3", "a4"))


@pytest.fixture
def s(ring):
    return ring.gen("s")
