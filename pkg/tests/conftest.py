import pytest

from planefol.polynomials import PolyRing
from planefol.rings import QQ


@pytest.fixture
def ring_xyz():
    return PolyRing(QQ, ("x", "y", "z"))


@pytest.fixture
def ring_xy():
    return PolyRing(QQ, ("x", "y"))
