import pytest

from coverlink.groupring import FiniteGroup
from coverlink.qm import QmInstance, qm_presentation


@pytest.fixture(scope="session")
def gm_group_p0():
    return FiniteGroup.from_presentation(qm_presentation(QmInstance(0)))


@pytest.fixture(scope="session")
def gm_group_p1():
    return FiniteGroup.from_presentation(qm_presentation(QmInstance(1)))


@pytest.fixture(scope="session")
def z2_group():
    return FiniteGroup.cyclic(2)


@pytest.fixture(scope="session")
def trivial_group():
    return FiniteGroup.trivial()
