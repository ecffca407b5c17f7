import pytest

from liepoisson.invariants import basic_invariants
from liepoisson.rootdata import (
    build_classical,
    splitting_borel_opposite,
    splitting_involution_max_rank,
    splitting_manin,
)


@pytest.fixture(scope="session")
def sl2():
    return build_classical("A", 1)


@pytest.fixture(scope="session")
def sl3():
    return build_classical("A", 2)


@pytest.fixture(scope="session")
def sp4():
    return build_classical("C", 2)


@pytest.fixture(scope="session")
def so5():
    return build_classical("B", 2)


@pytest.fixture(scope="session")
def sl2_borel(sl2):
    return splitting_borel_opposite(sl2)


@pytest.fixture(scope="session")
def sl3_borel(sl3):
    return splitting_borel_opposite(sl3)


@pytest.fixture(scope="session")
def sl2_involution(sl2):
    return splitting_involution_max_rank(sl2)


@pytest.fixture(scope="session")
def sl2_manin(sl2):
    return splitting_manin(sl2)[1]


@pytest.fixture(scope="session")
def sl2_inv(sl2):
    return basic_invariants(sl2)


@pytest.fixture(scope="session")
def sl3_inv(sl3):
    return basic_invariants(sl3)


@pytest.fixture(scope="session")
def sl3_involution(sl3):
    return splitting_involution_max_rank(sl3)


@pytest.fixture(scope="session")
def sl3_manin(sl3):
    return splitting_manin(sl3)[1]
