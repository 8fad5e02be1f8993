import pytest

from multclose.finring import (
    chain_ring,
    full_extension,
    prime_diagonal_extension,
    product_ring,
)
from multclose.submodules import (
    enumerate_submodules,
    family_all_nonzero,
    family_f0,
    family_ideals,
)


@pytest.fixture(scope="session")
def b3():
    """F_2[x]/(x^3), the ring of the conductor-cube example."""
    return chain_ring(2, 1, 3)


@pytest.fixture(scope="session")
def b2():
    return chain_ring(2, 1, 2)


@pytest.fixture(scope="session")
def f4():
    return chain_ring(2, 2, 1)


@pytest.fixture(scope="session")
def f2xf2():
    return product_ring([chain_ring(2, 1, 1), chain_ring(2, 1, 1)])


@pytest.fixture(scope="session")
def ext_b3(b3):
    return prime_diagonal_extension(b3)


@pytest.fixture(scope="session")
def ext_b2(b2):
    return prime_diagonal_extension(b2)


@pytest.fixture(scope="session")
def f0_f4(f4):
    return family_f0(prime_diagonal_extension(f4))


@pytest.fixture(scope="session")
def f0_f2xf2(f2xf2):
    return family_f0(prime_diagonal_extension(f2xf2))


@pytest.fixture(scope="session")
def ideals_b3(b3):
    return family_ideals(full_extension(b3))


@pytest.fixture(scope="session")
def f0_b2(ext_b2):
    return family_f0(ext_b2)


@pytest.fixture(scope="session")
def nz_b2(ext_b2):
    return family_all_nonzero(ext_b2)


@pytest.fixture(scope="session")
def all_b3(ext_b3):
    return enumerate_submodules(ext_b3)


@pytest.fixture(scope="session")
def nz_b3(ext_b3):
    return family_all_nonzero(ext_b3)


@pytest.fixture(scope="session")
def f0_b3(ext_b3):
    return family_f0(ext_b3)
