import pytest

from delpezzo import (
    find_diagonal_cubic_subgroup,
    generate_group,
    make_lattice,
    weyl_generators,
)


@pytest.fixture(scope="session")
def lat6():
    return make_lattice(6)


@pytest.fixture(scope="session")
def we6(lat6):
    return generate_group(weyl_generators(lat6))


@pytest.fixture(scope="session")
def diag_subgroup(we6, lat6):
    return find_diagonal_cubic_subgroup(we6, lat6)
