import pytest

from gkz import catalog
from gkz.fan import regular_triangulation


@pytest.fixture
def two_simplex():
    spec = catalog.two_simplex_system()
    return spec, regular_triangulation(spec, catalog.TWO_SIMPLEX_WEIGHT)


@pytest.fixture
def residue():
    spec = catalog.residue_system()
    return spec, regular_triangulation(spec, catalog.RESIDUE_WEIGHT)
