from fractions import Fraction

import pytest

from src.config.settings import get_settings
from src.groups.free import FreeGroup
from src.groups.heisenberg import HeisenbergGroup
from src.groups.lattice import IntegerLattice
from src.metrics.regularized import DeltaLengths
from src.metrics.word import WeightedGeneratingSet, WordMetric


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def integers():
    return IntegerLattice(1)


@pytest.fixture
def plane():
    return IntegerLattice(2)


@pytest.fixture
def f2():
    return FreeGroup(2)


@pytest.fixture
def heisenberg():
    return HeisenbergGroup()


@pytest.fixture
def z_metric(integers):
    return WordMetric(WeightedGeneratingSet.standard(integers))


@pytest.fixture
def f2_metric(f2):
    return WordMetric(WeightedGeneratingSet.standard(f2))


@pytest.fixture
def delta_plane(plane):
    return DeltaLengths.build(plane, {u: Fraction(3, 5) for u in [(1, 0), (-1, 0), (0, 1), (0, -1)]})
