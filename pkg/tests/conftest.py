from fractions import Fraction

import pytest
from hypothesis import settings

from mangle.io import bundled_example, bundled_examples
from mangle.polytopes import Presentation, product, standard_simplex

settings.register_profile("default", deadline=None, derandomize=True)
settings.load_profile("default")


def pentagon_presentation():
    normals = [(1, 0), (0, 1), (-1, 0), (0, -1), (-1, -1)]
    return Presentation.from_normals(normals, (0, 0, 2, 2, 3))


def square_presentation():
    return Presentation.from_normals([(1, 0), (0, 1), (-1, 0), (0, -1)], (0, 0, 1, 1))


def as_fractions(rows):
    return [[Fraction(x) for x in r] for r in rows]


@pytest.fixture
def pentagon():
    return pentagon_presentation()


@pytest.fixture
def square():
    return square_presentation()


@pytest.fixture
def simplex2():
    return standard_simplex(2)


@pytest.fixture
def delta2_x_delta2():
    return product(standard_simplex(2), standard_simplex(2))


@pytest.fixture(scope="session")
def corpus():
    """Every bundled example, parsed, keyed by name."""
    return {name: bundled_example(name) for name in bundled_examples()}
