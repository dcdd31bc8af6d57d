import functools
import random
from fractions import Fraction
from pathlib import Path

import pytest

from shapecert.fileio import load_description, realization_from_description

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name):
    return str(FIXTURES / (name + ".json"))


@functools.lru_cache(maxsize=None)
def load_fixture(name):
    """(realization, lengths, description) for a named fixture file."""
    desc = load_description(fixture_path(name))
    return realization_from_description(desc), desc.lengths, desc


@pytest.fixture
def triangle():
    return load_fixture("triangle")


@pytest.fixture
def icosahedron():
    return load_fixture("icosahedron")


@pytest.fixture
def four_simplex():
    return load_fixture("four_simplex")


@pytest.fixture
def hex_antiprism():
    return load_fixture("hex_antiprism")


def rational_rng(seed):
    """Deterministic generator of smallish random Fractions."""
    rnd = random.Random(seed)

    def draw(lo=-10, hi=10, max_den=20):
        return Fraction(rnd.randint(lo, hi), rnd.randint(1, max_den))

    draw.rnd = rnd
    return draw
