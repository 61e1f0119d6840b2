from __future__ import annotations

import random
from fractions import Fraction

import pytest

from sesh.exactalg import QQ
from sesh.numfield import NumberField
from sesh.p2geom import make_point

MINPOLYS = ["t^2-2", "t^2+1", "t^2-3", "t^3-2", "t^3-t-1", "t^4-2"]


@pytest.fixture(scope="session")
def fields():
    return {f: NumberField(f) for f in MINPOLYS}


@pytest.fixture(scope="session")
def q2(fields):
    return fields["t^2-2"]


@pytest.fixture(scope="session")
def cubic(fields):
    return fields["t^3-t-1"]


def random_element(rng: random.Random, field, spread: int = 3):
    if field is QQ:
        return Fraction(rng.randint(-spread, spread), rng.randint(1, 2))
    return field([Fraction(rng.randint(-spread, spread), rng.randint(1, 2)) for _ in range(field.degree)])


def random_point(rng: random.Random, fields: dict):
    """A random closed point; the coordinate field is QQ or one from the pool."""
    choice = rng.choice([None] + MINPOLYS)
    field = QQ if choice is None else fields[choice]
    while True:
        coords = [random_element(rng, field) for _ in range(3)]
        if any(c != 0 for c in coords):
            return make_point(field, coords)
