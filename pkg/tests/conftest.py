import random

import pytest

from aislekit import Field, Ideal, PolyRing, PrimeTable


@pytest.fixture(scope="session")
def QX():
    return PolyRing(Field.rationals(), ["x"])


@pytest.fixture(scope="session")
def QXY():
    return PolyRing(Field.rationals(), ["x", "y"])


@pytest.fixture(scope="session")
def GF5XY():
    return PolyRing(Field.prime_field(5), ["x", "y"])


@pytest.fixture(scope="session")
def table_xy(QXY):
    x, y = QXY.gens()
    return PrimeTable(
        QXY,
        {
            "px": Ideal(QXY, [x]),
            "py": Ideal(QXY, [y]),
            "m00": Ideal(QXY, [x, y]),
        },
    )


@pytest.fixture(scope="session")
def table_x(QX):
    t = QX.var("x")
    one = QX.one
    return PrimeTable(
        QX,
        {
            "p0": Ideal(QX, [t]),
            "p1": Ideal(QX, [t - one]),
            "zero": Ideal(QX, []),
        },
    )


@pytest.fixture()
def rng():
    return random.Random(20250809)
