"""
Test configuration and fixtures for resurf
"""

import random

import pytest

from resurf.config import configure
from resurf.core.parsing import parse_ternary
from resurf.services.fibration import WeierstrassModel
from resurf.services.plane_curves import CubicPencil, PlaneCurve, ProjPoint

# Eight rational points in general position
EIGHT_POINTS = [
    (1, 0, 0),
    (0, 1, 0),
    (0, 0, 1),
    (1, 1, 1),
    (1, 2, 3),
    (2, 3, 1),
    (3, 1, 2),
    (1, 4, 9),
]


@pytest.fixture(autouse=True)
def default_settings():
    """Reset global settings before every test."""
    yield configure()
    configure()


@pytest.fixture
def rng() -> random.Random:
    """Seeded random source for randomized checks."""
    return random.Random(20240229)


@pytest.fixture
def beauville_pencil() -> CubicPencil:
    """s(X+Y)(Y+Z)(Z+X) + tXYZ."""
    return CubicPencil(
        PlaneCurve(parse_ternary("(X+Y)*(Y+Z)*(Z+X)")),
        PlaneCurve(parse_ternary("X*Y*Z")),
    )


@pytest.fixture
def eight_points() -> list[ProjPoint]:
    return [ProjPoint.of(*p) for p in EIGHT_POINTS]


@pytest.fixture
def ii_star_model() -> WeierstrassModel:
    """II* at t = 0 and II at infinity: trivial Mordell-Weil group."""
    return WeierstrassModel.parse("y^2 = x^3 + t^5")


@pytest.fixture
def e8_model() -> WeierstrassModel:
    """Ten I1 fibers and II at infinity: Mordell-Weil lattice E8."""
    return WeierstrassModel.parse("y^2 = x^3 + x + t^5")


@pytest.fixture
def rank_one_model() -> WeierstrassModel:
    """IV* at 0, III at infinity: Mordell-Weil lattice <1/6>."""
    return WeierstrassModel.parse("y^2 = x^3 + t^3*x + t^4")


@pytest.fixture
def e7_model() -> WeierstrassModel:
    """III at infinity and nine I1 fibers: Mordell-Weil lattice E7v."""
    return WeierstrassModel.parse("y^2 = x^3 + t^3*x + 1")


@pytest.fixture
def cyclotomic_model() -> WeierstrassModel:
    """Six II fibers over t^6 + t^3 + 1, no reducible fibers."""
    return WeierstrassModel.parse("y^2 = x^3 + t^6 + t^3 + 1")


@pytest.fixture
def i5_model() -> WeierstrassModel:
    """I5 at 0, II at infinity and five I1 fibers."""
    return WeierstrassModel.parse("y^2 = x^3 - 1/48*x + t^5 + 1/864")
