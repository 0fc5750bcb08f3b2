"""
Randomized identities over seeded draws
"""

from fractions import Fraction

import pytest

from resurf.core.exact_arith import HomogeneousPoly3
from resurf.core.exceptions import InvalidPencilError
from resurf.services.cusp import (
    cusp_configuration,
    cusp_point,
    manin_q_parameter,
    ninth_base_parameter,
)
from resurf.services.families import (
    FamilyId,
    check_family_member,
    family_arity,
    instantiate_family,
)
from resurf.services.fibration import curve_invariants, fiber_configuration
from resurf.services.plane_curves import (
    CUBIC_MONOMIALS,
    CubicPencil,
    PlaneCurve,
    base_points,
    pencil_through_points,
)

pytestmark = pytest.mark.integration


def det3(points) -> Fraction:
    (a, b, c), (d, e, f), (g, h, i) = (p.coords for p in points)
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def random_fraction(rng, bound=5) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, 3))


def random_cubic(rng) -> PlaneCurve:
    while True:
        coeffs = {m: rng.randint(-3, 3) for m in CUBIC_MONOMIALS}
        if any(coeffs.values()):
            return PlaneCurve(HomogeneousPoly3.from_dict(3, coeffs))


class TestModelIdentities:
    """Test invariants of random family members."""

    def test_euler_sum_and_discriminant(self, rng):
        """Test Euler sum 12 and 1728 delta = c4^3 - c6^2 on 200 models."""
        shapes = [FamilyId.E8A, FamilyId.E7A]
        for draw in range(200):
            family = shapes[draw % 2]
            coefficients = [rng.randint(-4, 4) for _ in range(family_arity(family))]
            model = instantiate_family(family, coefficients)
            c4, c6, delta = curve_invariants(model)
            assert 1728 * delta == c4**3 - c6 * c6
            assert fiber_configuration(model).euler_total == 12

    @pytest.mark.slow
    @pytest.mark.parametrize("family", list(FamilyId))
    def test_family_draws(self, rng, family):
        """Test that some of five random draws has the expected lattice."""
        checks = [
            check_family_member(
                family, [rng.randint(-5, 5) for _ in range(family_arity(family))]
            )
            for _ in range(5)
        ]
        assert any(check.matches for check in checks)
        assert all(check.matches or check.degenerate for check in checks)


class TestCuspIdentities:
    """Test the additive group law of the cuspidal cubic."""

    def test_collinearity(self, rng):
        """Test that determinants vanish exactly when parameters sum to zero."""
        for _ in range(200):
            u1, u2 = random_fraction(rng), random_fraction(rng)
            u3 = -(u1 + u2)
            if len({u1, u2, u3}) < 3:
                continue
            assert det3(cusp_configuration([u1, u2, u3])) == 0
            shifted = u3 + 1
            if shifted not in (u1, u2):
                assert det3(cusp_configuration([u1, u2, shifted])) != 0

    def test_index_three(self, rng):
        """Test 3 * Q = sum of the eight parameters."""
        for _ in range(100):
            parameters = [random_fraction(rng) for _ in range(8)]
            assert 3 * manin_q_parameter(parameters) == sum(parameters)

    @pytest.mark.slow
    def test_ninth_base_point(self, rng):
        """Test the ninth base point of ten random configurations."""
        done = 0
        while done < 10:
            parameters = rng.sample(range(-12, 13), 8)
            ninth = ninth_base_parameter(parameters)
            if ninth in parameters:
                continue
            points = cusp_configuration(parameters)
            loci = {r.locus for r in base_points(pencil_through_points(points))}
            assert loci - set(points) == {cusp_point(ninth)}
            done += 1


class TestBezout:
    """Test that base point multiplicities add up to nine."""

    @pytest.mark.slow
    def test_random_pencils(self, rng):
        """Test 100 random pencils."""
        done = 0
        while done < 100:
            try:
                pencil = CubicPencil(random_cubic(rng), random_cubic(rng))
            except InvalidPencilError:
                continue
            records = base_points(pencil)
            assert sum(r.multiplicity * r.orbit_size for r in records) == 9
            done += 1
