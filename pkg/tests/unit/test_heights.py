"""
Unit tests for sections, intersection numbers and the height pairing
"""

from fractions import Fraction

import pytest

from resurf.core.exact_arith import T_POLY, UniPoly
from resurf.core.exceptions import ValidationError
from resurf.services.fibration import WeierstrassModel, fiber_configuration
from resurf.services.heights import (
    ZERO_SECTION,
    Section,
    add_sections,
    fiber_contribution,
    height_pairing,
    is_integral_section,
    multiply_section,
    narrow_membership,
    negate_section,
    on_curve,
    require_on_curve,
    section_intersection,
    zero_intersection,
)

t = T_POLY


@pytest.fixture
def cyclotomic_section():
    return Section.point(t, t**3 + 1)


@pytest.fixture
def i5_section():
    return Section.point(t**2 + Fraction(1, 12), t**3 + Fraction(1, 2) * t**2)


@pytest.fixture
def torsion_model():
    """Point of order six: I6 at 0, I3 at -1, I1 and I2 at infinity."""
    b = t**2 + t
    return WeierstrassModel(1 - t, -b, -b, UniPoly(), UniPoly())


class TestSection:
    """Test section construction and membership."""

    def test_half_specified_section(self):
        """Test that both coordinates are required."""
        with pytest.raises(ValidationError):
            Section(x=Section.point(0, 0).x)

    def test_zero_section(self):
        """Test the zero section O."""
        assert ZERO_SECTION.is_zero
        assert ZERO_SECTION.to_json() == "O"
        with pytest.raises(ValidationError):
            ZERO_SECTION.coords()

    def test_on_curve(self, cyclotomic_model, cyclotomic_section):
        """Test the defining equation."""
        assert on_curve(cyclotomic_section, cyclotomic_model)
        assert on_curve(ZERO_SECTION, cyclotomic_model)
        assert not on_curve(Section.point(t, t**3), cyclotomic_model)

    def test_require_on_curve(self, cyclotomic_model):
        """Test the error for a point off the curve."""
        with pytest.raises(ValidationError):
            require_on_curve(Section.point(0, 0), cyclotomic_model)

    def test_integral_sections(self, cyclotomic_model, cyclotomic_section):
        """Test polynomial sections of bounded degree."""
        assert is_integral_section(cyclotomic_section)
        assert not is_integral_section(ZERO_SECTION)
        doubled = multiply_section(cyclotomic_section, 2, cyclotomic_model)
        assert not is_integral_section(doubled)


class TestGroupLaw:
    """Test addition of sections."""

    def test_inverse(self, cyclotomic_model, cyclotomic_section):
        """Test P + (-P) = O."""
        minus = negate_section(cyclotomic_section, cyclotomic_model)
        assert minus == Section.point(t, -(t**3) - 1)
        assert add_sections(cyclotomic_section, minus, cyclotomic_model) == ZERO_SECTION

    def test_identity(self, cyclotomic_model, cyclotomic_section):
        """Test P + O = P."""
        assert add_sections(cyclotomic_section, ZERO_SECTION, cyclotomic_model) == (
            cyclotomic_section
        )

    def test_doubling_stays_on_curve(self, cyclotomic_model, cyclotomic_section):
        """Test 2P and 3P on the curve."""
        doubled = multiply_section(cyclotomic_section, 2, cyclotomic_model)
        assert doubled == add_sections(
            cyclotomic_section, cyclotomic_section, cyclotomic_model
        )
        assert on_curve(doubled, cyclotomic_model)
        tripled = add_sections(doubled, cyclotomic_section, cyclotomic_model)
        assert on_curve(tripled, cyclotomic_model)
        assert multiply_section(cyclotomic_section, 3, cyclotomic_model) == tripled

    def test_negative_multiple(self, cyclotomic_model, cyclotomic_section):
        """Test (-1)P = -P."""
        assert multiply_section(cyclotomic_section, -1, cyclotomic_model) == (
            negate_section(cyclotomic_section, cyclotomic_model)
        )

    def test_long_form_inverse(self):
        """Test negation with a1 and a3."""
        model = WeierstrassModel.parse("y^2 + t*x*y + y = x^3 + t^2*x")
        p = Section.point(0, 0)
        assert on_curve(p, model)
        minus = negate_section(p, model)
        assert minus == Section.point(0, -1)
        assert on_curve(minus, model)
        assert add_sections(p, minus, model) == ZERO_SECTION


class TestIntersections:
    """Test intersection numbers of sections."""

    def test_integral_section_misses_zero(self, cyclotomic_model, cyclotomic_section):
        """Test (P.O) = 0 for a polynomial section."""
        assert zero_intersection(cyclotomic_section, cyclotomic_model) == 0

    def test_doubled_section_meets_zero(self, cyclotomic_model, cyclotomic_section):
        """Test (2P.O) = 3."""
        doubled = multiply_section(cyclotomic_section, 2, cyclotomic_model)
        assert zero_intersection(doubled, cyclotomic_model) == 3
        assert section_intersection(doubled, ZERO_SECTION, cyclotomic_model) == 3

    def test_section_and_its_inverse(self, cyclotomic_model, cyclotomic_section):
        """Test (P.-P) = 3."""
        minus = negate_section(cyclotomic_section, cyclotomic_model)
        assert section_intersection(cyclotomic_section, minus, cyclotomic_model) == 3

    def test_self_intersection(self, cyclotomic_model, cyclotomic_section):
        """Test (P.P) = -chi."""
        assert section_intersection(
            cyclotomic_section, cyclotomic_section, cyclotomic_model
        ) == -1

    def test_zero_section_rejected(self, cyclotomic_model):
        """Test that (O.O) is not a zero intersection."""
        with pytest.raises(ValidationError):
            zero_intersection(ZERO_SECTION, cyclotomic_model)


class TestHeightPairing:
    """Test the Mordell-Weil height pairing."""

    def test_no_reducible_fibers(self, cyclotomic_model, cyclotomic_section):
        """Test <P,P> = 2 and the values at -P and 2P."""
        cfg = fiber_configuration(cyclotomic_model)
        p = cyclotomic_section
        minus = negate_section(p, cyclotomic_model)
        doubled = multiply_section(p, 2, cyclotomic_model)
        assert height_pairing(p, p, cyclotomic_model, cfg) == 2
        assert height_pairing(p, minus, cyclotomic_model, cfg) == -2
        assert height_pairing(doubled, doubled, cyclotomic_model, cfg) == 8
        assert narrow_membership(p, cfg)

    def test_zero_section_is_orthogonal(self, cyclotomic_model, cyclotomic_section):
        """Test <P,O> = 0."""
        cfg = fiber_configuration(cyclotomic_model)
        assert height_pairing(
            cyclotomic_section, ZERO_SECTION, cyclotomic_model, cfg
        ) == 0

    def test_type_iii_correction(self, e7_model):
        """Test the contribution 1/2 of a III fiber at infinity."""
        cfg = fiber_configuration(e7_model)
        p = Section.point(0, 1)
        (entry,) = cfg.reducible
        assert entry.fiber.symbol == "III"
        assert fiber_contribution(p, e7_model, entry) == Fraction(1, 2)
        assert zero_intersection(p, e7_model) == 0
        assert height_pairing(p, p, e7_model, cfg) == Fraction(3, 2)
        assert not narrow_membership(p, cfg)

    def test_i5_correction(self, i5_model, i5_section):
        """Test the contribution 6/5 of a section through the far component of I5."""
        cfg = fiber_configuration(i5_model)
        (entry,) = cfg.reducible
        assert entry.fiber.symbol == "I5"
        assert fiber_contribution(i5_section, i5_model, entry) == Fraction(6, 5)
        assert height_pairing(i5_section, i5_section, i5_model, cfg) == Fraction(4, 5)

    def test_pairing_is_symmetric(self, cyclotomic_model, cyclotomic_section):
        """Test <P,Q> = <Q,P>."""
        cfg = fiber_configuration(cyclotomic_model)
        q = multiply_section(cyclotomic_section, 2, cyclotomic_model)
        assert height_pairing(cyclotomic_section, q, cyclotomic_model, cfg) == (
            height_pairing(q, cyclotomic_section, cyclotomic_model, cfg)
        )
        assert height_pairing(cyclotomic_section, q, cyclotomic_model, cfg) == 4

    def test_configuration_of_another_model(self, cyclotomic_model, e7_model):
        """Test the model check."""
        cfg = fiber_configuration(e7_model)
        with pytest.raises(ValidationError):
            height_pairing(
                Section.point(t, t**3 + 1), ZERO_SECTION, cyclotomic_model, cfg
            )

    def test_torsion_sections_have_height_zero(self, torsion_model):
        """Test the multiples of a point of order six."""
        cfg = fiber_configuration(torsion_model)
        assert sorted(e.fiber.symbol for e in cfg.reducible) == ["I2", "I3", "I6"]
        p = Section.point(0, 0)
        assert multiply_section(p, 6, torsion_model) == ZERO_SECTION
        for k in range(1, 6):
            multiple = multiply_section(p, k, torsion_model)
            assert not multiple.is_zero
            assert height_pairing(multiple, multiple, torsion_model, cfg) == 0
            assert not narrow_membership(multiple, cfg)

    @pytest.mark.parametrize("multiple", [-1, 2])
    def test_pairing_from_intersections(
        self, cyclotomic_model, cyclotomic_section, multiple
    ):
        """Test <P,Q> = chi + (P.O) + (Q.O) - (P.Q) without reducible fibers."""
        cfg = fiber_configuration(cyclotomic_model)
        p = cyclotomic_section
        q = multiply_section(p, multiple, cyclotomic_model)
        expected = (
            cfg.chi
            + zero_intersection(p, cyclotomic_model)
            + zero_intersection(q, cyclotomic_model)
            - section_intersection(p, q, cyclotomic_model)
        )
        assert height_pairing(p, q, cyclotomic_model, cfg) == expected
