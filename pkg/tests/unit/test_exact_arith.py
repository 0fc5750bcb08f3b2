"""
Unit tests for exact arithmetic
"""

from fractions import Fraction

import pytest
from sympy import Matrix, symbols

from resurf.core.exact_arith import (
    ONE,
    T_POLY,
    PlaceCluster,
    RatFunc,
    UniPoly,
    fraction_free_det,
    gcd_split,
    poly_resultant,
    poly_valuation,
    rational_roots,
    squarefree_decomposition,
    squarefree_part,
    sylvester_resultant,
    uniform_clusters,
)
from resurf.core.exceptions import ArithmeticDomainError

t = T_POLY


def linear(root: int | Fraction) -> UniPoly:
    return t - root


class TestUniPoly:
    """Test univariate polynomial arithmetic."""

    def test_trailing_zeros_are_dropped(self):
        """Test normalization of the coefficient tuple."""
        p = UniPoly((1, 2, 0, 0))
        assert p.coeffs == (Fraction(1), Fraction(2))
        assert p.degree == 1

    def test_zero_polynomial(self):
        """Test the zero polynomial conventions."""
        zero = UniPoly()
        assert zero.is_zero
        assert zero.degree == -1
        assert str(zero) == "0"

    def test_ring_operations(self):
        """Test addition, multiplication and exact division."""
        p = (t + 1) * (t - 2)
        assert p == UniPoly((-2, -1, 1))
        assert p.exquo(t + 1) == t - 2
        assert (p - p).is_zero
        quo, rem = divmod(t**3 + 1, t - 1)
        assert quo * (t - 1) + rem == t**3 + 1
        assert rem == UniPoly.constant(2)

    def test_exquo_rejects_remainder(self):
        """Test that inexact division raises."""
        with pytest.raises(ArithmeticDomainError):
            (t**2 + 1).exquo(t - 1)

    def test_gcd_is_monic(self):
        """Test gcd normalization."""
        g = (2 * t - 2).gcd(3 * t**2 - 3)
        assert g == t - 1

    def test_inverted(self):
        """Test s^w f(1/s)."""
        assert (t**3).inverted(4) == t
        assert UniPoly.constant(5).inverted(6) == UniPoly.monomial(5, 6)
        with pytest.raises(ArithmeticDomainError):
            (t**5).inverted(4)

    def test_evaluation_and_rendering(self):
        """Test evaluation and the text form."""
        p = UniPoly((Fraction(1, 2), 0, -3))
        assert p(2) == Fraction(-23, 2)
        assert str(p) == "-3*t^2 + 1/2"


class TestRatFunc:
    """Test rational functions in t."""

    def test_reduction(self):
        """Test cancellation and the monic denominator."""
        f = RatFunc((t - 1) * (t + 2), 2 * (t - 1))
        assert f.num == UniPoly((1, Fraction(1, 2)))
        assert f.den == ONE
        assert f.is_polynomial

    def test_zero_denominator(self):
        """Test that a zero denominator is rejected."""
        with pytest.raises(ArithmeticDomainError):
            RatFunc(ONE, UniPoly())

    def test_order_at(self):
        """Test valuations of numerator minus denominator."""
        f = RatFunc(t**3, (t - 1) ** 2)
        assert f.order_at(t) == 3
        assert f.order_at(t - 1) == -2
        assert f.order_at(t + 1) == 0
        assert RatFunc(UniPoly()).order_at(t) is None

    def test_arithmetic(self):
        """Test field operations."""
        f = RatFunc(ONE, t)
        g = RatFunc(ONE, t + 1)
        assert f - g == RatFunc(ONE, t * (t + 1))
        assert (f / g) * g == f

    def test_inverted(self):
        """Test the chart change at infinity."""
        assert RatFunc(t).inverted(2) == RatFunc(t)
        assert RatFunc(t**3 + 1).inverted(3) == RatFunc(1 + t**3)


class TestPlaces:
    """Test place clusters and valuations."""

    def test_finite_place_is_monic(self):
        """Test normalization of the defining polynomial."""
        place = PlaceCluster.finite(2 * t + 1)
        assert place.defining_poly == t + Fraction(1, 2)
        assert place.label == "-1/2"
        assert place.point_count == 1

    def test_non_squarefree_place(self):
        """Test rejection of repeated factors."""
        with pytest.raises(ArithmeticDomainError):
            PlaceCluster.finite(t**2)

    def test_infinity(self):
        """Test the place at infinity."""
        place = PlaceCluster.infinity()
        assert place.is_infinite
        assert place.label == "inf"
        assert place.sort_key() > PlaceCluster.finite(t).sort_key()

    def test_poly_valuation(self):
        """Test multiplicity of a factor."""
        assert poly_valuation(t**4 * (t + 1), t) == 4
        assert poly_valuation((t**2 + 1) ** 2 * t, t**2 + 1) == 2
        with pytest.raises(ArithmeticDomainError):
            poly_valuation(UniPoly(), t)


class TestFactorRefinement:
    """Test squarefree decomposition and cluster splitting."""

    def test_squarefree_decomposition(self):
        """Test Yun's algorithm on a product with known multiplicities."""
        f = 3 * t * (t - 1) ** 2 * (t + 2) ** 3
        assert squarefree_decomposition(f) == [(t, 1), (t - 1, 2), (t + 2, 3)]
        assert squarefree_part(f) == t * (t - 1) * (t + 2)

    def test_gcd_split(self):
        """Test splitting g along the zeros of h."""
        g = t * (t - 1) * (t + 1)
        vanish, rest = gcd_split(g, (t - 1) ** 2)
        assert vanish == t - 1
        assert rest == t * (t + 1)

    def test_uniform_clusters(self):
        """Test that every piece has one valuation vector."""
        g = (t**2 + 1) * t * (t - 1)
        h = t**3 * (t - 1)
        clusters = dict(
            (str(piece), vals) for piece, vals in uniform_clusters(g, [h, UniPoly()])
        )
        assert clusters == {
            "t": (3, None),
            "t - 1": (1, None),
            "t^2 + 1": (0, None),
        }

    def test_rational_roots(self):
        """Test exact rational root isolation with multiplicity."""
        f = (2 * t - 3) ** 2 * (t + 4) * (t**2 - 2)
        assert rational_roots(f) == [Fraction(-4), Fraction(3, 2), Fraction(3, 2)]
        assert rational_roots(t**2 + 1) == []


class TestResultants:
    """Test resultants and fraction-free determinants."""

    def test_fraction_free_det(self):
        """Test the determinant of a polynomial matrix."""
        x = symbols("x")
        assert fraction_free_det(Matrix([[x, 1], [1, x]])).expand() == x**2 - 1

    def test_common_root(self):
        """Test vanishing of the resultant on a shared root."""
        x, y = symbols("x y")
        assert sylvester_resultant(x**2 - y, x - 1, x) == 1 - y

    def test_poly_resultant(self):
        """Test the univariate-coefficient form."""
        # (x - t) and (x - 1) share a root iff t = 1
        res = poly_resultant([-t, ONE], [UniPoly.constant(-1), ONE])
        assert res.degree == 1
        assert res(1) == 0

    def test_nothing_to_eliminate(self):
        """Test that constants have no resultant."""
        x = symbols("x")
        with pytest.raises(ArithmeticDomainError):
            sylvester_resultant(x**0 * 2, x**0 * 3, x)
