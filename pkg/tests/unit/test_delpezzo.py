"""
Unit tests for (-1)-classes on blow-ups of the plane
"""

import pytest

from resurf.core.exceptions import ValidationError
from resurf.services.delpezzo import (
    DelPezzoSurface,
    PicClass,
    class_type_counts,
    cross_validate_counts,
    degree,
    lattice_count,
    line_coefficient_range,
    minus_one_classes,
)


class TestPicClass:
    """Test intersection numbers of divisor classes."""

    def test_exceptional_curve(self):
        """Test E_1 on the blow-up at two points."""
        e1 = PicClass(0, (-1, 0))
        assert e1.self_intersection == -1
        assert e1.canonical_degree == 1
        assert e1.is_minus_one_class

    def test_line_through_two_points(self):
        """Test L - E_1 - E_2."""
        line = PicClass(1, (1, 1))
        assert line.is_minus_one_class
        assert line.to_json() == {"a": 1, "b": [1, 1]}

    def test_line_class(self):
        """Test that L itself is not a (-1)-class."""
        assert not PicClass(1, (0, 0)).is_minus_one_class


class TestMinusOneClasses:
    """Test enumeration of (-1)-classes."""

    @pytest.mark.parametrize(
        "m,count",
        [(1, 1), (2, 3), (3, 6), (4, 10), (5, 16), (6, 27), (7, 56), (8, 240)],
    )
    def test_counts(self, m, count):
        """Test the classical numbers of exceptional curves."""
        assert len(minus_one_classes(m)) == count

    def test_two_points(self):
        """Test E_1, E_2 and the line through both points."""
        assert minus_one_classes(2) == [
            PicClass(0, (-1, 0)),
            PicClass(0, (0, -1)),
            PicClass(1, (1, 1)),
        ]

    def test_every_class_is_valid(self):
        """Test self-intersection and canonical degree of each class."""
        classes = minus_one_classes(7)
        assert all(c.is_minus_one_class for c in classes)
        assert len(set(classes)) == len(classes)

    def test_type_counts_for_eight_points(self):
        """Test the distribution of a over the 240 classes."""
        assert class_type_counts(8) == {0: 8, 1: 28, 2: 56, 3: 56, 4: 56, 5: 28, 6: 8}

    def test_type_counts_for_six_points(self):
        """Test lines, exceptional curves and conics on a cubic surface."""
        assert class_type_counts(6) == {0: 6, 1: 15, 2: 6}

    def test_line_coefficient_range(self):
        """Test that the search range covers every class."""
        assert set(range(0, 7)) <= set(line_coefficient_range(8))

    @pytest.mark.parametrize("m", [0, 9])
    def test_point_count_out_of_range(self, m):
        """Test 1 <= m <= 8."""
        with pytest.raises(ValidationError):
            minus_one_classes(m)


class TestSurface:
    """Test the del Pezzo surface wrapper."""

    def test_degree(self):
        """Test K^2 = 9 - m."""
        assert degree(6) == 3
        assert DelPezzoSurface(8).degree == 1
        assert len(DelPezzoSurface(3).minus_one_classes()) == 6

    def test_invalid_surface(self):
        """Test construction with too many points."""
        with pytest.raises(ValidationError):
            DelPezzoSurface(9)


class TestCrossValidation:
    """Test agreement with the minimal vectors of the matching lattice."""

    @pytest.mark.parametrize("m,count", [(6, 27), (7, 56), (8, 240)])
    def test_lattice_counts(self, m, count):
        """Test E6v class, E7v and E8 minimal vectors."""
        assert lattice_count(m) == count
        assert cross_validate_counts(m)

    def test_no_lattice_for_small_m(self):
        """Test rejection of m without a lattice counterpart."""
        with pytest.raises(ValidationError):
            lattice_count(5)
