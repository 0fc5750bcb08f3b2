"""
(-1)-classes on the blow-up of the plane at m <= 8 general points
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import structlog
from sympy.utilities.iterables import multiset_permutations

from resurf.core.exceptions import ValidationError
from resurf.services.lattices import (
    Basis,
    LatticeVector,
    RootLatticeId,
    lattice_gram,
    minimal_vectors,
)

logger = structlog.get_logger()

MAX_POINTS = 8


@dataclass(frozen=True, order=True)
class PicClass:
    """The class a*L - sum b_i*E_i; E_i itself has a = 0, b_i = -1."""

    a: int
    b: tuple[int, ...]

    @property
    def self_intersection(self) -> int:
        return self.a * self.a - sum(v * v for v in self.b)

    @property
    def canonical_degree(self) -> int:
        """-K.C = 3a - sum b_i."""
        return 3 * self.a - sum(self.b)

    @property
    def is_minus_one_class(self) -> bool:
        return self.self_intersection == -1 and self.canonical_degree == 1

    def to_json(self) -> dict[str, object]:
        return {"a": self.a, "b": list(self.b)}


@dataclass(frozen=True)
class DelPezzoSurface:
    m: int

    def __post_init__(self) -> None:
        _check_points(self.m)

    @property
    def degree(self) -> int:
        return 9 - self.m

    def minus_one_classes(self) -> list[PicClass]:
        return minus_one_classes(self.m)


def _check_points(m: int) -> None:
    if not 1 <= m <= MAX_POINTS:
        raise ValidationError(f"m must be between 1 and {MAX_POINTS}, got {m}")


def degree(m: int) -> int:
    _check_points(m)
    return 9 - m


def line_coefficient_range(m: int) -> range:
    """Integers a with (9 - m) a^2 - 6a + (1 - m) <= 0."""
    _check_points(m)
    k = 9 - m
    reach = math.isqrt(36 + 4 * k * (m - 1)) + 1
    low = math.floor(Fraction(6 - reach, 2 * k))
    high = math.ceil(Fraction(6 + reach, 2 * k))
    admissible = [a for a in range(low, high + 1) if k * a * a - 6 * a + (1 - m) <= 0]
    return range(admissible[0], admissible[-1] + 1)


def _sorted_solutions(count: int, total: int, squares: int, ceiling: int) -> list[list[int]]:
    """Non-increasing integer vectors of given length, sum and sum of squares."""
    if count == 0:
        return [[]] if total == 0 and squares == 0 else []
    if total * total > count * squares:
        return []
    out: list[list[int]] = []
    bound = min(ceiling, math.isqrt(squares))
    for value in range(bound, -math.isqrt(squares) - 1, -1):
        # the largest remaining entry is at least the average
        if value * count < total:
            break
        for rest in _sorted_solutions(count - 1, total - value, squares - value * value, value):
            out.append([value, *rest])
    return out


def minus_one_classes(m: int) -> list[PicClass]:
    _check_points(m)
    classes: list[PicClass] = []
    for a in line_coefficient_range(m):
        for profile in _sorted_solutions(m, 3 * a - 1, a * a + 1, a * a + 1):
            for b in multiset_permutations(profile):
                classes.append(PicClass(a, tuple(b)))
    classes.sort()
    logger.debug("Enumerated (-1)-classes", m=m, count=len(classes))
    return classes


def class_type_counts(m: int) -> dict[int, int]:
    counts = Counter(c.a for c in minus_one_classes(m))
    return dict(sorted(counts.items()))


# minuscule class representative of E6v / E6 (end of the chain)
_E6_CLASS = LatticeVector.of((1, 0, 0, 0, 0, 0), Basis.BETA)

LATTICE_SIDE: dict[int, tuple[str, Fraction]] = {
    8: ("E8", Fraction(2)),
    7: ("E7v", Fraction(3, 2)),
    6: ("E6v", Fraction(4, 3)),
}


def lattice_count(m: int) -> int:
    """Short vectors matching the (-1)-classes: E8 roots, E7v and one E6v class."""
    if m not in LATTICE_SIDE:
        raise ValidationError(f"no lattice count for m = {m}; expected 6, 7 or 8")
    symbol, norm = LATTICE_SIDE[m]
    coset = _E6_CLASS if m == 6 else None
    return len(minimal_vectors(lattice_gram(RootLatticeId.parse(symbol)), norm, coset))


def cross_validate_counts(m: int) -> bool:
    classes = len(minus_one_classes(m))
    vectors = lattice_count(m)
    logger.debug("Cross validation", m=m, classes=classes, vectors=vectors)
    return classes == vectors
