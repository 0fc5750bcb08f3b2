"""
The six normal forms of rational elliptic surfaces with Mordell-Weil group E8, E7v, E6v
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import structlog

from resurf.core.exact_arith import Scalar, UniPoly
from resurf.core.exceptions import ResurfException, ValidationError
from resurf.services.fibration import (
    FiberConfiguration,
    MWGroupDescriptor,
    WeierstrassModel,
    fiber_configuration,
    identify_mw,
    shioda_tate_rank,
    trivial_lattice,
)

logger = structlog.get_logger()


class FamilyId(str, Enum):
    E8A = "E8a"
    E8B = "E8b"
    E7A = "E7a"
    E7B = "E7b"
    E6A = "E6a"
    E6B = "E6b"

    @classmethod
    def parse(cls, text: str) -> FamilyId:
        for member in cls:
            if member.value.lower() == text.strip().lower():
                return member
        allowed = ", ".join(member.value for member in cls)
        raise ValidationError(f"unknown family {text!r} (allowed: {allowed})")


# (number of p coefficients, number of q coefficients)
FAMILY_SHAPES: dict[FamilyId, tuple[int, int]] = {
    FamilyId.E8A: (4, 4),
    FamilyId.E8B: (3, 5),
    FamilyId.E7A: (2, 5),
    FamilyId.E7B: (3, 4),
    FamilyId.E6A: (3, 3),
    FamilyId.E6B: (3, 4),
}

FAMILY_LABELS: dict[FamilyId, str] = {
    FamilyId.E8A: "E8",
    FamilyId.E8B: "E8",
    FamilyId.E7A: "E7v",
    FamilyId.E7B: "E7v",
    FamilyId.E6A: "E6v",
    FamilyId.E6B: "E6v",
}


def family_arity(family: FamilyId) -> int:
    return sum(FAMILY_SHAPES[family])


def expected_label(family: FamilyId) -> str:
    return FAMILY_LABELS[family]


def _check_arity(family: FamilyId, count: int) -> None:
    arity = family_arity(family)
    if count != arity:
        raise ValidationError(
            f"family {family.value} takes {arity} coefficients, got {count}",
            details={"family": family.value, "arity": arity},
        )


def instantiate_family(
    family: FamilyId | str, coefficients: Sequence[Scalar]
) -> WeierstrassModel:
    family = FamilyId.parse(family) if isinstance(family, str) else family
    _check_arity(family, len(coefficients))
    n_p, _ = FAMILY_SHAPES[family]
    values = [Fraction(c) for c in coefficients]
    p = UniPoly(tuple(values[:n_p]))
    q = UniPoly(tuple(values[n_p:]))
    t = UniPoly.monomial(1, 1)
    zero = UniPoly()
    if family is FamilyId.E8A:
        return WeierstrassModel(zero, zero, zero, p, q + t**5)
    if family is FamilyId.E8B:
        return WeierstrassModel(zero, t**2, zero, p, q + t**5)
    if family is FamilyId.E7A:
        return WeierstrassModel(zero, zero, zero, p + t**3, q)
    if family is FamilyId.E7B:
        return WeierstrassModel(t, zero, zero, p, q - t**4)
    if family is FamilyId.E6A:
        return WeierstrassModel(zero, zero, t**2, p, q)
    return WeierstrassModel(t, zero, zero, p, q)


@dataclass(frozen=True)
class FamilyCheck:
    """Outcome of analysing one member of a family."""

    family: FamilyId
    coefficients: tuple[Fraction, ...]
    expected: str
    model: WeierstrassModel | None = None
    configuration: FiberConfiguration | None = None
    mw_group: MWGroupDescriptor | None = None
    rank: int | None = None
    degenerate_reason: str | None = None

    @property
    def degenerate(self) -> bool:
        return self.degenerate_reason is not None

    @property
    def matches(self) -> bool:
        return self.mw_group is not None and self.mw_group.lattice_part == self.expected


def check_family_member(
    family: FamilyId | str, coefficients: Sequence[Scalar]
) -> FamilyCheck:
    """Instantiate and classify; failures of the surface itself count as degenerations."""
    family = FamilyId.parse(family) if isinstance(family, str) else family
    values = tuple(Fraction(c) for c in coefficients)
    expected = expected_label(family)
    _check_arity(family, len(values))
    model: WeierstrassModel | None = None
    try:
        model = instantiate_family(family, values)
        cfg = fiber_configuration(model)
        rank = shioda_tate_rank(cfg)
        mw = identify_mw(trivial_lattice(cfg))
    except ResurfException as e:
        logger.warning("Degenerate family member", family=family.value, reason=e.message)
        return FamilyCheck(family, values, expected, model, degenerate_reason=e.message)
    check = FamilyCheck(family, values, expected, model, cfg, mw, rank)
    if not check.matches:
        fibers = ", ".join(f"{e.fiber}@{e.place.label}" for e in cfg.reducible)
        reason = f"special member: MW {mw}, reducible fibers {fibers or 'none'}"
        logger.warning("Degenerate family member", family=family.value, reason=reason)
        return FamilyCheck(family, values, expected, model, cfg, mw, rank, reason)
    return check
