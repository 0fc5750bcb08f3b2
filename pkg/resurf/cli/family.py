"""
family: instantiate one of the six normal forms and check its Mordell-Weil group
"""

from fractions import Fraction

import click
from pydantic import BaseModel, Field

from resurf.cli.common import NUMERIC_CONTEXT, RATIONAL, emit, handle_errors
from resurf.cli.weierstrass import FibrationReport, fibration_report
from resurf.core.exact_arith import format_rational
from resurf.services.families import FamilyId, check_family_member


class FamilyReport(BaseModel):
    family: str = Field(..., description="Family identifier, e.g. E7a")
    coefficients: list[str] = Field(..., description="p coefficients then q coefficients")
    expected: str = Field(..., description="Mordell-Weil lattice of a general member")
    matches: bool = Field(..., description="The member has the expected lattice")
    degenerate: bool
    degenerate_reason: str | None = None
    surface: FibrationReport | None = None


@click.command("family", context_settings=NUMERIC_CONTEXT)
@click.argument("family_id", metavar="ID")
@click.argument("coefficients", nargs=-1, type=RATIONAL)
@handle_errors
def family(family_id: str, coefficients: tuple[Fraction, ...]) -> None:
    """Check a member of family ID (E8a, E8b, E7a, E7b, E6a, E6b)."""
    check = check_family_member(FamilyId.parse(family_id), coefficients)
    surface = (
        fibration_report(check.model)
        if check.model is not None and check.mw_group is not None
        else None
    )
    report = FamilyReport(
        family=check.family.value,
        coefficients=[format_rational(c) for c in check.coefficients],
        expected=check.expected,
        matches=check.matches,
        degenerate=check.degenerate,
        degenerate_reason=check.degenerate_reason,
        surface=surface,
    )
    emit(report, f"Family {check.family.value}")
