"""
analyze-pencil: base points and singular members of a cubic pencil
"""

from typing import Any

import click
from pydantic import BaseModel, Field

from resurf.cli.common import emit, handle_errors
from resurf.cli.weierstrass import FibrationReport, fibration_report
from resurf.core.exact_arith import format_rational
from resurf.core.parsing import parse_point, parse_ternary
from resurf.services.nagell import cubic_to_weierstrass
from resurf.services.plane_curves import (
    CubicPencil,
    Locus,
    PlaneCurve,
    ProjPoint,
    SingularMember,
    base_points,
    general_position,
    is_absolutely_irreducible,
    singular_members,
    smooth_member_exists,
)


# Report models
class BasePointReport(BaseModel):
    locus: list[str] | dict[str, Any] = Field(
        ..., description="Rational point, or a Galois orbit given by its eliminant"
    )
    multiplicity: int = Field(..., description="Local intersection multiplicity I_p")
    simple: bool = Field(..., description="Multiplicity one")
    orbit_size: int = Field(..., description="Number of conjugate points")


class GeneralPositionVerdict(BaseModel):
    points: list[list[str]] = Field(..., description="Simple rational base points")
    collinear: list[list[int]] = Field(..., description="Collinear triples")
    conconic: list[list[int]] = Field(..., description="Six points on a conic")
    is_general: bool


class SingularPointReport(BaseModel):
    locus: list[str] | dict[str, Any]
    tag: str = Field(..., description="node, cusp, triple_point, ...")


class SingularMemberReport(BaseModel):
    parameter: list[str] | None = Field(None, description="[s, t] of the member")
    orbit: str | None = Field(None, description="Minimal polynomial of t/s")
    witness: list[SingularPointReport] = Field(default_factory=list)
    repeated_component: bool = False
    classified: bool = Field(
        True, description="False when elimination failed on this member"
    )


class PencilReport(BaseModel):
    """Base locus and degenerate members of s*H1 + t*H2."""

    h1: str
    h2: str
    irreducible: list[bool] = Field(..., description="H1 and H2 absolutely irreducible")
    base_points: list[BasePointReport]
    total_multiplicity: int = Field(..., description="Always 9 by Bezout")
    all_simple: bool = Field(..., description="Nine distinct base points")
    general_position: GeneralPositionVerdict
    singular_members: list[SingularMemberReport]
    all_singular: bool = Field(..., description="Every member is singular")
    smooth_member_exists: bool
    surface: FibrationReport | None = Field(
        None, description="Weierstrass analysis from the chosen base point"
    )


def _locus(locus: Locus) -> list[str] | dict[str, Any]:
    return locus.to_json()


def _member(member: SingularMember) -> SingularMemberReport:
    return SingularMemberReport(
        parameter=(
            [format_rational(v) for v in member.parameter]
            if member.parameter is not None
            else None
        ),
        orbit=str(member.orbit) if member.orbit is not None else None,
        witness=[
            SingularPointReport(locus=_locus(w.locus), tag=w.tag.value)
            for w in member.witness
        ],
        repeated_component=member.repeated_component,
        classified=member.classified,
    )


def pencil_report(pencil: CubicPencil, base: ProjPoint | None = None) -> PencilReport:
    records = base_points(pencil)
    simple = [r.locus for r in records if r.simple and isinstance(r.locus, ProjPoint)]
    verdict = general_position(simple)
    singular = singular_members(pencil)
    surface = fibration_report(cubic_to_weierstrass(pencil, base)) if base else None
    return PencilReport(
        h1=str(pencil.h1),
        h2=str(pencil.h2),
        irreducible=[
            is_absolutely_irreducible(pencil.h1),
            is_absolutely_irreducible(pencil.h2),
        ],
        base_points=[
            BasePointReport(
                locus=_locus(r.locus),
                multiplicity=r.multiplicity,
                simple=r.simple,
                orbit_size=r.orbit_size,
            )
            for r in records
        ],
        total_multiplicity=sum(r.multiplicity * r.orbit_size for r in records),
        all_simple=all(r.simple for r in records),
        general_position=GeneralPositionVerdict(
            points=[p.to_json() for p in simple],
            collinear=[list(c) for c in verdict.collinear],
            conconic=[list(c) for c in verdict.conconic],
            is_general=verdict.is_general,
        ),
        singular_members=[_member(m) for m in singular.members],
        all_singular=singular.all_singular,
        smooth_member_exists=smooth_member_exists(pencil),
        surface=surface,
    )


@click.command("analyze-pencil")
@click.argument("h1")
@click.argument("h2")
@click.option(
    "--weierstrass",
    "point",
    metavar="POINT",
    help="Rational base point such as '[1:0:0]'; adds the Weierstrass analysis.",
)
@handle_errors
def analyze_pencil(h1: str, h2: str, point: str | None) -> None:
    """Analyze the pencil s*H1 + t*H2 of plane cubics in X, Y, Z."""
    pencil = CubicPencil(
        PlaneCurve(parse_ternary(h1, degree=3)), PlaneCurve(parse_ternary(h2, degree=3))
    )
    base = ProjPoint(parse_point(point)) if point else None
    emit(pencil_report(pencil, base), "Cubic pencil")
