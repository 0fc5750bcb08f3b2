"""
analyze-weierstrass: fibers, Mordell-Weil group and heights of a Weierstrass model
"""

import click
import structlog
from pydantic import BaseModel, Field

from resurf.cli.common import emit, handle_errors
from resurf.core.exact_arith import format_rational
from resurf.core.parsing import parse_univariate
from resurf.services.fibration import (
    FiberConfiguration,
    WeierstrassModel,
    curve_invariants,
    fiber_configuration,
    identify_mw,
    lattice_key,
    shioda_tate_rank,
    trivial_lattice,
)
from resurf.services.heights import (
    Section,
    height_pairing,
    narrow_membership,
    require_on_curve,
    zero_intersection,
)

logger = structlog.get_logger()


# Report models
class ModelReport(BaseModel):
    """Weierstrass model in text and coefficient form."""

    equation: str = Field(..., description="Long Weierstrass equation")
    a1: str = Field(..., description="Coefficient a1(t)")
    a2: str = Field(..., description="Coefficient a2(t)")
    a3: str = Field(..., description="Coefficient a3(t)")
    a4: str = Field(..., description="Coefficient a4(t)")
    a6: str = Field(..., description="Coefficient a6(t)")


class InvariantsReport(BaseModel):
    c4: str = Field(..., description="Invariant c4(t)")
    c6: str = Field(..., description="Invariant c6(t)")
    delta: str = Field(..., description="Discriminant")


class FiberReport(BaseModel):
    place: str = Field(..., description="Rational root, defining polynomial or 'inf'")
    type: str = Field(..., description="Kodaira symbol")
    e: int = Field(..., description="Euler number")
    m: int = Field(..., description="Number of components")
    T: str | None = Field(None, description="Root lattice of the non-identity components")
    count: int = Field(..., description="Number of places in the cluster")
    signature: list[int | None] = Field(..., description="v(c4), v(c6), v(delta)")


class MWGroupReport(BaseModel):
    lattice: str = Field(..., description="Mordell-Weil lattice modulo torsion")
    torsion: str = Field(..., description="Torsion subgroup")
    rank: int = Field(..., description="Mordell-Weil rank")
    lattice_det: str = Field(..., description="Determinant of the lattice part")


class SectionReport(BaseModel):
    x: str = Field(..., description="x(t)")
    y: str = Field(..., description="y(t)")
    zero_intersection: int = Field(..., description="Intersection number with O")
    height: str = Field(..., description="Height <P, P>")
    narrow: bool = Field(..., description="Meets the identity component of every fiber")


class FibrationReport(BaseModel):
    """Full analysis of a rational elliptic surface."""

    model: ModelReport
    invariants: InvariantsReport
    fibers: list[FiberReport]
    euler_total: int = Field(..., description="Sum of Euler numbers over all places")
    rank: int = Field(..., description="Shioda-Tate rank")
    trivial_lattice: str = Field(..., description="Canonical trivial lattice symbol")
    mw_group: MWGroupReport = Field(..., description="Mordell-Weil group")
    sections: list[SectionReport] = Field(default_factory=list)
    pairing: list[list[str]] = Field(
        default_factory=list, description="Height pairing matrix of the given sections"
    )


def model_report(m: WeierstrassModel) -> ModelReport:
    a1, a2, a3, a4, a6 = (str(c) for c in m.coefficients)
    return ModelReport(equation=str(m), a1=a1, a2=a2, a3=a3, a4=a4, a6=a6)


def _section_reports(
    sections: list[Section], cfg: FiberConfiguration
) -> tuple[list[SectionReport], list[list[str]]]:
    m = cfg.model
    reports = [
        SectionReport(
            x=str(p.coords()[0]),
            y=str(p.coords()[1]),
            zero_intersection=zero_intersection(p, m),
            height=format_rational(height_pairing(p, p, m, cfg)),
            narrow=narrow_membership(p, cfg),
        )
        for p in sections
    ]
    matrix = [
        [format_rational(height_pairing(p, q, m, cfg)) for q in sections]
        for p in sections
    ]
    return reports, matrix


def fibration_report(
    m: WeierstrassModel, sections: list[Section] | None = None
) -> FibrationReport:
    """Classify the fibers of m and identify its Mordell-Weil group."""
    c4, c6, delta = curve_invariants(m)
    cfg = fiber_configuration(m)
    rank = shioda_tate_rank(cfg)
    lattices = trivial_lattice(cfg)
    mw = identify_mw(lattices)
    fibers = [
        FiberReport(
            place=entry.place.label,
            type=entry.fiber.symbol,
            e=entry.fiber.euler,
            m=entry.fiber.components,
            T=entry.fiber.t_lattice.symbol if entry.fiber.t_lattice else None,
            count=entry.count,
            signature=list(entry.signature),
        )
        for entry in cfg.fibers
    ]
    section_reports, matrix = _section_reports(sections or [], cfg)
    logger.info("Surface analyzed", rank=rank, mw=str(mw))
    return FibrationReport(
        model=model_report(m),
        invariants=InvariantsReport(c4=str(c4), c6=str(c6), delta=str(delta)),
        fibers=fibers,
        euler_total=cfg.euler_total,
        rank=rank,
        trivial_lattice=lattice_key(lattices),
        mw_group=MWGroupReport(
            lattice=mw.lattice_part,
            torsion=str(mw.torsion_part),
            rank=mw.rank,
            lattice_det=format_rational(mw.lattice_det),
        ),
        sections=section_reports,
        pairing=matrix,
    )


@click.command("analyze-weierstrass")
@click.argument("equation")
@click.option(
    "--section",
    "sections",
    nargs=2,
    multiple=True,
    metavar="X Y",
    help="Polynomial section (x(t), y(t)); repeat for several sections.",
)
@handle_errors
def analyze_weierstrass(equation: str, sections: tuple[tuple[str, str], ...]) -> None:
    """Analyze the surface y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q(t)."""
    m = WeierstrassModel.parse(equation)
    points = [Section.point(parse_univariate(x), parse_univariate(y)) for x, y in sections]
    for p in points:
        require_on_curve(p, m)
    emit(fibration_report(m, points), "Weierstrass model")
