"""
delpezzo: (-1)-classes on the plane blown up at m general points
"""

import click
from pydantic import BaseModel, Field

from resurf.cli.common import emit, handle_errors
from resurf.services.delpezzo import (
    LATTICE_SIDE,
    DelPezzoSurface,
    class_type_counts,
    lattice_count,
)


class ClassReport(BaseModel):
    a: int = Field(..., description="Coefficient of the line class L")
    b: list[int] = Field(..., description="Multiplicities at the blown-up points")


class DelPezzoReport(BaseModel):
    """(-1)-classes C = aL - sum b_i E_i with C^2 = -1 and -K.C = 1."""

    m: int = Field(..., description="Number of blown-up points")
    degree: int = Field(..., description="K^2 = 9 - m")
    count: int = Field(..., description="Number of (-1)-classes")
    by_line_coefficient: dict[str, int] = Field(
        ..., description="Number of classes for each value of a"
    )
    lattice_count: int | None = Field(
        None, description="Matching short vector count (m = 6, 7, 8)"
    )
    classes: list[ClassReport] | None = Field(None, description="With --list")


@click.command("delpezzo")
@click.option("--m", "m", type=int, required=True, help="Number of points, 1 to 8.")
@click.option("--list", "list_classes", is_flag=True, help="Include every class.")
@handle_errors
def delpezzo(m: int, list_classes: bool) -> None:
    """Count the (-1)-curves of the Del Pezzo surface of degree 9 - m."""
    surface = DelPezzoSurface(m)
    classes = surface.minus_one_classes()
    report = DelPezzoReport(
        m=m,
        degree=surface.degree,
        count=len(classes),
        by_line_coefficient={str(a): n for a, n in class_type_counts(m).items()},
        lattice_count=lattice_count(m) if m in LATTICE_SIDE else None,
        classes=(
            [ClassReport(a=c.a, b=list(c.b)) for c in classes] if list_classes else None
        ),
    )
    emit(report, f"Del Pezzo surface of degree {surface.degree}")
