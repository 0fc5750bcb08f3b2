"""
cusp: ninth base point and Q parameter for eight points on y^2 z = x^3
"""

from fractions import Fraction

import click
from pydantic import BaseModel, Field

from resurf.cli.common import NUMERIC_CONTEXT, RATIONAL, emit, handle_errors
from resurf.core.exact_arith import format_rational
from resurf.services.cusp import (
    cusp_point,
    manin_q_parameter,
    ninth_base_parameter,
)


class CuspReport(BaseModel):
    query: str = Field(..., description="ninth or q")
    parameters: list[str] = Field(..., description="Additive parameters u_1..u_8")
    result: str = Field(..., description="Parameter of the requested point")
    point: list[str] = Field(..., description="The requested point [x, y, z]")


@click.command("cusp", context_settings=NUMERIC_CONTEXT)
@click.argument("query", type=click.Choice(["ninth", "q"]))
@click.argument("parameters", nargs=-1, type=RATIONAL)
@handle_errors
def cusp(query: str, parameters: tuple[Fraction, ...]) -> None:
    """Point determined by eight points of the cuspidal cubic, given by parameters."""
    if query == "ninth":
        result = ninth_base_parameter(parameters)
    else:
        result = manin_q_parameter(parameters)
    report = CuspReport(
        query=query,
        parameters=[format_rational(u) for u in parameters],
        result=format_rational(result),
        point=cusp_point(result).to_json(),
    )
    emit(report, "Cuspidal cubic")
