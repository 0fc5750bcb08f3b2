"""
lattice: Gram data and short vectors of root lattices and their duals
"""

from fractions import Fraction

import click
from pydantic import BaseModel, Field

from resurf.cli.common import RATIONAL, emit, handle_errors
from resurf.core.exact_arith import format_rational
from resurf.services.lattices import (
    RootLatticeId,
    determinant,
    discriminant_group,
    dual_gram,
    lattice_gram,
    minimal_vectors,
)


class ShortVectorsReport(BaseModel):
    norm: str = Field(..., description="Requested norm")
    count: int = Field(..., description="Number of vectors of that norm")
    vectors: list[list[str]] | None = Field(
        None, description="Coordinates in the Gram matrix basis (with --list)"
    )


class LatticeReport(BaseModel):
    """Gram matrix and invariants of a lattice."""

    id: str = Field(..., description="Lattice identifier, duals end in 'v'")
    basis: str = Field(..., description="alpha for roots, beta for the dual basis")
    rank: int
    gram: list[list[str]] = Field(..., description="Row-major Gram matrix")
    dual_gram: list[list[str]] = Field(
        ..., description="Gram matrix of the dual lattice in the dual basis"
    )
    determinant: str
    integral: bool
    discriminant_group: str | None = Field(
        None, description="Invariant factors of L^v/L (integral lattices only)"
    )
    short_vectors: ShortVectorsReport | None = None


@click.command("lattice")
@click.argument("lattice_id", metavar="ID")
@click.option(
    "--minimal-norm", "norm", type=RATIONAL, help="Enumerate vectors of this norm."
)
@click.option(
    "--list", "list_vectors", is_flag=True, help="Include the vectors themselves."
)
@handle_errors
def lattice(lattice_id: str, norm: Fraction | None, list_vectors: bool) -> None:
    """Describe lattice ID such as E8, D4, A2 or E7v."""
    lattice_ref = RootLatticeId.parse(lattice_id)
    gram = lattice_gram(lattice_ref)
    short: ShortVectorsReport | None = None
    if norm is not None:
        vectors = minimal_vectors(gram, norm)
        short = ShortVectorsReport(
            norm=format_rational(norm),
            count=len(vectors),
            vectors=[v.to_json() for v in vectors] if list_vectors else None,
        )
    report = LatticeReport(
        id=lattice_ref.symbol,
        basis=gram.basis.value,
        rank=gram.rank,
        gram=gram.to_json(),
        dual_gram=dual_gram(gram).to_json(),
        determinant=format_rational(determinant(gram)),
        integral=gram.is_integral,
        discriminant_group=str(discriminant_group(gram)) if gram.is_integral else None,
        short_vectors=short,
    )
    emit(report, f"Lattice {lattice_ref.symbol}")
