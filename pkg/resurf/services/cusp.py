"""
Group law on the smooth locus of the cuspidal cubic y^2 z = x^3
"""

from collections.abc import Sequence
from fractions import Fraction

from resurf.core.exact_arith import HomogeneousPoly3, Scalar
from resurf.core.exceptions import ValidationError
from resurf.services.plane_curves import PlaneCurve, ProjPoint

CUSPIDAL_CUBIC = PlaneCurve(
    HomogeneousPoly3.from_dict(3, {(0, 2, 1): 1, (3, 0, 0): -1})
)
CUSP = ProjPoint.of(0, 0, 1)
FLEX = ProjPoint.of(0, 1, 0)


def cusp_parameter(p: ProjPoint) -> Fraction:
    """Additive parameter u = x/y; the flex [0:1:0] is the identity."""
    if not CUSPIDAL_CUBIC.contains(p):
        raise ValidationError(f"{p} is not on the cuspidal cubic y^2 z = x^3")
    if p == CUSP:
        raise ValidationError("the cusp is not a smooth point")
    x, y, _ = p.coords
    return x / y


def cusp_point(u: Scalar) -> ProjPoint:
    """Inverse of cusp_parameter: u != 0 maps to (v^2, v^3) with v = 1/u."""
    u = Fraction(u)
    if u == 0:
        return FLEX
    v = 1 / u
    return ProjPoint.of(v * v, v * v * v, 1)


def cusp_configuration(parameters: Sequence[Scalar]) -> list[ProjPoint]:
    return [cusp_point(u) for u in parameters]


def cusp_collinear(u1: Scalar, u2: Scalar, u3: Scalar) -> bool:
    return Fraction(u1) + Fraction(u2) + Fraction(u3) == 0


def _eight(parameters: Sequence[Scalar]) -> list[Fraction]:
    if len(parameters) != 8:
        raise ValidationError(f"expected 8 parameters, got {len(parameters)}")
    return [Fraction(u) for u in parameters]


def ninth_base_parameter(parameters: Sequence[Scalar]) -> Fraction:
    """A cubic meets the cuspidal cubic in nine points with parameter sum zero."""
    return -sum(_eight(parameters), Fraction(0))


def manin_q_parameter(parameters: Sequence[Scalar]) -> Fraction:
    """The point Q with 3Q equal to the sum of the eight points."""
    return sum(_eight(parameters), Fraction(0)) / 3
