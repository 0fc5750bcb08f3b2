"""
Cubic pencil to Weierstrass model over Q(t)
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

import structlog
from sympy import Expr, Poly, Rational, diff, expand, symbols

from resurf.core.exact_arith import (
    T,
    X,
    Y,
    Z,
    UniPoly,
    squarefree_part,
    to_rational,
    uniform_clusters,
)
from resurf.core.exceptions import (
    EliminationError,
    InconsistentSurfaceError,
    InvalidPencilError,
    NotEllipticError,
)
from resurf.services.fibration import WeierstrassModel
from resurf.services.plane_curves import LAMBDA, CubicPencil, ProjPoint

logger = structlog.get_logger()

_U, _V, _W = symbols("U V W")


def _cross(a: Sequence[Expr], b: Sequence[Expr]) -> list[Expr]:
    return [
        expand(a[1] * b[2] - a[2] * b[1]),
        expand(a[2] * b[0] - a[0] * b[2]),
        expand(a[0] * b[1] - a[1] * b[0]),
    ]


def _coefficient(poly: Poly, i: int, j: int, k: int) -> UniPoly:
    return UniPoly.from_expr(poly.coeff_monomial(_U**i * _V**j * _W**k))


def _quartic(
    family: Expr, base: Sequence[Rational], along: Sequence[Expr], across: Sequence[Expr]
) -> list[UniPoly] | None:
    """Coefficients e0..e4 of s^2 = D(m) obtained by projecting from the base point.

    Coordinates: P = U*across + V*along + W*base, with `along` spanning the
    tangent line at the base point, so the W^2 coefficient is alpha*U.
    """
    image = [_U * across[i] + _V * along[i] + _W * base[i] for i in range(3)]
    substituted = expand(
        family.subs({X: image[0], Y: image[1], Z: image[2]}, simultaneous=True)
    )
    poly = Poly(substituted, _U, _V, _W)
    if not _coefficient(poly, 0, 0, 3).is_zero or not _coefficient(poly, 0, 1, 2).is_zero:
        raise EliminationError("coordinate change does not fix the tangent line")
    alpha = _coefficient(poly, 1, 0, 2)
    if alpha.is_zero:
        return None
    c0, c1, c2 = (
        _coefficient(poly, 2, 0, 1),
        _coefficient(poly, 1, 1, 1),
        _coefficient(poly, 0, 2, 1),
    )
    d0, d1, d2, d3 = (
        _coefficient(poly, 3, 0, 0),
        _coefficient(poly, 2, 1, 0),
        _coefficient(poly, 1, 2, 0),
        _coefficient(poly, 0, 3, 0),
    )
    # discriminant in w of alpha*w^2 + f2(1, m)*w + f3(1, m)
    return [
        c0 * c0 - 4 * alpha * d0,
        2 * c0 * c1 - 4 * alpha * d1,
        c1 * c1 + 2 * c0 * c2 - 4 * alpha * d2,
        2 * c1 * c2 - 4 * alpha * d3,
        c2 * c2,
    ]


def quartic_jacobian(coeffs: Sequence[UniPoly]) -> tuple[UniPoly, UniPoly]:
    """(A, B) with y^2 = x^3 + A x + B the Jacobian of s^2 = sum coeffs[i] m^i."""
    e, d, c, b, a = coeffs
    invariant_i = 12 * a * e - 3 * b * d + c * c
    invariant_j = (
        72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * e * b * b - 2 * c**3
    )
    return -27 * invariant_i, -27 * invariant_j


def minimalize_short(a4: UniPoly, a6: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Divide out phi^4, phi^6 at every finite place where both allow it."""
    if a4.is_zero and a6.is_zero:
        raise NotEllipticError("not an elliptic fibration: discriminant is zero")
    common = a6 if a4.is_zero else a4 if a6.is_zero else a4.gcd(a6)
    if common.is_constant:
        return a4, a6
    for piece, (v4, v6) in uniform_clusters(squarefree_part(common), [a4, a6]):
        steps = min(
            v // weight for v, weight in ((v4, 4), (v6, 6)) if v is not None
        )
        if steps:
            if not a4.is_zero:
                a4 = a4.exquo(piece ** (4 * steps))
            if not a6.is_zero:
                a6 = a6.exquo(piece ** (6 * steps))
            logger.debug("Model reduced", place=str(piece), steps=steps)
    return a4, a6


def _primitive_scale(a4: UniPoly, a6: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Remove constant factors u^4, u^6 with u a power of two or three."""
    for prime in (2, 3):
        while all(c.numerator % prime**4 == 0 for c in a4.coeffs) and all(
            c.numerator % prime**6 == 0 for c in a6.coeffs
        ):
            a4, a6 = a4 * Fraction(1, prime**4), a6 * Fraction(1, prime**6)
    return a4, a6


def cubic_to_weierstrass(pencil: CubicPencil, base: ProjPoint) -> WeierstrassModel:
    """Short Weierstrass model of the generic member h1 + t*h2 over Q(t)."""
    h1, h2 = pencil.h1.poly, pencil.h2.poly
    if h1(base.coords) != 0 or h2(base.coords) != 0:
        raise InvalidPencilError(f"{base} is not a base point of the pencil")
    family = expand(pencil.generic_member_expr().subs(LAMBDA, T))
    point = [to_rational(c) for c in base.coords]
    at_base = {X: point[0], Y: point[1], Z: point[2]}
    gradient = [expand(diff(family, v).subs(at_base)) for v in (X, Y, Z)]
    if all(g == 0 for g in gradient):
        raise InvalidPencilError(
            f"{base} is a singular point of every member", error_code="singular_base"
        )
    along = _cross(gradient, point)
    for index in range(3):
        if gradient[index] == 0:
            continue
        across = [Rational(int(i == index)) for i in range(3)]
        coeffs = _quartic(family, point, along, across)
        if coeffs is None:
            continue
        a4, a6 = quartic_jacobian(coeffs)
        if (4 * a4**3 + 27 * a6 * a6).is_zero:
            logger.debug("Degenerate projection", across=index)
            continue
        a4, a6 = _primitive_scale(*minimalize_short(a4, a6))
        if a4.degree > 4 or a6.degree > 6:
            raise InconsistentSurfaceError(
                "pencil does not define a rational elliptic surface",
                details={"deg_a4": a4.degree, "deg_a6": a6.degree},
            )
        model = WeierstrassModel.short(a4, a6)
        logger.debug("Weierstrass model from pencil", base=str(base), model=str(model))
        return model
    raise NotEllipticError(
        "not an elliptic fibration: generic member of the pencil is singular"
    )
