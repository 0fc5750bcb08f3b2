"""
Sections of a Weierstrass model: group law, intersection numbers, height pairing
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction

import structlog

from resurf.core.exact_arith import (
    T_POLY,
    RatFunc,
    Scalar,
    UniPoly,
    squarefree_part,
    uniform_clusters,
)
from resurf.core.exceptions import InconsistentSurfaceError, ValidationError
from resurf.services.fibration import (
    FiberConfiguration,
    FiberEntry,
    KodairaFiber,
    WeierstrassModel,
    curve_invariants_of,
)

logger = structlog.get_logger()

Order = Callable[[RatFunc], "int | None"]


def _as_ratfunc(value: RatFunc | UniPoly | Scalar) -> RatFunc:
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, UniPoly):
        return RatFunc(value)
    return RatFunc(UniPoly.constant(value))


@dataclass(frozen=True)
class Section:
    """A point of E(Q(t)); x = y = None is the zero section O."""

    x: RatFunc | None = None
    y: RatFunc | None = None

    def __post_init__(self) -> None:
        if (self.x is None) != (self.y is None):
            raise ValidationError("a section needs both coordinates or neither")

    @classmethod
    def point(
        cls, x: RatFunc | UniPoly | Scalar, y: RatFunc | UniPoly | Scalar
    ) -> Section:
        return cls(_as_ratfunc(x), _as_ratfunc(y))

    @property
    def is_zero(self) -> bool:
        return self.x is None

    def coords(self) -> tuple[RatFunc, RatFunc]:
        if self.x is None or self.y is None:
            raise ValidationError("the zero section has no affine coordinates")
        return self.x, self.y

    def to_json(self) -> dict[str, str] | str:
        if self.x is None or self.y is None:
            return "O"
        return {"x": str(self.x), "y": str(self.y)}


ZERO_SECTION = Section()


def _coeffs(m: WeierstrassModel) -> tuple[RatFunc, ...]:
    return tuple(RatFunc(c) for c in m.coefficients)


def on_curve(p: Section, m: WeierstrassModel) -> bool:
    if p.is_zero:
        return True
    x, y = p.coords()
    a1, a2, a3, a4, a6 = _coeffs(m)
    return (y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6)).is_zero


def require_on_curve(p: Section, m: WeierstrassModel) -> None:
    if not on_curve(p, m):
        raise ValidationError(f"section {p.to_json()} is not on the curve {m}")


def negate_section(p: Section, m: WeierstrassModel) -> Section:
    if p.is_zero:
        return p
    x, y = p.coords()
    a1, _, a3, _, _ = _coeffs(m)
    return Section(x, -y - a1 * x - a3)


def add_sections(p: Section, q: Section, m: WeierstrassModel) -> Section:
    if p.is_zero:
        return q
    if q.is_zero:
        return p
    x1, y1 = p.coords()
    x2, y2 = q.coords()
    a1, a2, a3, a4, a6 = _coeffs(m)
    if (x1 - x2).is_zero:
        if (y1 + y2 + a1 * x2 + a3).is_zero:
            return ZERO_SECTION
        denominator = 2 * y1 + a1 * x1 + a3
        slope = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / denominator
        intercept = (-(x1 * x1 * x1) + a4 * x1 + 2 * a6 - a3 * y1) / denominator
    else:
        slope = (y2 - y1) / (x2 - x1)
        intercept = (y1 * x2 - y2 * x1) / (x2 - x1)
    x3 = slope * slope + a1 * slope - a2 - x1 - x2
    y3 = -(slope + a1) * x3 - intercept - a3
    return Section(x3, y3)


def multiply_section(p: Section, n: int, m: WeierstrassModel) -> Section:
    if n < 0:
        return multiply_section(negate_section(p, m), -n, m)
    result = ZERO_SECTION
    addend = p
    while n:
        if n & 1:
            result = add_sections(result, addend, m)
        addend = add_sections(addend, addend, m)
        n >>= 1
    return result


def is_integral_section(p: Section) -> bool:
    if p.is_zero:
        return False
    x, y = p.coords()
    return (
        x.is_polynomial
        and y.is_polynomial
        and x.num.degree <= 2
        and y.num.degree <= 3
    )


def zero_intersection(p: Section, m: WeierstrassModel) -> int:
    """(P.O): half the pole order of x, summed over P^1 including infinity."""
    require_on_curve(p, m)
    if p.is_zero:
        raise ValidationError("use the self-intersection -chi for the zero section")
    x, _ = p.coords()
    finite = x.den.degree
    at_infinity = max(0, x.num.degree - x.den.degree - 2)
    total = finite + at_infinity
    if total % 2:
        raise InconsistentSurfaceError(
            f"odd pole order of x for section {p.to_json()}"
        )
    return total // 2


def _positive(value: int | None) -> bool:
    return value is None or value > 0


def _chart_data(
    p: Section, m: WeierstrassModel, at_infinity: bool
) -> tuple[tuple[UniPoly, ...], RatFunc, RatFunc]:
    x, y = p.coords()
    if at_infinity:
        return m.inverted_coefficients(), x.inverted(2), y.inverted(3)
    return m.coefficients, x, y


def _meeting(
    order: Order,
    coeffs: tuple[UniPoly, ...],
    p: tuple[RatFunc, RatFunc],
    q: tuple[RatFunc, RatFunc],
) -> int:
    """Local intersection of two distinct sections at one place."""
    (xp, yp), (xq, yq) = p, q
    a1, a3 = RatFunc(coeffs[0]), RatFunc(coeffs[2])
    vxp, vxq = order(xp), order(xq)
    pole_p = vxp is not None and vxp < 0
    pole_q = vxq is not None and vxq < 0
    if pole_p and pole_q:
        # both meet O; x/y is a local fiber coordinate there
        vz = order(xp / yp - xq / yq)
        return 0 if vz is None else vz
    if pole_p or pole_q:
        return 0
    dx, dy = order(xp - xq), order(yp - yq)
    if not (_positive(dx) and _positive(dy)):
        return 0
    if dx is None or _positive(order(2 * yp + a1 * xp + a3)):
        return 0 if dy is None else dy
    return dx


def section_intersection(p: Section, q: Section, m: WeierstrassModel) -> int:
    """(P.Q) on the surface; -chi when P = Q."""
    require_on_curve(p, m)
    require_on_curve(q, m)
    if p == q:
        return -1
    if p.is_zero:
        return zero_intersection(q, m)
    if q.is_zero:
        return zero_intersection(p, m)
    pp, qq = p.coords(), q.coords()
    differences = [pp[0] - qq[0], pp[1] - qq[1]]
    if not (pp[1].is_zero or qq[1].is_zero):
        differences.append(pp[0] / pp[1] - qq[0] / qq[1])
    a1, _, a3, _, _ = _coeffs(m)
    psi2 = 2 * pp[1] + a1 * pp[0] + a3
    support = UniPoly.constant(1)
    for f in [d.num for d in differences if not d.is_zero] + [pp[0].den, qq[0].den]:
        if not f.is_constant:
            support = support * squarefree_part(f)
    watch = [part for f in differences + [psi2] for part in (f.num, f.den)]
    watch += [pp[0].num, pp[0].den, qq[0].num, qq[0].den]
    total = 0
    if not support.is_constant:
        for piece, _ in uniform_clusters(squarefree_part(support), watch):
            total += piece.degree * _meeting(
                lambda f, piece=piece: f.order_at(piece), m.coefficients, pp, qq
            )
    coeffs_inf, xp, yp = _chart_data(p, m, True)
    _, xq, yq = _chart_data(q, m, True)
    total += _meeting(lambda f: f.order_at(T_POLY), coeffs_inf, (xp, yp), (xq, yq))
    logger.debug("Section intersection", p=p.to_json(), q=q.to_json(), value=total)
    return total


def _reduction_values(
    coeffs: tuple[UniPoly, ...], x: RatFunc, y: RatFunc
) -> tuple[RatFunc, RatFunc, RatFunc]:
    """2y + a1 x + a3, the x-partial and the 3-division value psi3 at P."""
    a1, a2, a3, a4, _ = (RatFunc(c) for c in coeffs)
    inv = curve_invariants_of(coeffs)
    psi2 = 2 * y + a1 * x + a3
    tangent = 3 * x * x + 2 * a2 * x + a4 - a1 * y
    psi3 = (
        3 * x**4
        + RatFunc(inv.b2) * x**3
        + 3 * RatFunc(inv.b4) * x * x
        + 3 * RatFunc(inv.b6) * x
        + RatFunc(inv.b8)
    )
    return psi2, tangent, psi3


def _local_contribution(
    fiber: KodairaFiber,
    order: Order,
    x: RatFunc,
    values: tuple[RatFunc, RatFunc, RatFunc],
) -> Fraction:
    vx = order(x)
    if vx is not None and vx < 0:
        return Fraction(0)
    psi2, tangent, psi3 = values
    alpha, slope = order(psi2), order(tangent)
    if not (_positive(alpha) and _positive(slope)):
        # reduces to a smooth point: identity component
        return Fraction(0)
    if fiber.is_multiplicative:
        n = fiber.n
        index = Fraction(n, 2) if alpha is None else min(Fraction(alpha), Fraction(n, 2))
        return index * (n - index) / n
    beta = order(psi3)
    if alpha is not None and (beta is None or beta >= 3 * alpha):
        return Fraction(2 * alpha, 3)
    if beta is None:
        return Fraction(0)
    return Fraction(beta, 4)


def fiber_contribution(p: Section, m: WeierstrassModel, entry: FiberEntry) -> Fraction:
    """contr_v(P) summed over the places of one cluster."""
    if p.is_zero or not entry.fiber.contributions:
        return Fraction(0)
    if entry.place.is_infinite:
        coeffs, x, y = _chart_data(p, m, True)
        return _local_contribution(
            entry.fiber,
            lambda f: f.order_at(T_POLY),
            x,
            _reduction_values(coeffs, x, y),
        )
    phi = entry.place.defining_poly
    if phi is None:
        raise InconsistentSurfaceError("finite place without a defining polynomial")
    x, y = p.coords()
    values = _reduction_values(m.coefficients, x, y)
    watch = [x.num, x.den] + [f.num for f in values] + [f.den for f in values]
    total = Fraction(0)
    for piece, _ in uniform_clusters(phi, watch):
        total += piece.degree * _local_contribution(
            entry.fiber, lambda f, piece=piece: f.order_at(piece), x, values
        )
    return total


def _height(p: Section, m: WeierstrassModel, cfg: FiberConfiguration) -> Fraction:
    if p.is_zero:
        return Fraction(0)
    correction = sum(
        (fiber_contribution(p, m, entry) for entry in cfg.reducible), Fraction(0)
    )
    return 2 * cfg.chi + 2 * zero_intersection(p, m) - correction


def height_pairing(
    p: Section, q: Section, m: WeierstrassModel, cfg: FiberConfiguration
) -> Fraction:
    if cfg.model != m:
        raise ValidationError("fiber configuration belongs to a different model")
    require_on_curve(p, m)
    require_on_curve(q, m)
    if p == q:
        value = _height(p, m, cfg)
    else:
        value = (
            _height(add_sections(p, q, m), m, cfg) - _height(p, m, cfg) - _height(q, m, cfg)
        ) / 2
    logger.debug("Height pairing", p=p.to_json(), q=q.to_json(), value=str(value))
    return value


def narrow_membership(p: Section, cfg: FiberConfiguration) -> bool:
    """True iff P meets the identity component of every reducible fiber."""
    require_on_curve(p, cfg.model)
    return all(fiber_contribution(p, cfg.model, entry) == 0 for entry in cfg.reducible)
