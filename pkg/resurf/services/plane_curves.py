"""
Plane curves and cubic pencils: base points, multiplicities, singularities
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Union

import structlog
from sympy import QQ, Expr, Matrix, Poly, Rational, Symbol, expand, groebner

from resurf.config import get_settings
from resurf.core.exact_arith import (
    X,
    Y,
    Z,
    HomogeneousPoly3,
    Scalar,
    UniPoly,
    format_rational,
    rational_roots,
    squarefree_decomposition,
    squarefree_part,
    sylvester_resultant,
    to_fraction,
    to_rational,
)
from resurf.core.exceptions import (
    ArithmeticDomainError,
    EliminationError,
    InvalidPencilError,
    ValidationError,
)

logger = structlog.get_logger()

INFINITE = None
LAMBDA = Symbol("lam")
_U, _V = Symbol("u"), Symbol("v")

CUBIC_MONOMIALS: tuple[tuple[int, int, int], ...] = tuple(
    (i, j, 3 - i - j) for i in range(3, -1, -1) for j in range(3 - i, -1, -1)
)
CONIC_MONOMIALS: tuple[tuple[int, int, int], ...] = (
    (2, 0, 0),
    (1, 1, 0),
    (1, 0, 1),
    (0, 2, 0),
    (0, 1, 1),
    (0, 0, 2),
)


@dataclass(frozen=True, order=True)
class ProjPoint:
    """Rational point of the plane, first nonzero coordinate equal to 1."""

    coords: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self) -> None:
        coords = tuple(Fraction(c) for c in self.coords)
        if len(coords) != 3:
            raise ValidationError("a plane point needs three coordinates")
        pivot = next((c for c in coords if c != 0), None)
        if pivot is None:
            raise ValidationError("the point [0:0:0] is not projective")
        object.__setattr__(self, "coords", tuple(c / pivot for c in coords))

    @classmethod
    def of(cls, *values: Scalar) -> ProjPoint:
        return cls(tuple(Fraction(v) for v in values))  # type: ignore[arg-type]

    @property
    def chart(self) -> int:
        return next(i for i, c in enumerate(self.coords) if c != 0)

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coords]

    def __str__(self) -> str:
        return "[" + ":".join(format_rational(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class PointOrbit:
    """Conjugate points x = root of eliminant, y = lift(x), in a fixed coordinate chart."""

    eliminant: UniPoly
    lift: UniPoly
    chart: tuple[int, int, int]

    @property
    def degree(self) -> int:
        return self.eliminant.degree

    def sort_key(self) -> tuple[int, tuple[Fraction, ...]]:
        return self.eliminant.sort_key()

    def to_json(self) -> dict[str, object]:
        return {
            "degree": self.degree,
            "eliminant": str(self.eliminant).replace("t", "x"),
            "lift": str(self.lift).replace("t", "x"),
            "chart": list(self.chart),
        }


Locus = Union[ProjPoint, PointOrbit]


def locus_size(locus: Locus) -> int:
    return locus.degree if isinstance(locus, PointOrbit) else 1


def _locus_key(locus: Locus) -> tuple[int, object]:
    if isinstance(locus, ProjPoint):
        return (0, locus.coords)
    return (1, locus.sort_key())


@dataclass(frozen=True)
class PlaneCurve:
    poly: HomogeneousPoly3

    def __post_init__(self) -> None:
        if self.poly.is_zero:
            raise ValidationError("a plane curve needs a nonzero polynomial")

    @property
    def degree(self) -> int:
        return self.poly.degree

    def contains(self, point: ProjPoint) -> bool:
        return self.poly(point.coords) == 0

    def __str__(self) -> str:
        return str(self.poly)


class SingularityClass(str, Enum):
    NODE = "node"
    CUSP = "cusp"
    TACNODE_OR_WORSE = "tacnode_or_worse"
    TRIPLE_POINT = "triple_point"
    UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class SingularPoint:
    locus: Locus
    tag: SingularityClass


@dataclass(frozen=True)
class BasePointRecord:
    locus: Locus
    multiplicity: int

    def __post_init__(self) -> None:
        if self.multiplicity < 1:
            raise ValidationError("base point multiplicity must be positive")

    @property
    def simple(self) -> bool:
        return self.multiplicity == 1

    @property
    def orbit_size(self) -> int:
        return locus_size(self.locus)


@dataclass(frozen=True)
class CubicPencil:
    """The pencil s*h1 + t*h2 of plane cubics."""

    h1: PlaneCurve
    h2: PlaneCurve

    def __post_init__(self) -> None:
        if self.h1.degree != 3 or self.h2.degree != 3:
            raise InvalidPencilError("pencil generators must be cubics")
        if share_component(self.h1.poly, self.h2.poly):
            raise InvalidPencilError(
                "pencil generators share a common factor", error_code="common_factor"
            )

    def member(self, s: Scalar, t: Scalar) -> PlaneCurve:
        return PlaneCurve(self.h1.poly.scale(s) + self.h2.poly.scale(t))

    def generic_member_expr(self) -> Expr:
        """h1 + lam*h2 as a sympy expression."""
        return self.h1.poly.to_expr() + LAMBDA * self.h2.poly.to_expr()


@dataclass
class GeneralPositionReport:
    collinear: list[tuple[int, int, int]] = field(default_factory=list)
    conconic: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def is_general(self) -> bool:
        return not self.collinear and not self.conconic


@dataclass(frozen=True)
class SingularMember:
    """A singular member: parameter [s:t], or an orbit of parameters t/s."""

    parameter: tuple[Fraction, Fraction] | None
    orbit: UniPoly | None
    witness: tuple[SingularPoint, ...] = ()
    repeated_component: bool = False
    classified: bool = True


@dataclass
class SingularMembersReport:
    members: list[SingularMember] = field(default_factory=list)
    all_singular: bool = False


# Coordinate charts


@dataclass(frozen=True)
class ChartTransform:
    """Unimodular change v = M v' with M = [[1, a, 0], [0, 1, 0], [b, c, 1]]."""

    a: int
    b: int
    c: int

    @property
    def entries(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @property
    def centre(self) -> tuple[int, int, int]:
        """Image of [0:1:0], the projection centre in the new coordinates."""
        return (self.a, 1, self.c)

    def apply(self, expr: Expr) -> Expr:
        return expand(
            expr.subs(
                {X: X + self.a * Y, Z: self.b * X + self.c * Y + Z}, simultaneous=True
            )
        )

    def affine(self, expr: Expr) -> Expr:
        return expand(self.apply(expr).subs(Z, 1))

    def to_original(self, x: Fraction, y: Fraction) -> ProjPoint:
        return ProjPoint.of(x + self.a * y, y, self.b * x + self.c * y + 1)


def chart_transforms(radius: int | None = None) -> Iterator[ChartTransform]:
    radius = radius if radius is not None else get_settings().chart_search_radius
    span = range(-radius, radius + 1)
    entries = sorted(
        itertools.product(span, repeat=3),
        key=lambda e: (sum(abs(v) for v in e), [(abs(v), -v) for v in e]),
    )
    for a, b, c in entries:
        yield ChartTransform(a, b, c)


def _admissible(transform: ChartTransform, forms: Sequence[HomogeneousPoly3]) -> bool:
    return all(form(transform.centre) != 0 for form in forms)


def share_component(f: HomogeneousPoly3, g: HomogeneousPoly3) -> bool:
    """True iff f and g have a nonconstant common factor."""
    if f.degree == 0 or g.degree == 0:
        return False
    for transform in chart_transforms():
        if not _admissible(transform, (f, g)):
            continue
        resultant = sylvester_resultant(
            transform.affine(f.to_expr()), transform.affine(g.to_expr()), Y
        )
        return bool(expand(resultant) == 0)
    raise EliminationError("no coordinate chart avoids both curves")


# Common zeros by resultant elimination with dynamic splitting


def _y_coefficients(expr: Expr) -> list[Poly]:
    poly = Poly(expr, Y)
    return [Poly(c, X, domain=QQ) for c in reversed(poly.all_coeffs())]


def _strip(coeffs: list[Poly]) -> list[Poly]:
    while coeffs and coeffs[-1].is_zero:
        coeffs = coeffs[:-1]
    return coeffs


def _normalize(coeffs: list[Poly], phi: Poly) -> list[tuple[Poly, list[Poly]]]:
    """Split phi until the leading coefficient is zero or invertible on each piece."""
    out: list[tuple[Poly, list[Poly]]] = []
    stack = [(phi, [c.rem(phi) for c in coeffs])]
    while stack:
        piece, cs = stack.pop()
        cs = _strip(cs)
        if not cs:
            out.append((piece, []))
            continue
        common = piece.gcd(cs[-1])
        if common.degree() <= 0:
            out.append((piece, cs))
            continue
        other = piece.exquo(common)
        stack.append((other, [c.rem(other) for c in cs]))
        stack.append((common, [c.rem(common) for c in cs[:-1]]))
    return out


def _remainder(a: list[Poly], b: list[Poly], phi: Poly) -> list[Poly]:
    inverse = b[-1].invert(phi)
    a = list(a)
    while len(a) >= len(b):
        q = (a[-1] * inverse).rem(phi)
        shift = len(a) - len(b)
        for i, coeff in enumerate(b[:-1]):
            a[shift + i] = (a[shift + i] - q * coeff).rem(phi)
        # the leading term cancels exactly
        a = _strip(a[:-1])
    return a


def _gcd_over(phi: Poly, a: list[Poly], b: list[Poly]) -> list[tuple[Poly, list[Poly]]]:
    """Monic gcd of a and b over Q[x]/(phi), splitting phi when needed."""
    results: list[tuple[Poly, list[Poly]]] = []
    stack = [(phi, a, b)]
    while stack:
        piece, left, right = stack.pop()
        for sub, right_norm in _normalize(right, piece):
            left_red = [c.rem(sub) for c in left]
            if not right_norm:
                for leaf, left_norm in _normalize(left_red, sub):
                    if not left_norm:
                        raise EliminationError("both curves vanish on a vertical line")
                    inverse = left_norm[-1].invert(leaf)
                    results.append((leaf, [(c * inverse).rem(leaf) for c in left_norm]))
                continue
            stack.append((sub, right_norm, _remainder(left_red, right_norm, sub)))
    return results


def _power_root(factor: list[Poly], leaf: Poly) -> Poly | None:
    """r with factor = (y - r)^k mod leaf, for a monic factor of y-degree k."""
    k = len(factor) - 1
    if k < 1:
        return None
    root = factor[k - 1].mul_ground(Rational(-1, k)).rem(leaf)
    for i in range(k - 1):
        expected = (root ** (k - i)) * (comb(k, i) * (-1) ** (k - i))
        if not (factor[i] - expected).rem(leaf).is_zero:
            return None
    return root


@dataclass(frozen=True)
class ZeroLocus:
    locus: Locus
    multiplicity: int


def _lift_in_chart(
    fa: Expr, ga: Expr, transform: ChartTransform, expected: int
) -> list[ZeroLocus] | None:
    resultant = UniPoly.from_expr(sylvester_resultant(fa, ga, Y), X)
    if resultant.is_zero:
        raise InvalidPencilError("curves share a common component")
    if resultant.degree != expected:
        return None
    f_coeffs, g_coeffs = _y_coefficients(fa), _y_coefficients(ga)
    zeros: list[ZeroLocus] = []
    for factor, multiplicity in squarefree_decomposition(resultant):
        pieces = [UniPoly((-root, Fraction(1))) for root in rational_roots(factor)]
        rest = factor
        for piece in pieces:
            rest = rest.exquo(piece)
        if rest.degree > 0:
            pieces.append(rest)
        for piece in pieces:
            for leaf, gcd in _gcd_over(piece.to_poly(X), f_coeffs, g_coeffs):
                # points singular on both forms give a repeated factor
                root = _power_root(gcd, leaf)
                if root is None:
                    return None
                eliminant = UniPoly.from_poly(leaf.monic())
                lift = UniPoly.from_poly(root)
                if eliminant.degree == 1:
                    x0 = -eliminant.coefficient(0)
                    locus: Locus = transform.to_original(x0, lift(x0))
                else:
                    locus = PointOrbit(eliminant, lift, transform.entries)
                zeros.append(ZeroLocus(locus, multiplicity))
    return zeros


def common_zeros(f: HomogeneousPoly3, g: HomogeneousPoly3) -> list[ZeroLocus]:
    """Common zeros of two coprime forms, rational points exact, the rest as orbits."""
    expected = f.degree * g.degree
    for transform in chart_transforms():
        if not _admissible(transform, (f, g)):
            continue
        fa = transform.affine(f.to_expr())
        ga = transform.affine(g.to_expr())
        zeros = _lift_in_chart(fa, ga, transform, expected)
        if zeros is None:
            logger.debug("Chart rejected", chart=transform.entries)
            continue
        logger.debug("Chart accepted", chart=transform.entries, loci=len(zeros))
        return sorted(zeros, key=lambda z: _locus_key(z.locus))
    raise EliminationError(
        "no coordinate chart separates the common zeros",
        details={"radius": get_settings().chart_search_radius},
    )


# Local computations at rational points


def _local(poly: HomogeneousPoly3, p: ProjPoint) -> Poly:
    """Dehomogenize in the chart of p and translate p to the origin (u, v)."""
    k = p.chart
    others = [i for i in range(3) if i != k]
    gens = (X, Y, Z)
    substitution = {
        gens[k]: Rational(1),
        gens[others[0]]: _U + to_rational(p.coords[others[0]]),
        gens[others[1]]: _V + to_rational(p.coords[others[1]]),
    }
    return Poly(expand(poly.to_expr().subs(substitution, simultaneous=True)), _U, _V)


def _order(poly: Poly) -> int:
    if poly.is_zero:
        raise ArithmeticDomainError("order of the zero polynomial")
    return min(sum(m) for m in poly.monoms())


def curve_multiplicity(c: PlaneCurve, p: ProjPoint) -> int:
    return _order(_local(c.poly, p))


def _restrict(poly: Poly) -> dict[int, Expr]:
    return {i: coeff for (i, j), coeff in poly.terms() if j == 0}


def _fulton(f: Poly, g: Poly) -> int | None:
    if f.is_zero or g.is_zero:
        return INFINITE
    if f.coeff_monomial(1) != 0 or g.coeff_monomial(1) != 0:
        return 0
    fr, gr = _restrict(f), _restrict(g)
    if not fr and not gr:
        return INFINITE
    if not fr:
        f, g, fr, gr = g, f, gr, fr
    gens = f.gens
    if not gr:
        # g = v*h and I(f, v) = ord f(u, 0)
        h = g.exquo(Poly(gens[1], *gens))
        rest = _fulton(f, h)
        return INFINITE if rest is INFINITE else min(fr) + rest
    r, s = max(fr), max(gr)
    if r > s:
        f, g, fr, gr, r, s = g, f, gr, fr, s, r
    reduced = g * fr[r] - f * (gr[s] * gens[0] ** (s - r))
    return _fulton(f, reduced)


def intersection_multiplicity(f: PlaneCurve, g: PlaneCurve, p: ProjPoint) -> int | None:
    """I_p(f, g); None stands for an infinite intersection number."""
    local_f, local_g = _local(f.poly, p), _local(g.poly, p)
    degree_u = local_f.degree(_U) + local_g.degree(_U)
    degree_v = local_f.degree(_V) + local_g.degree(_V)
    if degree_u > degree_v:
        local_f = Poly(local_f.as_expr(), _V, _U)
        local_g = Poly(local_g.as_expr(), _V, _U)
    return _fulton(local_f, local_g)


# Pencils


def base_points(pencil: CubicPencil) -> list[BasePointRecord]:
    records: list[BasePointRecord] = []
    for zero in common_zeros(pencil.h1.poly, pencil.h2.poly):
        multiplicity = zero.multiplicity
        if isinstance(zero.locus, ProjPoint):
            local = intersection_multiplicity(pencil.h1, pencil.h2, zero.locus)
            if local != multiplicity:
                raise EliminationError(
                    f"multiplicity mismatch at {zero.locus}: {local} != {multiplicity}"
                )
        records.append(BasePointRecord(zero.locus, multiplicity))
    total = sum(r.multiplicity * r.orbit_size for r in records)
    if total != 9:
        raise EliminationError(f"base points account for {total} intersections, not 9")
    logger.debug("Base points computed", loci=len(records))
    return records


def _primitive(vector: Sequence[Fraction]) -> list[Fraction]:
    denominators = lcm(*(v.denominator for v in vector))
    integers = [int(v * denominators) for v in vector]
    content = gcd(*integers) or 1
    lead = next(v for v in integers if v != 0)
    sign = -1 if lead < 0 else 1
    return [Fraction(sign * v, content) for v in integers]


def _monomial_row(
    p: ProjPoint, monomials: Sequence[tuple[int, int, int]]
) -> list[Rational]:
    x, y, z = p.coords
    return [to_rational(x**i * y**j * z**k) for i, j, k in monomials]


def pencil_through_points(points: Sequence[ProjPoint]) -> CubicPencil:
    if len(points) != 8:
        raise ValidationError(f"expected 8 points, got {len(points)}")
    if len(set(points)) != 8:
        raise ValidationError("points must be distinct")
    rows = [_monomial_row(p, CUBIC_MONOMIALS) for p in points]
    kernel = Matrix(rows).nullspace()
    if len(kernel) != 2:
        raise InvalidPencilError(
            "points impose dependent conditions",
            details={"solution_dimension": len(kernel)},
        )
    curves = []
    for vector in kernel:
        coeffs = _primitive([to_fraction(v) for v in vector])
        curves.append(
            PlaneCurve(HomogeneousPoly3(3, tuple(zip(CUBIC_MONOMIALS, coeffs))))
        )
    return CubicPencil(curves[0], curves[1])


def _det3(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def general_position(points: Sequence[ProjPoint]) -> GeneralPositionReport:
    """List collinear triples and sextuples on a conic."""
    report = GeneralPositionReport()
    for triple in itertools.combinations(range(len(points)), 3):
        if _det3([points[i].coords for i in triple]) == 0:
            report.collinear.append(triple)  # type: ignore[arg-type]
    for six in itertools.combinations(range(len(points)), 6):
        rows = [_monomial_row(points[n], CONIC_MONOMIALS) for n in six]
        if Matrix(rows).det(method="bareiss") == 0:
            report.conconic.append(six)
    return report


# Singularities


def _is_reduced(c: PlaneCurve) -> bool:
    poly = c.poly.to_poly()
    common = poly
    for partial in c.poly.gradient():
        common = common.gcd(partial.to_poly()) if not partial.is_zero else common
    return common.total_degree() == 0


def _vanishing_part(
    zero: Locus, form: HomogeneousPoly3
) -> Locus | None:
    """Restrict a locus to the points where a form vanishes."""
    if isinstance(zero, ProjPoint):
        return zero if form(zero.coords) == 0 else None
    transform = ChartTransform(*zero.chart)
    value = UniPoly.from_expr(
        transform.affine(form.to_expr()).subs(Y, zero.lift.to_expr(X)), X
    ) % zero.eliminant
    if value.is_zero:
        return zero
    keep = zero.eliminant.gcd(value).monic()
    if keep.is_constant:
        return None
    lift = zero.lift % keep
    if keep.degree == 1:
        x0 = -keep.coefficient(0)
        return transform.to_original(x0, lift(x0))
    return PointOrbit(keep, lift, zero.chart)


def _partial_pairs(
    partials: Sequence[HomogeneousPoly3],
) -> Iterator[tuple[HomogeneousPoly3, HomogeneousPoly3]]:
    nonzero = [p for p in partials if not p.is_zero]
    for f, g in itertools.combinations(nonzero, 2):
        yield f, g
    p0, p1, p2 = partials
    for a, b in ((1, 1), (1, 2), (2, 3)):
        yield p0 + p1.scale(a) + p2.scale(b), p1 + p2.scale(a + b)


def singular_points(c: PlaneCurve) -> list[SingularPoint]:
    if not _is_reduced(c):
        raise ValidationError("repeated component", error_code="non_reduced")
    partials = c.poly.gradient()
    for f, g in _partial_pairs(partials):
        if f.is_zero or g.is_zero or share_component(f, g):
            continue
        loci: list[Locus] = []
        for zero in common_zeros(f, g):
            locus: Locus | None = zero.locus
            for partial in partials:
                if locus is None:
                    break
                locus = _vanishing_part(locus, partial)
            if locus is not None:
                loci.append(locus)
        loci.sort(key=_locus_key)
        return [
            SingularPoint(
                locus,
                classify_singularity(c, locus)
                if isinstance(locus, ProjPoint)
                else SingularityClass.UNCLASSIFIED,
            )
            for locus in loci
        ]
    raise EliminationError("partial derivatives share a component")


def _linear_part_vanishes(poly: Poly) -> bool:
    u, v = poly.gens
    return poly.coeff_monomial(u) == 0 and poly.coeff_monomial(v) == 0


def classify_singularity(c: PlaneCurve, p: ProjPoint) -> SingularityClass:
    local = _local(c.poly, p)
    if local.is_zero or local.coeff_monomial(1) != 0 or _order(local) < 2:
        raise ValidationError(f"{p} is not a singular point of the curve")
    if _order(local) >= 3:
        return SingularityClass.TRIPLE_POINT
    a = local.coeff_monomial(_U**2)
    b = local.coeff_monomial(_U * _V)
    cc = local.coeff_monomial(_V**2)
    if b**2 - 4 * a * cc != 0:
        return SingularityClass.NODE
    w = Symbol("w")
    expr = local.as_expr()
    if a != 0:
        # tangent line u + b/(2a) v = 0, blown up along v
        shifted = expr.subs(_U, _U - b / (2 * a) * _V)
        strict = Poly(expand(shifted.subs(_U, _V * w)), w, _V).exquo(
            Poly(_V**2, w, _V)
        )
    else:
        strict = Poly(expand(expr.subs(_V, _U * w)), _U, w).exquo(Poly(_U**2, _U, w))
    if strict.coeff_monomial(1) != 0:
        raise EliminationError("tangent cone computation is inconsistent")
    if _linear_part_vanishes(strict):
        return SingularityClass.TACNODE_OR_WORSE
    return SingularityClass.CUSP


def _binary_linear_factors(values: Expr, first: Symbol, second: Symbol) -> list[tuple[Fraction, Fraction]]:
    """Coefficient pairs (alpha, beta) of rational linear factors of a binary form."""
    poly = Poly(values, first, second)
    if poly.is_zero:
        return []
    factors: list[tuple[Fraction, Fraction]] = []
    dehomogenized = UniPoly.from_expr(values.subs(second, 1), first)
    for root in sorted(set(rational_roots(dehomogenized))):
        factors.append((Fraction(1), -root))
    if dehomogenized.degree < poly.total_degree():
        factors.append((Fraction(0), Fraction(1)))
    return factors


def rational_linear_factor(c: PlaneCurve) -> HomogeneousPoly3 | None:
    """A line with rational coefficients dividing c, found from coordinate-line restrictions."""
    expr = c.poly.to_expr()
    poly = c.poly.to_poly()

    def divides(alpha: Fraction, beta: Fraction, gamma: Fraction) -> HomogeneousPoly3 | None:
        line = HomogeneousPoly3(
            1, (((1, 0, 0), alpha), ((0, 1, 0), beta), ((0, 0, 1), gamma))
        )
        if line.is_zero:
            return None
        return line if poly.rem(line.to_poly()).is_zero else None

    on_z = expand(expr.subs(Z, 0))
    if on_z == 0:
        return divides(Fraction(0), Fraction(0), Fraction(1))
    on_y = expand(expr.subs(Y, 0))
    if on_y == 0:
        return divides(Fraction(0), Fraction(1), Fraction(0))
    on_x = expand(expr.subs(X, 0))
    if on_x == 0:
        return divides(Fraction(1), Fraction(0), Fraction(0))
    for alpha, beta in _binary_linear_factors(on_z, X, Y):
        if alpha != 0:
            gammas = [-alpha * s for s in _x_over_z_roots(on_y)]
        else:
            gammas = [-s for s in _x_over_z_roots(on_x, Y)]
        for gamma in gammas:
            line = divides(alpha, beta, gamma)
            if line is not None:
                return line
    return None


def _x_over_z_roots(values: Expr, var: Symbol = X) -> list[Fraction]:
    """Rational s with (var - s*Z) dividing a binary form in var, Z."""
    return sorted(set(rational_roots(UniPoly.from_expr(values.subs(Z, 1), var))))


def is_absolutely_irreducible(c: PlaneCurve) -> bool:
    if c.degree != 3:
        raise ValidationError("irreducibility rule applies to cubics")
    if not _is_reduced(c):
        return False
    if rational_linear_factor(c) is not None:
        return False
    singular = singular_points(c)
    if sum(locus_size(s.locus) for s in singular) >= 2:
        return False
    if singular and singular[0].tag in (
        SingularityClass.TRIPLE_POINT,
        SingularityClass.TACNODE_OR_WORSE,
    ):
        return False
    return True


# Singular members


def _chart_partials(pencil: CubicPencil, chart: int) -> list[Expr]:
    generic = pencil.generic_member_expr()
    gens = (X, Y, Z)
    return [
        expand(generic.diff(var).subs(gens[chart], 1)) for var in gens
    ]


def _chart_variables(chart: int) -> tuple[Symbol, Symbol]:
    gens = [X, Y, Z]
    del gens[chart]
    return gens[0], gens[1]


def _resultant_eliminant(partials: Sequence[Expr], first: Symbol, second: Symbol) -> UniPoly:
    """Product of the nonzero iterated resultants over the three pairings."""
    result: UniPoly | None = None
    for i in range(3):
        pivot = partials[i]
        rest = [partials[j] for j in range(3) if j != i]
        try:
            r1 = sylvester_resultant(pivot, rest[0], second)
            r2 = sylvester_resultant(pivot, rest[1], second)
            if r1 == 0 or r2 == 0:
                continue
            eliminant = UniPoly.from_expr(sylvester_resultant(r1, r2, first), LAMBDA)
        except ArithmeticDomainError:
            continue
        if not eliminant.is_zero:
            result = eliminant if result is None else result.gcd(eliminant)
    return result if result is not None else UniPoly()


def _groebner_eliminant(polys: Sequence[Expr], first: Symbol, second: Symbol) -> UniPoly | None:
    """Generator of the elimination ideal in lam; None when it is zero."""
    basis = groebner(list(polys), first, second, LAMBDA, order="lex", domain=QQ)
    for element in basis.exprs:
        if element.free_symbols <= {LAMBDA}:
            return UniPoly.from_expr(element, LAMBDA)
    return None


def _member_witness(
    member: PlaneCurve,
) -> tuple[tuple[SingularPoint, ...], bool] | None:
    """Singular points and the repeated-component flag; None if elimination fails."""
    try:
        return tuple(singular_points(member)), False
    except ValidationError:
        return (), True
    except EliminationError as e:
        logger.warning("Member not classified", member=str(member), reason=e.message)
        return None


def _singular_member(
    parameter: tuple[Fraction, Fraction], member: PlaneCurve
) -> SingularMember | None:
    found = _member_witness(member)
    if found is None:
        return SingularMember(parameter, None, classified=False)
    witness, repeated = found
    if witness or repeated:
        return SingularMember(parameter, None, witness, repeated)
    return None


def singular_members(pencil: CubicPencil) -> SingularMembersReport:
    report = SingularMembersReport()
    candidates = UniPoly.constant(1)
    for chart in range(3):
        partials = _chart_partials(pencil, chart)
        first, second = _chart_variables(chart)
        eliminant = _resultant_eliminant(partials, first, second)
        if eliminant.is_zero:
            exact = _groebner_eliminant(partials, first, second)
            if exact is None:
                report.all_singular = True
                logger.warning("Every member of the pencil is singular")
                return report
            eliminant = exact
        if not eliminant.is_constant:
            candidates = candidates.lcm(squarefree_part(eliminant))

    at_infinity = _singular_member((Fraction(0), Fraction(1)), pencil.h2)
    if at_infinity is not None:
        report.members.append(at_infinity)
    if candidates.is_constant:
        return report

    rest = candidates
    for root in sorted(set(rational_roots(candidates))):
        rest = rest.exquo(UniPoly((-root, Fraction(1))))
        member = _singular_member((Fraction(1), root), pencil.member(1, root))
        if member is not None:
            report.members.append(member)
    if rest.degree > 0:
        verified = UniPoly.constant(1)
        for chart in range(3):
            first, second = _chart_variables(chart)
            eliminant = _groebner_eliminant(
                [rest.to_expr(LAMBDA), *_chart_partials(pencil, chart)], first, second
            )
            if eliminant is not None and not eliminant.is_constant:
                verified = verified.lcm(eliminant.monic())
        if not verified.is_constant:
            report.members.append(SingularMember(None, verified))
    logger.debug("Singular members found", count=len(report.members))
    return report


def _sample_parameters() -> Iterator[tuple[int, int]]:
    yield (1, 0)
    yield (0, 1)
    n = 1
    while True:
        yield (1, n)
        yield (1, -n)
        n += 1


def smooth_member_exists(pencil: CubicPencil) -> bool:
    """Exact: a nonzero pencil discriminant has at most 12 roots on P^1."""
    limit = get_settings().max_smooth_samples
    for s, t in itertools.islice(_sample_parameters(), limit):
        if _member_witness(pencil.member(s, t)) == ((), False):
            return True
    return False
