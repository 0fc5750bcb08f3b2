"""
Exact rational arithmetic and polynomial algebra
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Any, Union

import structlog
from sympy import QQ, Expr, Poly, Rational, Symbol, expand, symbols
from sympy.polys.matrices import DomainMatrix
from sympy.polys.subresultants_qq_zz import sylvester

from resurf.core.exceptions import ArithmeticDomainError

logger = structlog.get_logger()

Rat = Fraction
Scalar = Union[int, Fraction]
Monomial = tuple[int, int, int]

# Function field variable and plane coordinates
T = Symbol("t")
X, Y, Z = symbols("X Y Z")
ELIM = Symbol("x_elim")

ZERO_DEGREE = -1


def to_fraction(value: Any) -> Fraction:
    """Convert a sympy or python rational to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if hasattr(value, "p") and hasattr(value, "q"):
        return Fraction(int(value.p), int(value.q))
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Fraction(int(value.numerator), int(value.denominator))
    raise ArithmeticDomainError(f"Not an exact rational: {value!r}")


def to_rational(value: Scalar) -> Rational:
    value = Fraction(value)
    return Rational(value.numerator, value.denominator)


def format_rational(value: Scalar) -> str:
    return str(Fraction(value))


def _render(terms: Iterable[tuple[Fraction, str]]) -> str:
    """Render (coefficient, monomial) pairs in the input grammar."""
    parts: list[str] = []
    for coeff, monomial in terms:
        if coeff == 0:
            continue
        sign = "-" if coeff < 0 else "+"
        size = abs(coeff)
        if not monomial:
            body = str(size)
        elif size == 1:
            body = monomial
        else:
            body = f"{size}*{monomial}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts) if parts else "0"


def _power(name: str, exponent: int) -> str:
    if exponent == 0:
        return ""
    if exponent == 1:
        return name
    return f"{name}^{exponent}"


@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial in t with exact rational coefficients, low to high."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        coeffs = [Fraction(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    # construction

    @classmethod
    def constant(cls, value: Scalar) -> UniPoly:
        return cls((Fraction(value),))

    @classmethod
    def monomial(cls, value: Scalar, exponent: int) -> UniPoly:
        return cls((Fraction(0),) * exponent + (Fraction(value),))

    @classmethod
    def from_poly(cls, poly: Poly) -> UniPoly:
        if poly.is_zero:
            return cls()
        return cls(tuple(to_fraction(c) for c in reversed(poly.all_coeffs())))

    @classmethod
    def from_expr(cls, expr: Any, var: Symbol = T) -> UniPoly:
        return cls.from_poly(Poly(expr, var, domain=QQ))

    def to_poly(self, var: Symbol = T) -> Poly:
        if self.is_zero:
            return Poly(0, var, domain=QQ)
        return Poly([to_rational(c) for c in reversed(self.coeffs)], var, domain=QQ)

    def to_expr(self, var: Symbol = T) -> Expr:
        return self.to_poly(var).as_expr()

    @cached_property
    def _poly(self) -> Poly:
        return self.to_poly()

    # properties

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, exponent: int) -> Fraction:
        if 0 <= exponent < len(self.coeffs):
            return self.coeffs[exponent]
        return Fraction(0)

    def sort_key(self) -> tuple[int, tuple[Fraction, ...]]:
        return (self.degree, tuple(reversed(self.coeffs)))

    # ring operations

    def __add__(self, other: UniPoly | Scalar) -> UniPoly:
        other = _lift(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            tuple(self.coefficient(i) + other.coefficient(i) for i in range(size))
        )

    __radd__ = __add__

    def __neg__(self) -> UniPoly:
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: UniPoly | Scalar) -> UniPoly:
        return self + (-_lift(other))

    def __rsub__(self, other: Scalar) -> UniPoly:
        return _lift(other) - self

    def __mul__(self, other: UniPoly | Scalar) -> UniPoly:
        other = _lift(other)
        if self.is_zero or other.is_zero:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> UniPoly:
        result = UniPoly.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __divmod__(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if other.is_zero:
            raise ArithmeticDomainError("division by the zero polynomial")
        quo, rem = self._poly.div(other._poly)
        return UniPoly.from_poly(quo), UniPoly.from_poly(rem)

    def __floordiv__(self, other: UniPoly) -> UniPoly:
        return divmod(self, other)[0]

    def __mod__(self, other: UniPoly) -> UniPoly:
        return divmod(self, other)[1]

    def exquo(self, other: UniPoly) -> UniPoly:
        quo, rem = divmod(self, other)
        if not rem.is_zero:
            raise ArithmeticDomainError("inexact polynomial division")
        return quo

    def divides(self, other: UniPoly) -> bool:
        return (other % self).is_zero

    def gcd(self, other: UniPoly) -> UniPoly:
        return UniPoly.from_poly(self._poly.gcd(other._poly))

    def lcm(self, other: UniPoly) -> UniPoly:
        return UniPoly.from_poly(self._poly.lcm(other._poly))

    def monic(self) -> UniPoly:
        if self.is_zero:
            return self
        return self * (1 / self.leading_coefficient)

    def derivative(self) -> UniPoly:
        return UniPoly(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def inverted(self, weight: int) -> UniPoly:
        """Return s^weight * f(1/s); requires degree <= weight."""
        if self.degree > weight:
            raise ArithmeticDomainError(
                f"degree {self.degree} exceeds inversion weight {weight}"
            )
        padded = self.coeffs + (Fraction(0),) * (weight + 1 - len(self.coeffs))
        return UniPoly(tuple(reversed(padded)))

    def __call__(self, value: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __str__(self) -> str:
        return _render(
            (c, _power("t", i)) for i, c in reversed(list(enumerate(self.coeffs)))
        )


def _lift(value: UniPoly | Scalar) -> UniPoly:
    if isinstance(value, UniPoly):
        return value
    return UniPoly.constant(value)


ONE = UniPoly.constant(1)
ZERO = UniPoly()
T_POLY = UniPoly.monomial(1, 1)


@dataclass(frozen=True)
class RatFunc:
    """Reduced rational function num/den in t, den monic."""

    num: UniPoly
    den: UniPoly = ONE

    def __post_init__(self) -> None:
        if self.den.is_zero:
            raise ArithmeticDomainError("zero denominator")
        num, den = self.num, self.den
        if num.is_zero:
            num, den = ZERO, ONE
        elif not den.is_constant:
            common = num.gcd(den)
            if not common.is_constant:
                num, den = num.exquo(common), den.exquo(common)
        scale = den.leading_coefficient
        object.__setattr__(self, "num", num * (1 / scale))
        object.__setattr__(self, "den", den * (1 / scale))

    @classmethod
    def from_expr(cls, expr: Any) -> RatFunc:
        from sympy import cancel, fraction

        num, den = fraction(cancel(expr))
        return cls(UniPoly.from_expr(num), UniPoly.from_expr(den))

    def to_expr(self) -> Expr:
        return self.num.to_expr() / self.den.to_expr()

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_constant

    @property
    def degree_gap(self) -> int:
        return self.num.degree - self.den.degree

    def __add__(self, other: RatFunc | UniPoly | Scalar) -> RatFunc:
        other = _lift_ratfunc(other)
        return RatFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: RatFunc | UniPoly | Scalar) -> RatFunc:
        return self + (-_lift_ratfunc(other))

    def __rsub__(self, other: UniPoly | Scalar) -> RatFunc:
        return _lift_ratfunc(other) - self

    def __mul__(self, other: RatFunc | UniPoly | Scalar) -> RatFunc:
        other = _lift_ratfunc(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: RatFunc | UniPoly | Scalar) -> RatFunc:
        other = _lift_ratfunc(other)
        if other.is_zero:
            raise ArithmeticDomainError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other: UniPoly | Scalar) -> RatFunc:
        return _lift_ratfunc(other) / self

    def __pow__(self, exponent: int) -> RatFunc:
        return RatFunc(self.num**exponent, self.den**exponent)

    def inverted(self, weight: int) -> RatFunc:
        """Return s^weight * f(1/s) as a rational function of s."""
        num = self.num.inverted(max(self.num.degree, 0))
        den = self.den.inverted(self.den.degree)
        shift = self.den.degree + weight - max(self.num.degree, 0)
        if shift >= 0:
            return RatFunc(num * UniPoly.monomial(1, shift), den)
        return RatFunc(num, den * UniPoly.monomial(1, -shift))

    def order_at(self, phi: UniPoly) -> int | None:
        """Valuation at the roots of a squarefree phi; None for the zero function."""
        if self.is_zero:
            return None
        return poly_valuation(self.num, phi) - poly_valuation(self.den, phi)

    def __str__(self) -> str:
        if self.den.is_constant:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _lift_ratfunc(value: RatFunc | UniPoly | Scalar) -> RatFunc:
    if isinstance(value, RatFunc):
        return value
    return RatFunc(_lift(value))


@dataclass(frozen=True)
class HomogeneousPoly3:
    """Homogeneous polynomial in X, Y, Z with exact rational coefficients."""

    degree: int
    terms: tuple[tuple[Monomial, Fraction], ...] = ()

    def __post_init__(self) -> None:
        merged: dict[Monomial, Fraction] = {}
        for monomial, coeff in self.terms:
            if sum(monomial) != self.degree or min(monomial) < 0:
                raise ArithmeticDomainError(
                    f"monomial {monomial} is not of degree {self.degree}"
                )
            merged[monomial] = merged.get(monomial, Fraction(0)) + Fraction(coeff)
        terms = tuple(sorted((m, c) for m, c in merged.items() if c != 0))
        object.__setattr__(self, "terms", tuple(reversed(terms)))

    @classmethod
    def from_dict(cls, degree: int, mapping: dict[Monomial, Scalar]) -> HomogeneousPoly3:
        return cls(degree, tuple((m, Fraction(c)) for m, c in mapping.items()))

    @classmethod
    def from_poly(cls, poly: Poly) -> HomogeneousPoly3:
        if poly.is_zero:
            raise ArithmeticDomainError("zero polynomial has no degree")
        if not poly.is_homogeneous:
            raise ArithmeticDomainError("polynomial is not homogeneous")
        return cls(
            poly.total_degree(),
            tuple((tuple(m), to_fraction(c)) for m, c in poly.terms()),  # type: ignore[misc]
        )

    @classmethod
    def from_expr(cls, expr: Any) -> HomogeneousPoly3:
        return cls.from_poly(Poly(expand(expr), X, Y, Z, domain=QQ))

    def as_dict(self) -> dict[Monomial, Fraction]:
        return dict(self.terms)

    def to_poly(self) -> Poly:
        return Poly.from_dict(
            {m: to_rational(c) for m, c in self.terms} or {(0, 0, 0): 0},
            X,
            Y,
            Z,
            domain=QQ,
        )

    def to_expr(self) -> Expr:
        return self.to_poly().as_expr()

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, point: Sequence[Scalar]) -> Fraction:
        x, y, z = (Fraction(c) for c in point)
        return sum(
            (c * x**i * y**j * z**k for (i, j, k), c in self.terms), Fraction(0)
        )

    def partial(self, index: int) -> HomogeneousPoly3:
        if self.degree == 0:
            return HomogeneousPoly3(0)
        out: list[tuple[Monomial, Fraction]] = []
        for monomial, coeff in self.terms:
            if monomial[index] == 0:
                continue
            lowered = list(monomial)
            lowered[index] -= 1
            out.append((tuple(lowered), coeff * monomial[index]))  # type: ignore[arg-type]
        return HomogeneousPoly3(self.degree - 1, tuple(out))

    def gradient(self) -> tuple[HomogeneousPoly3, HomogeneousPoly3, HomogeneousPoly3]:
        return (self.partial(0), self.partial(1), self.partial(2))

    def __add__(self, other: HomogeneousPoly3) -> HomogeneousPoly3:
        if self.degree != other.degree and not (self.is_zero or other.is_zero):
            raise ArithmeticDomainError("degree mismatch")
        degree = other.degree if self.is_zero else self.degree
        return HomogeneousPoly3(degree, self.terms + other.terms)

    def scale(self, value: Scalar) -> HomogeneousPoly3:
        return HomogeneousPoly3(self.degree, tuple((m, c * value) for m, c in self.terms))

    def __str__(self) -> str:
        return _render(
            (c, "*".join(p for p in (_power("X", i), _power("Y", j), _power("Z", k)) if p))
            for (i, j, k), c in self.terms
        )


class PlaceKind(str, Enum):
    FINITE = "finite"
    INFINITY = "infinity"


@dataclass(frozen=True)
class PlaceCluster:
    """A Galois-stable set of places of P^1, or the place at infinity."""

    kind: PlaceKind
    defining_poly: UniPoly | None = None
    point_count: int = 1

    @classmethod
    def finite(cls, poly: UniPoly) -> PlaceCluster:
        if poly.degree < 1:
            raise ArithmeticDomainError("place needs a nonconstant defining polynomial")
        poly = poly.monic()
        if not poly.gcd(poly.derivative()).is_constant:
            raise ArithmeticDomainError(f"defining polynomial {poly} is not squarefree")
        return cls(PlaceKind.FINITE, poly, poly.degree)

    @classmethod
    def infinity(cls) -> PlaceCluster:
        return cls(PlaceKind.INFINITY, None, 1)

    @property
    def is_infinite(self) -> bool:
        return self.kind is PlaceKind.INFINITY

    def sort_key(self) -> tuple[int, Any]:
        if self.defining_poly is None:
            return (1, ())
        return (0, self.defining_poly.sort_key())

    @property
    def label(self) -> str:
        if self.defining_poly is None:
            return "inf"
        if self.defining_poly.degree == 1:
            return format_rational(-self.defining_poly.coefficient(0))
        return str(self.defining_poly)


# Elimination


def fraction_free_det(matrix: Any) -> Expr:
    """Determinant over the coefficient ring of the entries, by Bareiss elimination."""
    if matrix.rows == 0:
        return Rational(1)
    dm = DomainMatrix.from_Matrix(matrix)
    return dm.domain.to_sympy(dm.det())


def sylvester_resultant(f: Any, g: Any, var: Symbol) -> Expr:
    """Sylvester resultant of two polynomial expressions, f rows first."""
    deg_f = Poly(f, var).degree()
    deg_g = Poly(g, var).degree()
    if deg_f <= 0 and deg_g <= 0:
        raise ArithmeticDomainError("nothing to eliminate")
    return expand(fraction_free_det(sylvester(f, g, var)))


def poly_resultant(f: Sequence[UniPoly], g: Sequence[UniPoly]) -> UniPoly:
    """Resultant of f = sum f[i] x^i and g = sum g[i] x^i eliminating x."""
    f_expr = sum((c.to_expr() * ELIM**i for i, c in enumerate(f)), Rational(0))
    g_expr = sum((c.to_expr() * ELIM**i for i, c in enumerate(g)), Rational(0))
    if f_expr == 0 or g_expr == 0:
        raise ArithmeticDomainError("resultant of the zero polynomial")
    return UniPoly.from_expr(sylvester_resultant(f_expr, g_expr, ELIM))


# Factor refinement


def squarefree_decomposition(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: monic pairwise coprime squarefree factors with multiplicities."""
    if f.is_zero:
        raise ArithmeticDomainError("squarefree decomposition of zero")
    if f.is_constant:
        return []
    poly = f.to_poly().monic()
    derivative = poly.diff()
    common = poly.gcd(derivative)
    b = poly.exquo(common)
    d = derivative.exquo(common) - b.diff()
    factors: list[tuple[UniPoly, int]] = []
    multiplicity = 1
    while b.degree() > 0:
        a = b.gcd(d)
        b = b.exquo(a)
        d = d.exquo(a) - b.diff()
        if a.degree() > 0:
            factors.append((UniPoly.from_poly(a.monic()), multiplicity))
        multiplicity += 1
    return factors


def squarefree_part(f: UniPoly) -> UniPoly:
    result = ONE
    for factor, _ in squarefree_decomposition(f):
        result = result * factor
    return result


def poly_valuation(f: UniPoly, phi: UniPoly) -> int:
    if f.is_zero:
        raise ArithmeticDomainError("valuation of zero")
    if phi.degree < 1:
        raise ArithmeticDomainError("valuation needs a nonconstant place")
    count = 0
    current = f
    while True:
        quo, rem = divmod(current, phi)
        if not rem.is_zero:
            return count
        current = quo
        count += 1


def valuation(f: UniPoly, place: PlaceCluster) -> int:
    if place.is_infinite or place.defining_poly is None:
        raise ArithmeticDomainError("use model inversion")
    return poly_valuation(f, place.defining_poly)


def gcd_split(g: UniPoly, h: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Split g into the part where h vanishes and the rest."""
    if h.is_zero:
        return g, ONE
    g1 = g.gcd(h).monic()
    return g1, g.exquo(g1).monic()


def uniform_clusters(
    g: UniPoly, polys: Sequence[UniPoly]
) -> list[tuple[UniPoly, tuple[int | None, ...]]]:
    """Refine squarefree g until every piece has one valuation vector for polys."""
    pending = [g.monic()]
    done: list[tuple[UniPoly, tuple[int | None, ...]]] = []
    while pending:
        piece = pending.pop()
        if piece.is_constant:
            continue
        split = False
        for h in polys:
            if h.is_zero:
                continue
            rest = h
            while True:
                vanish, other = gcd_split(piece, rest)
                if vanish.is_constant:
                    break
                if other.is_constant:
                    rest = rest.exquo(piece)
                    continue
                pending.extend([vanish, other])
                split = True
                break
            if split:
                break
        if not split:
            done.append(
                (
                    piece,
                    tuple(None if h.is_zero else poly_valuation(h, piece) for h in polys),
                )
            )
    done.sort(key=lambda item: item[0].sort_key())
    return done


def rational_roots(f: UniPoly) -> list[Fraction]:
    """Rational roots with multiplicity, ascending."""
    if f.is_zero:
        raise ArithmeticDomainError("rational roots of zero")
    roots: list[Fraction] = []
    for factor, multiplicity in squarefree_decomposition(f):
        for root in _squarefree_rational_roots(factor):
            roots.extend([root] * multiplicity)
    return sorted(roots)


def _squarefree_rational_roots(phi: UniPoly) -> list[Fraction]:
    roots: list[Fraction] = []
    if phi(0) == 0:
        roots.append(Fraction(0))
        phi = phi.exquo(T_POLY)
    if phi.degree < 1:
        return roots
    _, integral = phi.to_poly().clear_denoms(convert=True)
    _, primitive = integral.primitive()
    lead = abs(int(primitive.LC()))
    # a root p/q of a primitive integer polynomial has q | lead
    eps = Rational(1, 2 * lead * lead)
    for (low, high), _ in primitive.intervals(eps=eps):
        middle = (to_fraction(low) + to_fraction(high)) / 2
        candidate = middle.limit_denominator(lead)
        if phi(candidate) == 0:
            roots.append(candidate)
    return roots
