"""
Text grammar for polynomials, Weierstrass equations, rationals and points
"""

import re
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from sympy import QQ, Expr, Poly, Rational, Symbol, expand

from resurf.core.exact_arith import T, X, Y, Z, HomogeneousPoly3, UniPoly, to_fraction
from resurf.core.exceptions import ArithmeticDomainError, ParseError, ValidationError

_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*/^()]))"
)

WEIERSTRASS_X = Symbol("x")
WEIERSTRASS_Y = Symbol("y")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN.match(text, position)
        if match is None:
            offset = len(text[position:]) - len(text[position:].lstrip())
            raise ParseError(
                f"Unexpected character {text[position + offset]!r}",
                text,
                position + offset,
            )
        kind = match.lastgroup or "op"
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive descent over +, -, *, ^, parentheses and rational literals."""

    def __init__(self, text: str, variables: dict[str, Symbol]):
        self.text = text
        self.variables = variables
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _fail(self, message: str, token: Token | None = None) -> ParseError:
        token = token or self.current
        return ParseError(message, self.text, token.position)

    def _advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def _accept(self, *ops: str) -> Token | None:
        if self.current.kind == "op" and self.current.text in ops:
            return self._advance()
        return None

    def parse(self) -> Expr:
        if self.current.kind == "end":
            raise self._fail("Empty expression")
        expr = self._expression()
        if self.current.kind != "end":
            raise self._fail(f"Unexpected token {self.current.text!r}")
        return expand(expr)

    def _expression(self) -> Expr:
        expr = self._term()
        while True:
            if self._accept("+"):
                expr = expr + self._term()
            elif self._accept("-"):
                expr = expr - self._term()
            else:
                return expr

    def _term(self) -> Expr:
        expr = self._unary()
        while self._accept("*"):
            expr = expr * self._unary()
        return expr

    def _unary(self) -> Expr:
        if self._accept("-"):
            return -self._unary()
        if self._accept("+"):
            return self._unary()
        return self._power()

    def _power(self) -> Expr:
        base = self._atom()
        if self._accept("^", "**"):
            token = self.current
            if token.kind != "number":
                raise self._fail("Exponent must be a non-negative integer")
            self._advance()
            return base ** int(token.text)
        return base

    def _atom(self) -> Expr:
        token = self.current
        if token.kind == "number":
            self._advance()
            value = Rational(int(token.text))
            if self._accept("/"):
                denominator = self.current
                if denominator.kind != "number" or int(denominator.text) == 0:
                    raise self._fail("Expected a nonzero integer denominator")
                self._advance()
                value = Rational(int(token.text), int(denominator.text))
            return value
        if token.kind == "name":
            if token.text not in self.variables:
                allowed = ", ".join(sorted(self.variables)) or "none"
                raise self._fail(
                    f"Unknown variable {token.text!r} (allowed: {allowed})"
                )
            self._advance()
            return self.variables[token.text]
        if self._accept("("):
            expr = self._expression()
            if not self._accept(")"):
                raise self._fail("Expected ')'")
            return expr
        if token.kind == "end":
            raise self._fail("Unexpected end of input")
        raise self._fail(f"Unexpected token {token.text!r}")


def parse_polynomial(text: str, variables: Sequence[Symbol]) -> Expr:
    """Parse a polynomial over Q in the given variables."""
    return _Parser(text, {str(v): v for v in variables}).parse()


def parse_univariate(text: str) -> UniPoly:
    return UniPoly.from_expr(parse_polynomial(text, [T]))


def parse_ternary(text: str, degree: int | None = None) -> HomogeneousPoly3:
    expr = parse_polynomial(text, [X, Y, Z])
    if expr == 0:
        raise ParseError("Zero polynomial", text, 0)
    try:
        form = HomogeneousPoly3.from_poly(Poly(expr, X, Y, Z, domain=QQ))
    except ArithmeticDomainError as e:
        raise ParseError(f"Not a form in X, Y, Z: {str(e)}", text, 0) from e
    if degree is not None and form.degree != degree:
        raise ValidationError(f"Expected a form of degree {degree}, got {form.degree}")
    return form


def parse_weierstrass(text: str) -> tuple[UniPoly, UniPoly, UniPoly, UniPoly, UniPoly]:
    """Parse y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6 into (a1, a2, a3, a4, a6)."""
    if text.count("=") != 1:
        raise ParseError("Expected exactly one '='", text, text.find("=") + 1)
    split = text.index("=")
    variables = [WEIERSTRASS_X, WEIERSTRASS_Y, T]
    lhs = parse_polynomial(text[:split], variables)
    try:
        rhs = _Parser(text[split + 1 :], {str(v): v for v in variables}).parse()
    except ParseError as e:
        raise ParseError(
            e.message.split(" at position")[0], text, split + 1 + e.position
        ) from e
    poly = Poly(expand(lhs - rhs), WEIERSTRASS_X, WEIERSTRASS_Y)
    coefficients = {m: c for m, c in poly.terms()}
    lead = coefficients.pop((0, 2), 0)
    cube = coefficients.pop((3, 0), 0)
    if lead == 0 or not lead.is_Rational or cube != -lead:
        raise ParseError("Not in long Weierstrass form (y^2 = x^3 + ...)", text, 0)
    shape = {(1, 1): "a1", (0, 1): "a3", (2, 0): "a2", (1, 0): "a4", (0, 0): "a6"}
    for monomial in coefficients:
        if monomial not in shape:
            i, j = monomial
            raise ParseError(
                f"Monomial x^{i}*y^{j} not allowed in long Weierstrass form", text, 0
            )
    scale = Rational(1) / lead

    def part(monomial: tuple[int, int], sign: int) -> UniPoly:
        return UniPoly.from_expr(sign * scale * coefficients.get(monomial, 0))

    return (
        part((1, 1), 1),
        part((2, 0), -1),
        part((0, 1), 1),
        part((1, 0), -1),
        part((0, 0), -1),
    )


def parse_rational(text: str) -> Fraction:
    expr = _Parser(text, {}).parse()
    if not expr.is_Rational:
        raise ParseError("Expected a rational number", text, 0)
    return to_fraction(expr)


def parse_point(text: str) -> tuple[Fraction, Fraction, Fraction]:
    """Parse a projective point written as 'a,b,c' or '[a:b:c]'."""
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    parts = re.split(r"[,:]", body)
    if len(parts) != 3:
        raise ParseError("Expected three coordinates", text, 0)
    coords = tuple(parse_rational(part) for part in parts)
    if all(c == 0 for c in coords):
        raise ValidationError("The point [0:0:0] is not projective")
    return coords  # type: ignore[return-value]
