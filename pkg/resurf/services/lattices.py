"""
Root lattices, dual lattices and exact short vector enumeration
"""

from __future__ import annotations

import math
import re
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import structlog
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_form

from resurf.core.exact_arith import Scalar, format_rational, to_fraction, to_rational
from resurf.core.exceptions import ValidationError

logger = structlog.get_logger()

_FAMILY_ORDER = {"E": 0, "D": 1, "A": 2}
_LATTICE_ID = re.compile(r"^(?P<family>[ADE])(?P<rank>\d+)(?P<dual>v?)$")


@dataclass(frozen=True)
class RootLatticeId:
    family: str
    rank: int
    dual: bool = False

    def __post_init__(self) -> None:
        if self.family == "A" and self.rank >= 1:
            return
        if self.family == "D" and self.rank >= 4:
            return
        if self.family == "E" and self.rank in (6, 7, 8):
            return
        raise ValidationError(f"invalid root lattice {self.family}{self.rank}")

    @classmethod
    def parse(cls, text: str) -> RootLatticeId:
        match = _LATTICE_ID.match(text.strip())
        if match is None:
            raise ValidationError(f"unknown lattice id {text!r}")
        return cls(match["family"], int(match["rank"]), bool(match["dual"]))

    @property
    def symbol(self) -> str:
        return f"{self.family}{self.rank}{'v' if self.dual else ''}"

    @property
    def root(self) -> RootLatticeId:
        return RootLatticeId(self.family, self.rank)

    def sort_key(self) -> tuple[int, int, bool]:
        return (_FAMILY_ORDER[self.family], -self.rank, self.dual)

    def __str__(self) -> str:
        return self.symbol


class Basis(str, Enum):
    ALPHA = "alpha"
    BETA = "beta"


def _cholesky(entries: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Rational decomposition Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2."""
    n = len(entries)
    q = [[Fraction(v) for v in row] for row in entries]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValidationError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for m in range(k, n):
                q[k][m] -= q[k][i] * q[i][m]
    return q


@dataclass(frozen=True)
class GramMatrix:
    entries: tuple[tuple[Fraction, ...], ...]
    basis: Basis = Basis.ALPHA

    def __post_init__(self) -> None:
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.entries)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise ValidationError("Gram matrix must be square and nonempty")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValidationError("Gram matrix must be symmetric")
        _cholesky(rows)
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], basis: Basis = Basis.ALPHA) -> GramMatrix:
        return cls(tuple(tuple(Fraction(v) for v in row) for row in rows), basis)

    @property
    def rank(self) -> int:
        return len(self.entries)

    @property
    def is_integral(self) -> bool:
        return all(v.denominator == 1 for row in self.entries for v in row)

    def to_matrix(self) -> Matrix:
        return Matrix([[to_rational(v) for v in row] for row in self.entries])

    def to_json(self) -> list[list[str]]:
        return [[format_rational(v) for v in row] for row in self.entries]


@dataclass(frozen=True)
class LatticeVector:
    coords: tuple[Fraction, ...]
    basis: Basis = Basis.ALPHA

    @classmethod
    def of(cls, values: Sequence[Scalar], basis: Basis = Basis.ALPHA) -> LatticeVector:
        return cls(tuple(Fraction(v) for v in values), basis)

    def to_json(self) -> list[str]:
        return [format_rational(v) for v in self.coords]


@dataclass(frozen=True)
class AbelianGroupDescriptor:
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        factors = self.invariant_factors
        if any(d < 2 for d in factors):
            raise ValidationError("invariant factors must be at least 2")
        if any(factors[i + 1] % factors[i] for i in range(len(factors) - 1)):
            raise ValidationError("invariant factors must divide each other")

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __str__(self) -> str:
        if self.is_trivial:
            return "0"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


def _dynkin_edges(lattice: RootLatticeId) -> list[tuple[int, int]]:
    n = lattice.rank
    if lattice.family == "A":
        return [(i, i + 1) for i in range(n - 1)]
    if lattice.family == "D":
        # path 1..n-1, node n on node n-2
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    # chain 1..r-1, node r on node 3
    return [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]


def root_gram(lattice: RootLatticeId) -> GramMatrix:
    n = lattice.rank
    rows = [[Fraction(2 if i == j else 0) for j in range(n)] for i in range(n)]
    for i, j in _dynkin_edges(lattice.root):
        rows[i][j] = rows[j][i] = Fraction(-1)
    return GramMatrix.from_rows(rows)


def dual_gram(g: GramMatrix) -> GramMatrix:
    matrix = g.to_matrix()
    if matrix.det(method="bareiss") == 0:
        raise ValidationError("singular Gram matrix has no dual")
    inverse = matrix.inv()
    basis = Basis.BETA if g.basis is Basis.ALPHA else Basis.ALPHA
    return GramMatrix.from_rows(
        [[to_fraction(inverse[i, j]) for j in range(g.rank)] for i in range(g.rank)],
        basis,
    )


def lattice_gram(lattice: RootLatticeId) -> GramMatrix:
    gram = root_gram(lattice)
    return dual_gram(gram) if lattice.dual else gram


def determinant(g: GramMatrix) -> Fraction:
    return to_fraction(g.to_matrix().det(method="bareiss"))


def discriminant_group(g: GramMatrix) -> AbelianGroupDescriptor:
    if not g.is_integral:
        raise ValidationError("discriminant group needs an integral Gram matrix")
    snf = smith_normal_form(g.to_matrix(), domain=ZZ)
    diagonal = sorted(abs(int(snf[i, i])) for i in range(g.rank))
    return AbelianGroupDescriptor(tuple(d for d in diagonal if d != 1))


def pairing(u: LatticeVector, v: LatticeVector, g: GramMatrix) -> Fraction:
    if u.basis is not g.basis or v.basis is not g.basis:
        raise ValidationError("vectors and Gram matrix use different bases")
    if len(u.coords) != g.rank or len(v.coords) != g.rank:
        raise ValidationError("dimension mismatch")
    return sum(
        (u.coords[i] * g.entries[i][j] * v.coords[j]
         for i in range(g.rank) for j in range(g.rank)),
        Fraction(0),
    )


def basis_change_to_dual(v: LatticeVector, g: GramMatrix) -> LatticeVector:
    """Coordinates of a root-basis vector in the dual basis: G^T c."""
    if v.basis is not Basis.ALPHA or g.basis is not Basis.ALPHA:
        raise ValidationError("expected a root-basis vector and a root Gram matrix")
    if len(v.coords) != g.rank:
        raise ValidationError(
            f"dimension mismatch: vector of length {len(v.coords)}, rank {g.rank}"
        )
    return LatticeVector(
        tuple(
            sum((g.entries[j][i] * v.coords[j] for j in range(g.rank)), Fraction(0))
            for i in range(g.rank)
        ),
        Basis.BETA,
    )


def _in_coset(coords: Sequence[int], coset: LatticeVector, g: GramMatrix) -> bool:
    # in the dual basis g = G^-1 turns beta coordinates into root coordinates
    delta = [Fraction(c) - r for c, r in zip(coords, coset.coords, strict=True)]
    return all(
        sum((row[j] * delta[j] for j in range(g.rank)), Fraction(0)).denominator == 1
        for row in g.entries
    )


def minimal_vectors(
    g: GramMatrix, norm: Scalar, coset: LatticeVector | None = None
) -> list[LatticeVector]:
    """All integral x with x^T g x = norm, by exact Fincke-Pohst enumeration."""
    norm = Fraction(norm)
    if norm <= 0:
        raise ValidationError("norm must be positive")
    if coset is not None and (coset.basis is not Basis.BETA or g.basis is not Basis.BETA):
        raise ValidationError("coset filtering needs a dual-basis Gram matrix")
    n = g.rank
    order = sorted(range(n), key=lambda i: (-g.entries[i][i], i))
    q = _cholesky([[g.entries[order[i]][order[j]] for j in range(n)] for i in range(n)])
    x = [0] * n
    found: list[tuple[int, ...]] = []

    def descend(i: int, remaining: Fraction) -> None:
        centre = -sum((q[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        reach = math.isqrt(math.floor(remaining / q[i][i])) + 1
        for value in range(math.floor(centre) - reach, math.ceil(centre) + reach + 1):
            used = q[i][i] * (value - centre) ** 2
            if used > remaining:
                continue
            x[i] = value
            if i == 0:
                if used == remaining:
                    found.append(tuple(x))
            else:
                descend(i - 1, remaining - used)
        x[i] = 0

    descend(n - 1, norm)
    vectors: list[tuple[int, ...]] = []
    for permuted in found:
        coords = [0] * n
        for i, value in enumerate(permuted):
            coords[order[i]] = value
        if coset is None or _in_coset(coords, coset, g):
            vectors.append(tuple(coords))
    vectors.sort()
    logger.debug("Short vectors enumerated", rank=n, norm=str(norm), count=len(vectors))
    return [LatticeVector.of(v, g.basis) for v in vectors]
