"""
Weierstrass models over Q(t): singular fibers, Shioda-Tate rank, Mordell-Weil type
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import NamedTuple

import structlog
from pydantic import BaseModel, Field, TypeAdapter, field_validator, model_validator

from resurf.core.exact_arith import (
    ONE,
    PlaceCluster,
    UniPoly,
    format_rational,
    squarefree_part,
    uniform_clusters,
)
from resurf.core.exceptions import (
    InconsistentSurfaceError,
    NotEllipticError,
    NotRealizableError,
)
from resurf.core.parsing import parse_weierstrass
from resurf.services.lattices import AbelianGroupDescriptor, RootLatticeId

logger = structlog.get_logger()

CHI = 1
RHO = 10
WEIGHTS = (1, 2, 3, 4, 6)


def _wrap(p: UniPoly) -> str:
    text = str(p)
    return f"({text})" if len(p.coeffs) - p.coeffs.count(Fraction(0)) > 1 else text


def _term(coeff: UniPoly, monomial: str) -> str | None:
    if coeff.is_zero:
        return None
    if coeff == ONE:
        return monomial
    if coeff == -ONE:
        return f"-{monomial}"
    return f"{_wrap(coeff)}*{monomial}"


@dataclass(frozen=True)
class WeierstrassModel:
    """y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q[t]."""

    a1: UniPoly
    a2: UniPoly
    a3: UniPoly
    a4: UniPoly
    a6: UniPoly

    def __post_init__(self) -> None:
        for weight, coeff in zip(WEIGHTS, self.coefficients, strict=True):
            if coeff.degree > weight:
                raise InconsistentSurfaceError(
                    f"deg a{weight} = {coeff.degree} exceeds {weight}",
                    error_code="degree_bound",
                )
        if curve_invariants_of(self.coefficients).delta.is_zero:
            raise NotEllipticError("not an elliptic fibration: discriminant is zero")
        if all(coeff.is_constant for coeff in self.coefficients):
            raise InconsistentSurfaceError(
                "constant model is not a rational elliptic surface",
                error_code="constant_model",
            )

    @classmethod
    def short(cls, a4: UniPoly, a6: UniPoly) -> WeierstrassModel:
        zero = UniPoly()
        return cls(zero, zero, zero, a4, a6)

    @classmethod
    def parse(cls, text: str) -> WeierstrassModel:
        return cls(*parse_weierstrass(text))

    @property
    def coefficients(self) -> tuple[UniPoly, UniPoly, UniPoly, UniPoly, UniPoly]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def is_short(self) -> bool:
        return self.a1.is_zero and self.a2.is_zero and self.a3.is_zero

    def inverted_coefficients(self) -> tuple[UniPoly, ...]:
        """Coefficients in the chart s = 1/t after (x, y) -> (x/s^2, y/s^3)."""
        return tuple(
            coeff.inverted(weight)
            for weight, coeff in zip(WEIGHTS, self.coefficients, strict=True)
        )

    def __str__(self) -> str:
        left = ["y^2", _term(self.a1, "x*y"), _term(self.a3, "y")]
        right = [
            "x^3",
            _term(self.a2, "x^2"),
            _term(self.a4, "x"),
            None if self.a6.is_zero else str(self.a6),
        ]

        def side(parts: list[str | None]) -> str:
            out = ""
            for part in parts:
                if part is None:
                    continue
                if not out:
                    out = part
                elif part.startswith("-"):
                    out += f" - {part[1:]}"
                else:
                    out += f" + {part}"
            return out

        return f"{side(left)} = {side(right)}"


@dataclass(frozen=True)
class CurveInvariants:
    b2: UniPoly
    b4: UniPoly
    b6: UniPoly
    b8: UniPoly
    c4: UniPoly
    c6: UniPoly
    delta: UniPoly


def curve_invariants_of(coefficients: tuple[UniPoly, ...]) -> CurveInvariants:
    a1, a2, a3, a4, a6 = coefficients
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    delta = -(b2 * b2 * b8) - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return CurveInvariants(b2, b4, b6, b8, c4, c6, delta)


def curve_invariants(m: WeierstrassModel) -> tuple[UniPoly, UniPoly, UniPoly]:
    invariants = curve_invariants_of(m.coefficients)
    if invariants.delta.is_zero:
        raise NotEllipticError("not an elliptic fibration: discriminant is zero")
    return invariants.c4, invariants.c6, invariants.delta


class ValuationSignature(NamedTuple):
    """Valuations of (c4, c6, delta); None stands for the zero polynomial."""

    c4: int | None
    c6: int | None
    delta: int


def place_clusters(m: WeierstrassModel) -> list[tuple[PlaceCluster, ValuationSignature]]:
    c4, c6, delta = curve_invariants(m)
    clusters: list[tuple[PlaceCluster, ValuationSignature]] = []
    finite = squarefree_part(delta)
    if not finite.is_constant:
        for piece, (v4, v6, vd) in uniform_clusters(finite, [c4, c6, delta]):
            clusters.append(
                (PlaceCluster.finite(piece), ValuationSignature(v4, v6, vd or 0))
            )
    # weighted homogeneity: the s-chart invariants are inversions of weight 4, 6, 12
    c4_inf, c6_inf, delta_inf = c4.inverted(4), c6.inverted(6), delta.inverted(12)

    signature = ValuationSignature(
        None if c4_inf.is_zero else _order_at_zero(c4_inf),
        None if c6_inf.is_zero else _order_at_zero(c6_inf),
        _order_at_zero(delta_inf),
    )
    if signature.delta > 0:
        clusters.append((PlaceCluster.infinity(), signature))
    logger.debug(
        "Place clusters computed",
        finite=len(clusters) - (1 if signature.delta > 0 else 0),
        infinity=signature.delta > 0,
    )
    return clusters


def _order_at_zero(p: UniPoly) -> int:
    for index, coeff in enumerate(p.coeffs):
        if coeff != 0:
            return index
    raise InconsistentSurfaceError("valuation of the zero polynomial")


class FiberKind(str, Enum):
    I_N = "I"
    II = "II"
    III = "III"
    IV = "IV"
    I_N_STAR = "I*"
    IV_STAR = "IV*"
    III_STAR = "III*"
    II_STAR = "II*"


@dataclass(frozen=True)
class KodairaFiber:
    kind: FiberKind
    n: int = 0
    euler: int = 0
    components: int = 1
    t_lattice: RootLatticeId | None = None
    contributions: dict[int, Fraction] = field(default_factory=dict, compare=False)

    @property
    def symbol(self) -> str:
        if self.kind is FiberKind.I_N:
            return f"I{self.n}"
        if self.kind is FiberKind.I_N_STAR:
            return f"I{self.n}*"
        return self.kind.value

    @property
    def is_multiplicative(self) -> bool:
        return self.kind is FiberKind.I_N and self.n > 0

    @property
    def is_reducible(self) -> bool:
        return self.components > 1

    def __str__(self) -> str:
        return self.symbol


def kodaira_fiber(kind: FiberKind, n: int = 0) -> KodairaFiber:
    """Row of the Kodaira table: Euler number, components, T_v and far contributions."""
    if kind is FiberKind.I_N:
        return KodairaFiber(
            kind,
            n,
            euler=n,
            components=max(n, 1),
            t_lattice=RootLatticeId("A", n - 1) if n >= 2 else None,
            contributions={i: Fraction(i * (n - i), n) for i in range(1, n)},
        )
    if kind is FiberKind.I_N_STAR:
        far = 1 + Fraction(n, 4)
        return KodairaFiber(
            kind,
            n,
            euler=n + 6,
            components=n + 5,
            t_lattice=RootLatticeId("D", n + 4),
            contributions={1: Fraction(1), 2: far, 3: far},
        )
    rows: dict[FiberKind, tuple[int, int, RootLatticeId | None, dict[int, Fraction]]] = {
        FiberKind.II: (2, 1, None, {}),
        FiberKind.III: (3, 2, RootLatticeId("A", 1), {1: Fraction(1, 2)}),
        FiberKind.IV: (4, 3, RootLatticeId("A", 2), {1: Fraction(2, 3), 2: Fraction(2, 3)}),
        FiberKind.IV_STAR: (8, 7, RootLatticeId("E", 6), {1: Fraction(4, 3), 2: Fraction(4, 3)}),
        FiberKind.III_STAR: (9, 8, RootLatticeId("E", 7), {1: Fraction(3, 2)}),
        FiberKind.II_STAR: (10, 9, RootLatticeId("E", 8), {}),
    }
    euler, components, lattice, contributions = rows[kind]
    return KodairaFiber(kind, 0, euler, components, lattice, contributions)


def _at_least(value: int | None, bound: int) -> bool:
    return value is None or value >= bound


def kodaira_classify(signature: ValuationSignature) -> KodairaFiber:
    v4, v6, vd = signature
    while _at_least(v4, 4) and _at_least(v6, 6) and vd >= 12:
        v4 = None if v4 is None else v4 - 4
        v6 = None if v6 is None else v6 - 6
        vd -= 12
        logger.debug("Non-minimal place reduced", signature=(v4, v6, vd))
    if vd == 0:
        return kodaira_fiber(FiberKind.I_N, 0)
    if v4 == 0:
        return kodaira_fiber(FiberKind.I_N, vd)
    if v4 == 2 and vd >= 7:
        return kodaira_fiber(FiberKind.I_N_STAR, vd - 6)
    if vd == 2:
        return kodaira_fiber(FiberKind.II)
    if vd == 3:
        return kodaira_fiber(FiberKind.III)
    if vd == 4:
        return kodaira_fiber(FiberKind.IV)
    if vd == 6 and _at_least(v4, 2):
        return kodaira_fiber(FiberKind.I_N_STAR, 0)
    if vd == 8 and _at_least(v4, 3):
        return kodaira_fiber(FiberKind.IV_STAR)
    if vd == 9 and _at_least(v4, 3):
        return kodaira_fiber(FiberKind.III_STAR)
    if vd == 10 and _at_least(v4, 4):
        return kodaira_fiber(FiberKind.II_STAR)
    raise InconsistentSurfaceError(
        "inconsistent valuations",
        error_code="inconsistent_valuations",
        details={"signature": list(signature)},
    )


@dataclass(frozen=True)
class FiberEntry:
    place: PlaceCluster
    signature: ValuationSignature
    fiber: KodairaFiber

    @property
    def count(self) -> int:
        return self.place.point_count


@dataclass(frozen=True)
class FiberConfiguration:
    model: WeierstrassModel
    fibers: tuple[FiberEntry, ...]
    chi: int = CHI
    rho: int = RHO

    @property
    def euler_total(self) -> int:
        return sum(entry.count * entry.fiber.euler for entry in self.fibers)

    @property
    def reducible(self) -> tuple[FiberEntry, ...]:
        return tuple(entry for entry in self.fibers if entry.fiber.is_reducible)

    def entry_at(self, place: PlaceCluster) -> FiberEntry | None:
        for entry in self.fibers:
            if entry.place == place:
                return entry
        return None


def fiber_configuration(m: WeierstrassModel) -> FiberConfiguration:
    entries: list[FiberEntry] = []
    for place, signature in place_clusters(m):
        fiber = kodaira_classify(signature)
        if fiber.euler == 0:
            continue
        entries.append(FiberEntry(place, signature, fiber))
    cfg = FiberConfiguration(m, tuple(entries))
    if cfg.euler_total != 12 * cfg.chi:
        raise InconsistentSurfaceError(
            "not a rational elliptic surface under chi=1 assumptions: "
            f"Euler sum {cfg.euler_total}",
            error_code="euler_sum",
            details={"euler_total": cfg.euler_total},
        )
    logger.debug(
        "Fiber configuration",
        fibers=[f"{e.fiber}@{e.place.label}" for e in entries],
    )
    return cfg


def shioda_tate_rank(cfg: FiberConfiguration) -> int:
    rank = cfg.rho - 2 - sum(
        entry.count * (entry.fiber.components - 1) for entry in cfg.fibers
    )
    if rank < 0:
        raise InconsistentSurfaceError(
            "inconsistent configuration: negative rank", details={"rank": rank}
        )
    return rank


def trivial_lattice(cfg: FiberConfiguration) -> list[RootLatticeId]:
    lattices = [
        entry.fiber.t_lattice
        for entry in cfg.fibers
        for _ in range(entry.count)
        if entry.fiber.t_lattice is not None
    ]
    return sorted(lattices, key=RootLatticeId.sort_key)


def lattice_key(lattices: list[RootLatticeId]) -> str:
    """Canonical symbol of a trivial lattice, e.g. 'E6+A1'; '0' when empty."""
    ordered = sorted(lattices, key=RootLatticeId.sort_key)
    return "+".join(lattice.symbol for lattice in ordered) or "0"


def _key_rank(key: str) -> int:
    if key == "0":
        return 0
    return sum(RootLatticeId.parse(symbol).rank for symbol in key.split("+"))


class ClassificationRow(BaseModel):
    """One row of the Mordell-Weil classification of rational elliptic surfaces."""

    trivial_lattice: str = Field(..., description="Canonical trivial lattice symbol")
    lattice: str = Field(..., description="Mordell-Weil lattice modulo torsion")
    lattice_det: str = Field(..., description="Determinant of the lattice part")
    rank: int = Field(..., ge=0, le=8, description="Mordell-Weil rank")
    torsion: list[int] = Field(default_factory=list, description="Invariant factors")

    @field_validator("trivial_lattice")
    @classmethod
    def validate_key(cls, v: str) -> str:
        if v != "0":
            lattices = [RootLatticeId.parse(symbol) for symbol in v.split("+")]
            if lattice_key(lattices) != v:
                raise ValueError(f"non-canonical trivial lattice symbol {v!r}")
        return v

    @model_validator(mode="after")
    def validate_rank(self) -> ClassificationRow:
        if self.rank + _key_rank(self.trivial_lattice) != 8:
            raise ValueError(f"rank mismatch for {self.trivial_lattice}")
        return self


@dataclass(frozen=True)
class MWGroupDescriptor:
    lattice_part: str
    torsion_part: AbelianGroupDescriptor
    rank: int
    lattice_det: Fraction = Fraction(1)

    def __str__(self) -> str:
        if self.torsion_part.is_trivial:
            return self.lattice_part
        if self.lattice_part == "0":
            return str(self.torsion_part)
        return f"{self.lattice_part} + {self.torsion_part}"

    def to_json(self) -> dict[str, object]:
        return {
            "lattice": self.lattice_part,
            "torsion": str(self.torsion_part),
            "rank": self.rank,
            "lattice_det": format_rational(self.lattice_det),
        }


@lru_cache(maxsize=1)
def classification_table() -> dict[str, ClassificationRow]:
    raw = resources.files("resurf.data").joinpath("oguiso_shioda.json").read_text()
    rows = TypeAdapter(list[ClassificationRow]).validate_python(json.loads(raw))
    return {row.trivial_lattice: row for row in rows}


def identify_mw(lattices: list[RootLatticeId]) -> MWGroupDescriptor:
    if sum(lattice.rank for lattice in lattices) > 8:
        raise NotRealizableError("trivial lattice of rank > 8 does not embed in E8")
    key = lattice_key(lattices)
    row = classification_table().get(key)
    if row is None:
        logger.warning("Trivial lattice missing from classification table", key=key)
        raise NotRealizableError(
            "not realizable on a rational elliptic surface",
            error_code="table_miss",
            details={"trivial_lattice": key},
        )
    return MWGroupDescriptor(
        row.lattice,
        AbelianGroupDescriptor(tuple(row.torsion)),
        row.rank,
        Fraction(row.lattice_det),
    )
