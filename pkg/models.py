"""
Domain records for the Lie–Poisson toolkit.

All records are immutable values:

  - algebras (LieAlgebraData) with their defining-representation matrices,
    exact structure constants and the trace form
  - splittings g = h ⊕ r and the bracket parameter t ∈ QQ ∪ {∞}
  - points of g*, invariant and generator sets
  - pencils of skew forms and their profiles
  - certificates, reports and the per-run configuration

Algebras and splittings compare by identity (they key the bracket caches);
the smaller records compare by value.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, NamedTuple

from sympy import Symbol
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from liepoisson.errors import NotSkewError

SCENARIOS = ("borel", "involution", "manin")
STATUSES = ("pass", "fail", "inconclusive")

# Structure constants: (i, j) -> {k: c_ij^k}, nonzero entries only.
Constants = dict[tuple[int, int], dict[int, Any]]


# ---------------------------------------------------------------------------
# Algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BasisElement:
    index: int
    label: str
    part: str | None = None  # "h" | "r" once a splitting is attached


@dataclass(frozen=True)
class SimpleFactor:
    """One simple factor together with its defining representation."""

    series: str
    rank: int
    size: int  # N, the matrix size
    form: DomainMatrix | None = None  # J with X^T J + J X = 0; None for sl_N

    @property
    def label(self) -> str:
        return f"{self.series}{self.rank}"


@dataclass(frozen=True, eq=False)
class LieAlgebraData:
    series: str
    rank: int
    labels: tuple[str, ...]
    constants: Constants
    form: tuple[tuple[Any, ...], ...]
    factors: tuple[SimpleFactor, ...]
    realization: tuple[tuple[DomainMatrix, ...], ...]  # per basis element, one matrix per factor
    realization_tag: str
    highest_root: tuple[int, ...] = ()
    positive_roots: tuple[tuple[int, ...], ...] = ()
    layout: dict[str, tuple[int, ...]] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def index(self) -> int:
        """ind g = rk g for the reductive algebras handled here."""
        return sum(f.rank for f in self.factors)

    @property
    def magic_number(self) -> int:
        return (self.dim + self.index) // 2

    @cached_property
    def ring(self) -> PolyRing:
        """S(g): polynomials in the basis coordinates, graded lex order."""
        return PolyRing([Symbol(label) for label in self.labels], QQ, grlex)

    @cached_property
    def form_matrix(self) -> DomainMatrix:
        return DomainMatrix([list(row) for row in self.form], (self.dim, self.dim), QQ)

    @cached_property
    def form_inverse(self) -> DomainMatrix:
        return self.form_matrix.inv()

    def bracket(self, i: int, j: int) -> dict[int, Any]:
        return self.constants.get((i, j), {})

    def dual_point(self, vector: list) -> PointOnDual:
        """Identify x ∈ g with ξ = form(x, ·) ∈ g*."""
        coords = []
        for j in range(self.dim):
            coords.append(sum((vector[i] * self.form[i][j] for i in range(self.dim) if vector[i]), QQ.zero))
        return PointOnDual(tuple(coords))


@dataclass(frozen=True, eq=False)
class Splitting:
    algebra: LieAlgebraData
    h_indices: tuple[int, ...]
    r_indices: tuple[int, ...]
    scenario: str

    @cached_property
    def r_set(self) -> frozenset[int]:
        return frozenset(self.r_indices)

    def part_of(self, index: int) -> str:
        return "r" if index in self.r_set else "h"

    @property
    def basis(self) -> tuple[BasisElement, ...]:
        return tuple(
            BasisElement(i, label, self.part_of(i)) for i, label in enumerate(self.algebra.labels)
        )


@dataclass(frozen=True)
class PointOnDual:
    coords: tuple[Any, ...]

    @property
    def dim(self) -> int:
        return len(self.coords)

    @classmethod
    def of(cls, values) -> PointOnDual:
        return cls(tuple(QQ.convert(v) for v in values))


@dataclass(frozen=True)
class PrincipalTriple:
    e: tuple[Any, ...]
    h: tuple[Any, ...]
    f: tuple[Any, ...]


# ---------------------------------------------------------------------------
# Brackets and polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BracketParam:
    """t ∈ QQ ∪ {∞}; value None stands for ∞."""

    value: Any = None

    @classmethod
    def of(cls, t) -> BracketParam:
        if isinstance(t, str):
            text = t.strip().lower()
            if text in ("inf", "infinity", "∞"):
                return cls(None)
            num, _, den = text.partition("/")
            return cls(QQ(int(num), int(den or 1)))
        return cls(QQ.convert(t))

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        if self.value is None:
            return "inf"
        q = self.value
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


ZERO = BracketParam(QQ.zero)
ONE = BracketParam(QQ.one)
INFINITY = BracketParam(None)


class BiDegree(NamedTuple):
    h: int
    r: int


@dataclass(frozen=True)
class InvariantSet:
    polys: tuple[PolyElement, ...]
    degrees: tuple[int, ...]
    labels: tuple[str, ...]
    factors: tuple[int, ...]    # which simple factor each invariant comes from
    positions: tuple[int, ...]  # j within that factor
    realization_tag: str

    def __len__(self) -> int:
        return len(self.polys)


@dataclass(frozen=True)
class GeneratorItem:
    poly: PolyElement
    tag: str
    label: str
    bidegree: BiDegree | None = None


@dataclass(frozen=True)
class GeneratorSet:
    items: tuple[GeneratorItem, ...]
    scenario: str
    role: str  # "pc" | "centre-0" | "centre-inf" | "witness"
    expected_count: int

    @property
    def polys(self) -> list[PolyElement]:
        return [item.poly for item in self.items]

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class ValidationCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[ValidationCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def get(self, name: str) -> ValidationCheck:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)


# ---------------------------------------------------------------------------
# Pencils
# ---------------------------------------------------------------------------

def is_skew(m: DomainMatrix) -> bool:
    rows, cols = m.shape
    return rows == cols and m.transpose() == -m


@dataclass(frozen=True, eq=False)
class SkewPencil:
    A: DomainMatrix
    B: DomainMatrix

    def __post_init__(self):
        if self.A.shape != self.B.shape:
            raise NotSkewError(f"pencil forms differ in shape: {self.A.shape} vs {self.B.shape}")
        if not (is_skew(self.A) and is_skew(self.B)):
            raise NotSkewError("pencil forms must both satisfy M^T = -M")

    @property
    def size(self) -> int:
        return self.A.shape[0]

    def member(self, t: BracketParam) -> DomainMatrix:
        if t.is_infinite:
            return self.B
        return self.A + self.B * QQ.convert(t.value)


@dataclass(frozen=True)
class SingularParameter:
    """A line of the pencil on which the rank drops.

    kind is "rational" (value set), "infinity", or "algebraic" (an
    irreducible factor of degree > 1; each root is one line).
    """

    kind: str
    value: Any = None
    minimal_polynomial: tuple[Any, ...] = ()
    rank: int | None = None

    @property
    def line_count(self) -> int:
        if self.kind == "algebraic":
            return len(self.minimal_polynomial) - 1
        return 1


@dataclass(frozen=True)
class PencilProfile:
    size: int
    generic_rank: int
    singular: tuple[SingularParameter, ...]
    proportional: bool
    kernel_sum_dim: int
    kernel_sum_basis: tuple[tuple[Any, ...], ...]
    jordan_line_count: int
    kronecker_block_count: int
    jordan_dimension: int
    jordan_line_check: dict[str, Any] | None = None

    @property
    def consistent(self) -> bool:
        m, n = self.generic_rank, self.size
        if m % 2 or self.jordan_dimension < 0 or self.jordan_dimension % 2:
            return False
        if self.proportional:
            return True
        return (self.jordan_dimension == 0) == (self.jordan_line_count == 0) and self.kronecker_block_count == n - m


# ---------------------------------------------------------------------------
# Certificates and reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Divisor:
    """D(α) = {ξ(h_α) = 0} for a positive root (kind "root", index into
    positive_roots) or D_i = {ξ(f_i) = 0} (kind "simple", i from 0)."""

    kind: str
    index: int


@dataclass(frozen=True)
class Certificate:
    name: str
    status: str
    witness: dict[str, Any]
    seed: int
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass(frozen=True)
class RunConfig:
    command: str
    series: str
    rank: int
    scenario: str | None = None
    seed: int = 42
    samples: int = 16
    bound: int = 20
    out: str | None = None


@dataclass(frozen=True)
class Report:
    config: RunConfig
    checks: tuple[Certificate, ...]
    realization: str = ""
    digests: dict[str, str] = field(default_factory=dict)  # sha256 of the documents checked

    @property
    def status(self) -> str:
        if any(c.status == "fail" for c in self.checks):
            return "fail"
        if any(c.status == "inconclusive" for c in self.checks):
            return "inconclusive"
        return "pass"

    def get(self, name: str) -> Certificate:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)
