"""
The Lie–Poisson bracket and the contracted family {,}_t of a splitting.

For g = h ⊕ r the family is {,}_t = {,}_0 + t·{,}_∞ with, on basis elements,

    {x, y}_0 = [x, y]      (x, y ∈ h)     {x, y}_∞ = 0           (x, y ∈ h)
             = [x, y]_r    (mixed)                 = [x, y]_h     (mixed)
             = 0           (x, y ∈ r)              = [x, y]       (x, y ∈ r)

t = ∞ is the bracket of r ⋉ h^ab itself, never a limit. Brackets of
polynomials go through the derivation rule against a memoized table of
linear forms {x_i, x_j}_t.
"""
import logging
from functools import lru_cache

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement

from liepoisson.errors import DimensionMismatchError, InvalidScalarError
from liepoisson.polyring import support
from liepoisson.rootdata import jacobi_violation
from models import INFINITY, ZERO, BracketParam, Constants, LieAlgebraData, PointOnDual, SkewPencil, Splitting

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Structure constants of the family
# ---------------------------------------------------------------------------

def contracted_constants(s: Splitting, end: str) -> Constants:
    """Constants of g_(0) = h ⋉ r^ab (end "0") or g_(∞) = r ⋉ h^ab (end "inf")."""
    g = s.algebra
    keep_side = "r" if end == "0" else "h"
    full_side = "h" if end == "0" else "r"
    out: Constants = {}
    for (i, j), row in g.constants.items():
        pi, pj = s.part_of(i), s.part_of(j)
        if pi == pj:
            if pi != full_side:
                continue
            kept = dict(row)
        else:
            kept = {k: c for k, c in row.items() if s.part_of(k) == keep_side}
        if kept:
            out[(i, j)] = kept
    return out


@lru_cache(maxsize=256)
def family_constants(s: Splitting, t: BracketParam) -> Constants:
    if t.is_infinite:
        return contracted_constants(s, "inf")
    c0 = contracted_constants(s, "0")
    if not t.value:
        return c0
    out: Constants = {key: dict(row) for key, row in c0.items()}
    for key, row in contracted_constants(s, "inf").items():
        target = out.setdefault(key, {})
        for k, c in row.items():
            value = target.get(k, QQ.zero) + t.value * c
            if value:
                target[k] = value
            else:
                target.pop(k, None)
        if not target:
            del out[key]
    return out


def family_jacobi(s: Splitting, t: BracketParam) -> tuple[int, int, int] | None:
    """First basis triple breaking the Jacobi identity of {,}_t, or None."""
    return jacobi_violation(family_constants(s, t), s.algebra.dim)


def conjugated_constants(s: Splitting, t: BracketParam) -> Constants:
    """Constants of φ_t^{-1}([φ_t x, φ_t y]), where φ_t scales r by t and fixes h."""
    if t.is_infinite or not t.value:
        raise InvalidScalarError("φ_t needs a finite nonzero t")

    def weight(i: int) -> int:
        return 1 if s.part_of(i) == "r" else 0

    out: Constants = {}
    for (i, j), row in s.algebra.constants.items():
        scaled = {}
        for k, c in row.items():
            power = weight(i) + weight(j) - weight(k)
            scaled[k] = c * t.value ** power if power >= 0 else c / t.value ** -power
        out[(i, j)] = scaled
    return out


def phi_conjugation_mismatches(s: Splitting, t: BracketParam) -> list[tuple[int, int]]:
    """Basis pairs where {x, y}_t differs from φ_t^{-1}([φ_t x, φ_t y])."""
    family = family_constants(s, t)
    conjugated = conjugated_constants(s, t)
    keys = set(family) | set(conjugated)
    return sorted(key for key in keys if family.get(key, {}) != conjugated.get(key, {}))


@lru_cache(maxsize=256)
def _linear_table(algebra: LieAlgebraData, s: Splitting | None, t: BracketParam | None):
    """{x_i, x_j} as linear forms in S(g)."""
    constants = algebra.constants if s is None else family_constants(s, t)
    ring = algebra.ring
    gens = ring.gens
    table = {}
    for key, row in constants.items():
        table[key] = sum((gens[k] * c for k, c in row.items()), ring.zero)
    logger.debug("Bracket table for %s at t=%s: %d entries", algebra.series, t, len(table))
    return table


# ---------------------------------------------------------------------------
# Brackets of polynomials
# ---------------------------------------------------------------------------

def _derive(p: PolyElement, q: PolyElement, table) -> PolyElement:
    ring = p.ring
    dq = [(j, q.diff(j)) for j in sorted(support(q))]
    result = ring.zero
    for i in sorted(support(p)):
        inner = ring.zero
        for j, qj in dq:
            linear = table.get((i, j))
            if linear is not None:
                inner += linear * qj
        if inner:
            result += p.diff(i) * inner
    return result


def _check_ring(algebra: LieAlgebraData, *polys: PolyElement) -> None:
    for p in polys:
        if p.ring is not algebra.ring:
            raise DimensionMismatchError(
                f"polynomial over {p.ring.ngens} variables used with an algebra of dim {algebra.dim}"
            )


def lie_poisson(p: PolyElement, q: PolyElement, g: LieAlgebraData) -> PolyElement:
    """{P, Q} = Σ ∂_i P ∂_j Q [x_i, x_j]."""
    _check_ring(g, p, q)
    return _derive(p, q, _linear_table(g, None, None))


def bracket_t(p: PolyElement, q: PolyElement, s: Splitting, t: BracketParam) -> PolyElement:
    _check_ring(s.algebra, p, q)
    return _derive(p, q, _linear_table(s.algebra, s, t))


# ---------------------------------------------------------------------------
# Poisson tensors
# ---------------------------------------------------------------------------

def _tensor(constants: Constants, n: int, point: PointOnDual) -> DomainMatrix:
    if point.dim != n:
        raise DimensionMismatchError(f"point of dim {point.dim} for an algebra of dim {n}")
    rows = [[QQ.zero] * n for _ in range(n)]
    for (i, j), row in constants.items():
        rows[i][j] = sum((c * point.coords[k] for k, c in row.items()), QQ.zero)
    return DomainMatrix(rows, (n, n), QQ)


def lie_tensor(g: LieAlgebraData, point: PointOnDual) -> DomainMatrix:
    """π(ξ) for the Lie–Poisson bracket of g."""
    return _tensor(g.constants, g.dim, point)


def tensor_at(s: Splitting, t: BracketParam, point: PointOnDual) -> DomainMatrix:
    """π_t(ξ)_ij = {x_i, x_j}_t(ξ)."""
    return _tensor(family_constants(s, t), s.algebra.dim, point)


def pencil_at(s: Splitting, point: PointOnDual) -> SkewPencil:
    """(π_0(ξ), π_∞(ξ)); π_t(ξ) = π_0(ξ) + t·π_∞(ξ)."""
    return SkewPencil(tensor_at(s, ZERO, point), tensor_at(s, INFINITY, point))


def contracted_point(s: Splitting, t: BracketParam, point: PointOnDual) -> PointOnDual:
    """ξ_h + t^{-1} ξ_r, so that rank π_t(ξ) = rank π_1(contracted_point)."""
    if t.is_infinite or not t.value:
        raise InvalidScalarError("the contraction identity needs a finite nonzero t")
    inverse = QQ.one / t.value
    return PointOnDual(tuple(
        c * inverse if s.part_of(i) == "r" else c for i, c in enumerate(point.coords)
    ))
