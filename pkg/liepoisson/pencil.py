"""
Exact linear algebra for pencils of skew forms A + tB, t ∈ QQ ∪ {∞}.

Only the Jordan–Kronecker profile is computed, never a canonical basis:

  generic rank m      max rank over n + 1 distinct finite parameters
  singular lines      roots of the gcd of principal m×m minors of A + tB,
                      taken over QQ[t] with fraction-free determinants;
                      ∞ when rank B < m
  kernel sum L        span of ker(A + tB) over sampled regular t, checked
                      for stabilization with one extra sample

Kronecker blocks keep their rank along the whole pencil, so n - m counts
them; the Jordan blocks account for 2n - m - 2·dim L of the dimension.
"""
import logging
import random
from itertools import combinations

from sympy import Symbol
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from liepoisson.errors import NotSkewError, SamplingError
from liepoisson.sampling import integer_parameters
from models import INFINITY, BracketParam, PencilProfile, SingularParameter, SkewPencil, is_skew

logger = logging.getLogger(__name__)

PARAMETER = Symbol("t")
PARAMETER_DOMAIN = QQ[PARAMETER]


# ---------------------------------------------------------------------------
# Single forms
# ---------------------------------------------------------------------------

def rank_and_kernel(m: DomainMatrix) -> tuple[int, list[tuple]]:
    """(rank, kernel basis) of a skew matrix; kernel vectors as tuples."""
    if not is_skew(m):
        raise NotSkewError("rank_and_kernel expects a skew-symmetric matrix")
    rank = m.rank()
    kernel = [tuple(row) for row in m.nullspace().to_list()]
    return rank, kernel


def row_basis(vectors, n: int) -> list[tuple]:
    """Reduced echelon basis of the span of the given vectors."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return []
    reduced, pivots = DomainMatrix(vectors, (len(vectors), n), QQ).rref()
    return [tuple(row) for row in reduced.to_list()[:len(pivots)]]


def _is_zero(p: SkewPencil) -> bool:
    return p.A.is_zero_matrix and p.B.is_zero_matrix


def is_proportional(p: SkewPencil) -> bool:
    """True when A and B span at most a line of forms."""
    n = p.size
    rows = [[v for row in p.A.to_list() for v in row], [v for row in p.B.to_list() for v in row]]
    return DomainMatrix(rows, (2, n * n), QQ).rank() <= 1


# ---------------------------------------------------------------------------
# Generic rank and regular parameters
# ---------------------------------------------------------------------------

def generic_rank(p: SkewPencil) -> int:
    """Rank of A + tB over QQ(t).

    Some m×m minor is a nonzero polynomial of degree at most m in t, so at
    most m finite parameters fall below the generic rank and n + 1 distinct
    samples always hit a regular one.
    """
    return max(p.member(BracketParam(QQ(k))).rank() for k in range(p.size + 1))


def regular_parameters(p: SkewPencil, m: int, count: int, rng: random.Random) -> list[BracketParam]:
    """count distinct integer parameters t with rank(A + tB) = m, in seeded order."""
    found = []
    for k in integer_parameters(rng, p.size + count + 1):
        t = BracketParam(QQ(k))
        if p.member(t).rank() == m:
            found.append(t)
            if len(found) == count:
                return found
    raise SamplingError(f"only {len(found)} of {count} regular parameters available")


# ---------------------------------------------------------------------------
# Singular parameters
# ---------------------------------------------------------------------------

def parameter_matrix(p: SkewPencil) -> DomainMatrix:
    """A + tB as a matrix over QQ[t]."""
    ring = PARAMETER_DOMAIN.ring
    t = ring.gens[0]
    rows = [
        [ring.ground_new(a) + t * b for a, b in zip(row_a, row_b)]
        for row_a, row_b in zip(p.A.to_list(), p.B.to_list())
    ]
    n = p.size
    return DomainMatrix(rows, (n, n), PARAMETER_DOMAIN)


def _nonsingular_principal_sets(p: SkewPencil, m: int, rng: random.Random, tries: int = 4):
    """Index sets I with det (A + tB)[I, I] ≠ 0.

    For a skew matrix, the principal submatrix on any set of columns spanning
    the column space is nonsingular; columns are taken in shuffled order at
    regular parameters so the sets differ.
    """
    n = p.size
    seen = set()
    for t in regular_parameters(p, m, tries, rng):
        order = list(range(n))
        rng.shuffle(order)
        _, pivots = p.member(t).extract(list(range(n)), order).rref()
        chosen = tuple(sorted(order[k] for k in pivots))
        if chosen not in seen:
            seen.add(chosen)
            yield chosen


def _principal_minor(matrix: DomainMatrix, indices) -> object:
    indices = list(indices)
    return matrix.extract(indices, indices).det()


def _divides_every_minor(factor, matrix: DomainMatrix, n: int, m: int) -> bool:
    for indices in combinations(range(n), m):
        minor = _principal_minor(matrix, indices)
        if minor and factor.gcd(minor).degree() < factor.degree():
            return False
    return True


def _linear_root(factor):
    coeffs = factor.to_dense()
    return -QQ.convert(coeffs[1]) / QQ.convert(coeffs[0])


def singular_parameters(p: SkewPencil, *, seed: int = 0) -> tuple[SingularParameter, ...]:
    """Every t ∈ QQ ∪ {∞} (and every irrational line) where rank(A + tB) < m.

    Rational roots come first in increasing order, then irrational lines
    (one record per irreducible factor), then ∞.
    """
    if _is_zero(p):
        raise SamplingError("the zero pencil has no regular member")
    n = p.size
    m = generic_rank(p)
    rng = random.Random(seed)
    matrix = parameter_matrix(p)

    common = None
    for indices in _nonsingular_principal_sets(p, m, rng):
        minor = _principal_minor(matrix, indices)
        common = minor if common is None else common.gcd(minor)
        if common.is_ground:
            break

    rational, algebraic = [], []
    if common is not None and not common.is_ground:
        _, factors = common.factor_list()
        for factor, _ in factors:
            if factor.degree() == 1:
                root = _linear_root(factor)
                rank = p.member(BracketParam(root)).rank()
                if rank < m:
                    rational.append(SingularParameter("rational", root, rank=rank))
            elif _divides_every_minor(factor, matrix, n, m):
                monic = factor.monic()
                algebraic.append(SingularParameter(
                    "algebraic", minimal_polynomial=tuple(QQ.convert(c) for c in monic.to_dense())
                ))

    found = sorted(rational, key=lambda sp: sp.value) + algebraic
    rank_b = p.B.rank()
    if rank_b < m:
        found.append(SingularParameter("infinity", rank=rank_b))
    logger.debug("Pencil of size %d, generic rank %d: %d singular lines", n, m, len(found))
    return tuple(found)


# ---------------------------------------------------------------------------
# Kernel sums
# ---------------------------------------------------------------------------

def kernel_sum(p: SkewPencil, sample_budget: int | None = None, *, seed: int = 0) -> tuple[int, list[tuple]]:
    """(dim L, basis of L) with L = Σ_{t regular} ker(A + tB)."""
    if _is_zero(p):
        raise SamplingError("the zero pencil has no regular member")
    n = p.size
    budget = n + 1 if sample_budget is None else sample_budget
    if budget < n + 1:
        raise SamplingError(f"kernel sums need at least {n + 1} regular parameters, got {budget}")
    m = generic_rank(p)
    params = regular_parameters(p, m, budget + 1, random.Random(seed))

    vectors = []
    for t in params[:-1]:
        vectors.extend(rank_and_kernel(p.member(t))[1])
    basis = row_basis(vectors, n)

    extra = rank_and_kernel(p.member(params[-1]))[1]
    if len(row_basis(basis + extra, n)) != len(basis):
        raise SamplingError("kernel sum grew after the sample budget was used up")
    return len(basis), basis


def _intersection(first: list[tuple], second: list[tuple], n: int) -> list[tuple]:
    """Basis of span(first) ∩ span(second); both inputs linearly independent."""
    if not first or not second:
        return []
    stacked = DomainMatrix([list(v) for v in first + second], (len(first) + len(second), n), QQ)
    relations = stacked.transpose().nullspace().to_list()
    out = []
    for coeffs in relations:
        out.append(tuple(
            sum((c * v[k] for c, v in zip(coeffs[:len(first)], first)), QQ.zero) for k in range(n)
        ))
    return row_basis(out, n)


def _pairing_vanishes(form: DomainMatrix, left: list[tuple], right: list[tuple], n: int) -> bool:
    if not left or not right:
        return True
    lm = DomainMatrix([list(v) for v in left], (len(left), n), QQ)
    rm = DomainMatrix([list(v) for v in right], (len(right), n), QQ)
    return (lm * form * rm.transpose()).is_zero_matrix


def jordan_line_check(p: SkewPencil, line: SingularParameter, m: int, kernel_basis: list[tuple],
                      regular: BracketParam) -> dict:
    """Single-Jordan-line test on C = A + t_0 B.

    The hypothesis is rk C = m - 2 with a regular member of rank 2 on ker C.
    When it holds the expected conclusions are dim L = n - m/2 - 1,
    dim(L ∩ ker C) = n - m and a zero pairing of ker C with L ∩ ker C.
    """
    if line.kind == "algebraic":
        return {"applies": False, "reason": "the singular line is irrational"}
    n = p.size
    c = p.member(INFINITY if line.kind == "infinity" else BracketParam(line.value))
    rank_c, ker_c = rank_and_kernel(c)
    restricted_rank = 0
    if ker_c:
        k = DomainMatrix([list(v) for v in ker_c], (len(ker_c), n), QQ)
        restricted_rank = (k * p.member(regular) * k.transpose()).rank()
    out = {
        "applies": True,
        "rank_c": rank_c,
        "restricted_rank": restricted_rank,
        "hypothesis": rank_c == m - 2 and restricted_rank == 2,
    }
    if not out["hypothesis"]:
        logger.info("Single-line hypothesis fails: rk C = %d, rank on ker C = %d", rank_c, restricted_rank)
        out["conclusions_hold"] = None
        return out

    cap = _intersection(kernel_basis, ker_c, n)
    orthogonal = _pairing_vanishes(p.A, ker_c, cap, n) and _pairing_vanishes(p.B, ker_c, cap, n)
    out.update({
        "kernel_sum_dim": len(kernel_basis),
        "expected_kernel_sum_dim": n - m // 2 - 1,
        "intersection_dim": len(cap),
        "expected_intersection_dim": n - m,
        "pairing_vanishes": orthogonal,
    })
    out["conclusions_hold"] = (
        len(kernel_basis) == n - m // 2 - 1 and len(cap) == n - m and orthogonal
    )
    return out


# ---------------------------------------------------------------------------
# Profile
# ---------------------------------------------------------------------------

def jk_profile(p: SkewPencil, *, seed: int = 0) -> PencilProfile:
    n = p.size
    singular = singular_parameters(p, seed=seed)
    m = generic_rank(p)
    dim_l, basis = kernel_sum(p, seed=seed)
    lines = sum(sp.line_count for sp in singular)

    check = None
    if lines == 1:
        regular = regular_parameters(p, m, 1, random.Random(seed))[0]
        check = jordan_line_check(p, singular[0], m, basis, regular)

    profile = PencilProfile(
        size=n,
        generic_rank=m,
        singular=singular,
        proportional=is_proportional(p),
        kernel_sum_dim=dim_l,
        kernel_sum_basis=tuple(basis),
        jordan_line_count=lines,
        kronecker_block_count=n - m,
        jordan_dimension=2 * n - m - 2 * dim_l,
        jordan_line_check=check,
    )
    logger.info("Pencil profile: n=%d m=%d lines=%d dim L=%d", n, m, lines, dim_l)
    return profile
