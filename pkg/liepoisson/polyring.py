"""
S(g) as sparse polynomials over QQ, graded by a splitting.

Polynomials are sympy PolyElements in the ring attached to an algebra
(LieAlgebraData.ring): a dict from dense exponent tuples to nonzero QQ
coefficients, ordered graded-lexicographically in the fixed basis order.
A splitting g = h ⊕ r partitions the coordinates, which gives every
monomial a bi-degree (h-degree, r-degree).
"""
import logging

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from liepoisson.errors import (
    DimensionMismatchError,
    DocumentError,
    InvalidScalarError,
    NotHomogeneousError,
    ZeroPolynomialError,
)
from models import BiDegree, PointOnDual, Splitting

logger = logging.getLogger(__name__)

# Sides for top_component
R_MAX = "second-summand-max"  # H^•
H_MAX = "first-summand-max"   # H_•


# ---------------------------------------------------------------------------
# Arithmetic
# ---------------------------------------------------------------------------

def _common_ring(polys) -> PolyRing:
    rings = {id(p.ring): p.ring for p in polys}
    if len(rings) != 1:
        dims = sorted({p.ring.ngens for p in polys})
        raise DimensionMismatchError(f"operands live in different polynomial rings (dims {dims})")
    return next(iter(rings.values()))


def poly_arith(op: str, operands: list) -> PolyElement:
    """Exact add / mul over a list of polynomials, or scale(P, c)."""
    if op == "scale":
        poly, scalar = operands
        return poly * QQ.convert(scalar)
    ring = _common_ring(operands)
    if op == "add":
        return sum(operands, ring.zero)
    if op == "mul":
        out = ring.one
        for p in operands:
            out = out * p
        return out
    raise ValueError(f"unknown polynomial operation {op!r}")


def total_degree(poly: PolyElement) -> int:
    return max((sum(m) for m in poly.itermonoms()), default=0)


def is_homogeneous(poly: PolyElement) -> bool:
    return len({sum(m) for m in poly.itermonoms()}) <= 1


def support(poly: PolyElement) -> set[int]:
    """Indices of the coordinates occurring in poly."""
    return {i for m in poly.itermonoms() for i, e in enumerate(m) if e}


def supported_on(poly: PolyElement, indices) -> bool:
    """True iff poly lies in the subalgebra generated by the given coordinates."""
    return support(poly) <= set(indices)


# ---------------------------------------------------------------------------
# Bigrading and contraction
# ---------------------------------------------------------------------------

def bidegree(monom: tuple[int, ...], s: Splitting) -> BiDegree:
    r = sum(monom[i] for i in s.r_indices)
    return BiDegree(sum(monom) - r, r)


def bihomogeneous_decompose(poly: PolyElement, s: Splitting) -> list[tuple[BiDegree, PolyElement]]:
    """H = Σ_i H_{i,d-i}, nonzero components by increasing h-degree."""
    if not is_homogeneous(poly):
        raise NotHomogeneousError("bi-homogeneous decomposition needs a homogeneous polynomial")
    ring = poly.ring
    parts: dict[BiDegree, dict] = {}
    for monom, coeff in poly.iterterms():
        parts.setdefault(bidegree(monom, s), {})[monom] = coeff
    return [(deg, ring.from_dict(parts[deg])) for deg in sorted(parts)]


def component(poly: PolyElement, s: Splitting, h_degree: int) -> PolyElement:
    """H_{i, d-i} for i = h_degree (zero when absent)."""
    for deg, part in bihomogeneous_decompose(poly, s):
        if deg.h == h_degree:
            return part
    return poly.ring.zero


def top_component(poly: PolyElement, s: Splitting, side: str) -> tuple[BiDegree, PolyElement]:
    """H^• (side R_MAX, maximal r-degree) or H_• (side H_MAX, maximal h-degree)."""
    if not poly:
        raise ZeroPolynomialError("the zero polynomial has no top component")
    parts = bihomogeneous_decompose(poly, s)
    if side == R_MAX:
        return parts[0]
    if side == H_MAX:
        return parts[-1]
    raise ValueError(f"unknown side {side!r}")


def apply_phi(poly: PolyElement, s: Splitting, scalar) -> PolyElement:
    """φ_s: multiply every r-coordinate by the scalar, keep h fixed."""
    scalar = QQ.convert(scalar)
    if not scalar:
        raise InvalidScalarError("φ_s needs a nonzero scalar")
    return poly.ring.from_dict({
        monom: coeff * scalar ** bidegree(monom, s).r for monom, coeff in poly.iterterms()
    })


# ---------------------------------------------------------------------------
# Evaluation and differentials
# ---------------------------------------------------------------------------

def evaluate(poly: PolyElement, point: PointOnDual):
    values = point.coords
    if len(values) != poly.ring.ngens:
        raise DimensionMismatchError(f"point of dim {len(values)} for a ring with {poly.ring.ngens} variables")
    return poly(*values)


def gradient(poly: PolyElement) -> list[PolyElement]:
    return [poly.diff(i) for i in range(poly.ring.ngens)]


def differential_at(poly: PolyElement, point: PointOnDual) -> tuple:
    """d_ξ P ∈ g in the fixed basis."""
    return tuple(evaluate(partial, point) for partial in gradient(poly))


def jacobian(polys, point: PointOnDual, *, gradients=None) -> DomainMatrix:
    """Rows d_ξ F_k; pass precomputed gradients to avoid re-differentiating."""
    grads = gradients if gradients is not None else [gradient(p) for p in polys]
    rows = [[evaluate(partial, point) for partial in grad] for grad in grads]
    return DomainMatrix(rows, (len(rows), point.dim), QQ)


def jacobian_rank(polys, point: PointOnDual, *, gradients=None) -> int:
    polys = list(polys)
    if not polys and gradients is None:
        return 0
    return jacobian(polys, point, gradients=gradients).rank()


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def format_rational(q) -> tuple[str, str]:
    q = QQ.convert(q)
    return str(int(q.numerator)), str(int(q.denominator))


def poly_to_document(poly: PolyElement) -> dict:
    """{vars, terms} with terms in canonical (graded lex, descending) order."""
    terms = []
    for monom, coeff in poly.terms(order=grlex):
        num, den = format_rational(coeff)
        terms.append({"exp": list(monom), "num": num, "den": den})
    return {"vars": [str(s) for s in poly.ring.symbols], "terms": terms}


def poly_from_document(doc: dict, ring: PolyRing) -> PolyElement:
    labels = [str(s) for s in ring.symbols]
    if list(doc.get("vars", [])) != labels:
        raise DocumentError("polynomial variables do not match the algebra basis")
    terms = {}
    for term in doc.get("terms", []):
        exp = tuple(int(e) for e in term["exp"])
        if len(exp) != ring.ngens or any(e < 0 for e in exp):
            raise DocumentError(f"bad exponent vector {term['exp']}")
        terms[exp] = QQ(int(term["num"]), int(term["den"]))
    return ring.from_dict(terms)

