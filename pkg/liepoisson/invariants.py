"""
Basic symmetric invariants H_1, ..., H_l and their certification.

The invariants are read off the characteristic polynomial of the generic
element M(ξ) = Σ_m X_m ℓ_m, where X_m are the defining matrices and
ℓ = G^{-1} x is the trace-form dual basis written in the coordinates of S(g).
This works unchanged in any basis the algebra is expressed in (including the
adapted bases of the splittings) and, factor by factor, for g×g.

    type A   c_2, ..., c_{l+1}
    type B/C c_2, c_4, ..., c_{2l}
    type D   c_2, ..., c_{2l-2}, then Pf(J·M)  (degree ties: coefficient first)

Coefficients are kept exactly as det(λ - M) produces them.
"""
import logging

from sympy.polys.matrices import DomainMatrix

from liepoisson.brackets import lie_poisson
from liepoisson.errors import UnsupportedAlgebraError
from liepoisson.polyring import R_MAX, jacobian_rank, total_degree
from models import InvariantSet, LieAlgebraData, PointOnDual, Splitting

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def pfaffian(rows: list[list], ring):
    """Pfaffian by expansion along the first row."""
    n = len(rows)
    if n == 0:
        return ring.one
    total = ring.zero
    if n % 2:
        return total
    for j in range(1, n):
        if not rows[0][j]:
            continue
        keep = [k for k in range(1, n) if k != j]
        minor = [[rows[a][b] for b in keep] for a in keep]
        sign = 1 if j % 2 else -1
        total += sign * rows[0][j] * pfaffian(minor, ring)
    return total


def generic_matrices(g: LieAlgebraData) -> list[list[list]]:
    """M(ξ) per simple factor, entries in g.ring."""
    ring = g.ring
    gens = ring.gens
    inverse = g.form_inverse.to_list()
    ell = [
        sum((gens[i] * c for i, c in enumerate(row) if c), ring.zero) for row in inverse
    ]
    out = []
    for b, factor in enumerate(g.factors):
        size = factor.size
        rows = [[ring.zero] * size for _ in range(size)]
        for m in range(g.dim):
            for p, row in g.realization[m][b].to_dod().items():
                for q, v in row.items():
                    rows[p][q] += ell[m] * v
        out.append(rows)
    return out


def _factor_invariants(series: str, rank: int, factor, rows: list[list], ring) -> list[tuple[str, object]]:
    size = len(rows)
    domain = ring.to_domain()
    coeffs = DomainMatrix([list(r) for r in rows], (size, size), domain).charpoly()
    if series == "A":
        picked = [(f"c{k}", coeffs[k]) for k in range(2, size + 1)]
    elif series in ("B", "C"):
        picked = [(f"c{k}", coeffs[k]) for k in range(2, 2 * rank + 1, 2)]
    elif series == "D":
        picked = [(f"c{k}", coeffs[k]) for k in range(2, 2 * rank - 1, 2)]
        form = factor.form.to_dod()
        jm = [[sum((form[p][r] * rows[r][q] for r in form[p]), ring.zero) for q in range(size)]
              for p in range(size)]
        picked.append(("pf", pfaffian(jm, ring)))
    else:
        raise UnsupportedAlgebraError(f"no invariants for series {series}")
    return picked


def basic_invariants(g: LieAlgebraData) -> InvariantSet:
    entries = []
    double = len(g.factors) > 1
    for b, (factor, rows) in enumerate(zip(g.factors, generic_matrices(g))):
        found = _factor_invariants(factor.series, factor.rank, factor, rows, g.ring)
        for j, (source, poly) in enumerate(found):
            if not poly:
                raise UnsupportedAlgebraError(f"invariant {source} of {factor.label} vanishes identically")
            label = f"H{j + 1}" + ((".I" if b == 0 else ".II") if double else "")
            entries.append((total_degree(poly), j, b, label, poly))
    entries.sort(key=lambda e: (e[0], e[1], e[2]))
    logger.info("Basic invariants of %s: degrees %s", g.series, [e[0] for e in entries])
    return InvariantSet(
        polys=tuple(e[4] for e in entries),
        degrees=tuple(e[0] for e in entries),
        labels=tuple(e[3] for e in entries),
        factors=tuple(e[2] for e in entries),
        positions=tuple(e[1] for e in entries),
        realization_tag=g.realization_tag,
    )


def check_adg_invariance(poly, g: LieAlgebraData) -> bool:
    """{H, x} = 0 for every basis element x."""
    return all(not lie_poisson(poly, x, g) for x in g.ring.gens)


# ---------------------------------------------------------------------------
# Derived systems and identities
# ---------------------------------------------------------------------------

def by_factor(inv: InvariantSet) -> dict[int, tuple]:
    """j -> (H_{j,I}, H_{j,II}, d_j) for a g×g invariant set."""
    pairs: dict[int, dict] = {}
    for poly, d, b, j in zip(inv.polys, inv.degrees, inv.factors, inv.positions):
        pairs.setdefault(j, {"d": d})[b] = poly
    return {j: (p[0], p[1], p["d"]) for j, p in sorted(pairs.items())}


def manin_system(inv: InvariantSet) -> list[tuple[str, object, int, int]]:
    """(label, poly, degree, top h-degree bound) for P_j = H_I + (-1)^d H_II and M_j = H_I - (-1)^d H_II.

    (P_j)_{0,d} lies in S(Δ_t) and (M_j)_{d,0} = 0, so P_j contributes
    components with 1 ≤ s ≤ d and M_j with 1 ≤ s ≤ d - 1.
    """
    out = []
    for j, (first, second, d) in by_factor(inv).items():
        sign = 1 if d % 2 == 0 else -1
        out.append((f"P{j + 1}", first + second * sign, d, d))
        out.append((f"M{j + 1}", first - second * sign, d, d - 1))
    return out


def max_degree_in(poly, indices) -> int:
    chosen = list(indices)
    return max((sum(m[i] for i in chosen) for m in poly.itermonoms()), default=0)


def ggs_identity(inv: InvariantSet, s: Splitting, side: str) -> tuple[int, int]:
    """(Σ_j deg_V H_j, dim V) with V = r (side R_MAX) or V = h (side H_MAX).

    For the Manin splitting the system {P_j, M_j} is used.
    """
    polys = [p for _, p, _, _ in manin_system(inv)] if s.scenario == "manin" else list(inv.polys)
    indices = s.r_indices if side == R_MAX else s.h_indices
    return sum(max_degree_in(p, indices) for p in polys), len(indices)


def differential_rank(inv: InvariantSet, point: PointOnDual) -> int:
    """dim span{d_ξ H_j}; equals l exactly on the regular set."""
    return jacobian_rank(inv.polys, point)
