"""
Classical Lie algebras from their defining representations.

Design:
  - Every algebra is a list of explicit matrices (sparse DomainMatrix over QQ),
    one per basis element and simple factor. Structure constants and the
    invariant form are read off from commutators and traces; no sign table
    is ever hard-coded.
  - sl_N uses elementary matrices. so_N and sp_2l are realized as J^{-1}·S with
    J the antidiagonal form (symmetric for so, alternating for sp) and S
    skew resp. symmetric, so the Borel is the upper-triangular part and the
    transpose maps g to itself.
  - Basis order is (u, t, u_-): positive root vectors by height, the simple
    coroots h_i = [e_i, f_i], then f_α = e_α^T in the same root order.
  - The adapted bases of the involution and Manin splittings are produced by
    rebase(), so every splitting is a partition of coordinates.
"""
import logging
from itertools import combinations

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from liepoisson.errors import UnsupportedAlgebraError, UnsupportedScenarioError
from models import (
    Constants,
    LieAlgebraData,
    PointOnDual,
    PrincipalTriple,
    SimpleFactor,
    Splitting,
    ValidationCheck,
    ValidationReport,
)

logger = logging.getLogger(__name__)

SUPPORTED = {
    "A": (1, 2, 3, 4),
    "B": (2, 3),
    "C": (2, 3),
    "D": (4,),
}
MANIN_MAX_RANK = 3

_GROUP_NAMES = {"A": "sl", "B": "so", "C": "sp", "D": "so"}


# ---------------------------------------------------------------------------
# Sparse matrix helpers
# ---------------------------------------------------------------------------

def _matrix(size: int, entries: dict[tuple[int, int], object]) -> DomainMatrix:
    rows: dict[int, dict[int, object]] = {}
    for (p, q), value in entries.items():
        value = QQ.convert(value)
        if value:
            rows.setdefault(p, {})[q] = value
    return DomainMatrix(rows, (size, size), QQ)


def _entries(m: DomainMatrix) -> list[tuple[int, int, object]]:
    return [(p, q, v) for p, row in m.to_dod().items() for q, v in row.items() if v]


def _combine(matrices, coefficients) -> DomainMatrix:
    out = None
    for m, c in zip(matrices, coefficients):
        if not c:
            continue
        term = m * QQ.convert(c)
        out = term if out is None else out + term
    if out is None:
        return _matrix(matrices[0].shape[0], {})
    return out


def _leading(m: DomainMatrix) -> tuple[int, int, object]:
    return min(_entries(m))


def transpose_involution(m: DomainMatrix) -> DomainMatrix:
    """σ(X) = -X^T."""
    return -m.transpose()


# ---------------------------------------------------------------------------
# Assembly from a realization
# ---------------------------------------------------------------------------

def _assemble(
    *,
    series: str,
    rank: int,
    labels: list[str],
    realization: list[tuple[DomainMatrix, ...]],
    factors: tuple[SimpleFactor, ...],
    tag: str,
    highest_root: tuple[int, ...] = (),
    positive_roots: tuple[tuple[int, ...], ...] = (),
    layout: dict[str, tuple[int, ...]] | None = None,
) -> LieAlgebraData:
    n = len(labels)

    # (factor, p, q) -> [(basis index, entry)]
    positions: dict[tuple[int, int, int], list[tuple[int, object]]] = {}
    for i, blocks in enumerate(realization):
        for b, m in enumerate(blocks):
            for p, q, v in _entries(m):
                positions.setdefault((b, p, q), []).append((i, v))

    def pairing(blocks) -> list:
        """Σ_b tr(Y_b X_m^b) for every basis element m."""
        out = [QQ.zero] * n
        for b, m in enumerate(blocks):
            for p, q, y in _entries(m):
                for idx, x in positions.get((b, q, p), ()):
                    out[idx] += y * x
        return out

    gram = [pairing(blocks) for blocks in realization]
    gram_dm = DomainMatrix([list(row) for row in gram], (n, n), QQ)
    if gram_dm.rank() < n:
        raise UnsupportedAlgebraError(f"trace form of {tag} is degenerate")
    inverse = gram_dm.inv().to_list()

    constants: dict[tuple[int, int], dict[int, object]] = {}
    for i, j in combinations(range(n), 2):
        commutator = tuple(
            x * y - y * x for x, y in zip(realization[i], realization[j])
        )
        v = pairing(commutator)
        support = [m for m in range(n) if v[m]]
        if not support:
            continue
        coords = {}
        for k in range(n):
            c = sum((inverse[k][m] * v[m] for m in support), QQ.zero)
            if c:
                coords[k] = c
        if coords:
            constants[(i, j)] = coords
            constants[(j, i)] = {k: -c for k, c in coords.items()}

    logger.info("Assembled %s: dim %d, %d nonzero brackets", tag, n, len(constants) // 2)
    return LieAlgebraData(
        series=series,
        rank=rank,
        labels=tuple(labels),
        constants=constants,
        form=tuple(tuple(row) for row in gram),
        factors=factors,
        realization=tuple(tuple(blocks) for blocks in realization),
        realization_tag=tag,
        highest_root=highest_root,
        positive_roots=positive_roots,
        layout=dict(layout or {}),
    )


# ---------------------------------------------------------------------------
# Defining representations
# ---------------------------------------------------------------------------

def _defining_form(series: str, rank: int) -> tuple[int, DomainMatrix | None]:
    if series == "A":
        return rank + 1, None
    size = 2 * rank + 1 if series == "B" else 2 * rank
    entries = {}
    for p in range(size):
        sign = -1 if series == "C" and p >= rank else 1
        entries[(p, size - 1 - p)] = sign
    return size, _matrix(size, entries)


def _candidates(series: str, size: int, form: DomainMatrix | None) -> list[DomainMatrix]:
    """A spanning set of g adapted to the triangular decomposition."""
    if form is None:
        out = [_matrix(size, {(p, q): 1}) for p in range(size) for q in range(size) if p != q]
        out += [_matrix(size, {(p, p): 1, (p + 1, p + 1): -1}) for p in range(size - 1)]
        return out

    # X = J^{-1} S with S skew (so) or symmetric (sp); J^{-1} = J^T.
    jt = form.transpose().to_dod()
    symmetric = series == "C"
    out = []
    for a in range(size):
        for b in range(a if symmetric else a + 1, size):
            a_bar, b_bar = size - 1 - a, size - 1 - b
            if a == b:
                entries = {(a_bar, a): jt[a_bar][a]}
            else:
                entries = {
                    (a_bar, b): jt[a_bar][a],
                    (b_bar, a): jt[b_bar][b] * (1 if symmetric else -1),
                }
            out.append(_matrix(size, entries))
    return out


def _solve(matrix: list[list[object]], rhs: list[object]) -> list[object]:
    n = len(rhs)
    a = DomainMatrix([[QQ.convert(x) for x in row] for row in matrix], (n, n), QQ)
    b = DomainMatrix([[QQ.convert(x)] for x in rhs], (n, 1), QQ)
    return [row[0] for row in a.lu_solve(b).to_list()]


def build_classical(series: str, rank: int) -> LieAlgebraData:
    """Build sl_{l+1}, so_{2l+1}, sp_{2l} or so_{2l} with exact constants.

    Root vectors are normalized so that their first nonzero entry (in row
    major order) is 1; the realization tag records the choice.
    """
    series = str(series).upper()
    if rank not in SUPPORTED.get(series, ()):
        supported = ", ".join(f"{s}{r}" for s, ranks in SUPPORTED.items() for r in ranks)
        raise UnsupportedAlgebraError(f"unsupported algebra {series}{rank}; supported: {supported}")

    size, form = _defining_form(series, rank)
    upper, diagonal = [], []
    for m in _candidates(series, size, form):
        cells = _entries(m)
        if all(p < q for p, q, _ in cells):
            p, q, v = _leading(m)
            upper.append(m * (QQ.one / v))
        elif all(p == q for p, q, _ in cells):
            diagonal.append(m)

    # Roots as functionals: values on the provisional diagonal basis.
    diag_values = [{p: v for p, q, v in _entries(d)} for d in diagonal]

    def weight(m: DomainMatrix) -> tuple:
        p, q, _ = _leading(m)
        return tuple(d.get(p, QQ.zero) - d.get(q, QQ.zero) for d in diag_values)

    weights = [weight(m) for m in upper]
    weight_set = set(weights)
    simple = [
        k for k, w in enumerate(weights)
        if not any(tuple(a - b for a, b in zip(w, other)) in weight_set for other in weights)
    ]
    simple.sort(key=lambda k: _leading(upper[k])[:2])
    if len(simple) != rank:
        raise UnsupportedAlgebraError(f"found {len(simple)} simple roots for {series}{rank}")

    columns = [weights[k] for k in simple]
    coefficients = []
    for w in weights:
        sol = _solve([[columns[i][r] for i in range(rank)] for r in range(rank)], list(w))
        coefficients.append(tuple(int(c) for c in sol))

    order = sorted(range(len(upper)), key=lambda k: (sum(coefficients[k]), [-c for c in coefficients[k]]))
    roots = tuple(coefficients[k] for k in order)
    e_mats = [upper[k] for k in order]
    f_mats = [m.transpose() for m in e_mats]
    simple_pos = [roots.index(coefficients[k]) for k in simple]
    h_mats = [e_mats[k] * f_mats[k] - f_mats[k] * e_mats[k] for k in simple_pos]

    def root_label(prefix: str, root: tuple[int, ...]) -> str:
        return f"{prefix}_{''.join(str(c) for c in root)}"

    labels = (
        [root_label("e", r) for r in roots]
        + [f"h_{i + 1}" for i in range(rank)]
        + [root_label("f", r) for r in roots]
    )
    npos = len(roots)
    layout = {
        "u": tuple(range(npos)),
        "t": tuple(range(npos, npos + rank)),
        "v": tuple(range(npos + rank, 2 * npos + rank)),
    }
    group = f"{_GROUP_NAMES[series]}_{size}"
    tag = f"{group}: {size}x{size} defining matrices"
    if form is not None:
        kind = "alternating" if series == "C" else "symmetric"
        tag += f" preserving the antidiagonal {kind} form"
    tag += "; root vectors with leading entry 1, f = e^T, Cartan basis h_i = [e_i, f_i], trace form"

    factor = SimpleFactor(series, rank, size, form)
    algebra = _assemble(
        series=series,
        rank=rank,
        labels=labels,
        realization=[(m,) for m in e_mats + h_mats + f_mats],
        factors=(factor,),
        tag=tag,
        highest_root=max(roots, key=sum),
        positive_roots=roots,
        layout=layout,
    )
    logger.info("Built %s%d (%s), dim %d", series, rank, group, algebra.dim)
    return algebra


def classical_dimension(series: str, size: int) -> int:
    if series == "A":
        return size * size - 1
    if series == "C":
        return size * (size + 1) // 2
    return size * (size - 1) // 2


# ---------------------------------------------------------------------------
# Derived algebras
# ---------------------------------------------------------------------------

def rebase(
    g: LieAlgebraData,
    vectors: list[list[object]],
    labels: list[str],
    *,
    layout: dict[str, tuple[int, ...]] | None = None,
    note: str = "",
) -> LieAlgebraData:
    """The same algebra in the basis whose i-th element is Σ_k vectors[i][k] x_k."""
    if len(vectors) != g.dim or any(len(v) != g.dim for v in vectors):
        raise UnsupportedScenarioError(f"rebase needs {g.dim} vectors of length {g.dim}")
    change = DomainMatrix([[QQ.convert(c) for c in v] for v in vectors], (g.dim, g.dim), QQ)
    if change.rank() < g.dim:
        raise UnsupportedScenarioError("rebase vectors are linearly dependent")

    realization = []
    for v in vectors:
        blocks = tuple(
            _combine([g.realization[k][b] for k in range(g.dim)], v) for b in range(len(g.factors))
        )
        realization.append(blocks)
    tag = g.realization_tag + (f"; {note}" if note else "")
    return _assemble(
        series=g.series,
        rank=g.rank,
        labels=labels,
        realization=realization,
        factors=g.factors,
        tag=tag,
        highest_root=g.highest_root,
        positive_roots=g.positive_roots,
        layout=layout,
    )


def direct_square(g: LieAlgebraData) -> LieAlgebraData:
    """g×g with componentwise brackets; first copy's basis before the second's."""
    zero = tuple(_matrix(f.size, {}) for f in g.factors)
    realization = [blocks + zero for blocks in g.realization]
    realization += [zero + blocks for blocks in g.realization]
    labels = [f"{label}.I" for label in g.labels] + [f"{label}.II" for label in g.labels]
    return _assemble(
        series=f"{g.series}x{g.series}",
        rank=g.rank,
        labels=labels,
        realization=realization,
        factors=g.factors + g.factors,
        tag=f"two copies of {g.realization_tag}",
        highest_root=g.highest_root,
        positive_roots=g.positive_roots,
        layout={"I": tuple(range(g.dim)), "II": tuple(range(g.dim, 2 * g.dim))},
    )


def perturb_constant(g: LieAlgebraData, i: int, j: int, k: int, delta) -> LieAlgebraData:
    """Shift c_ij^k by delta (and c_ji^k by -delta); the realization is unchanged."""
    constants = {key: dict(value) for key, value in g.constants.items()}
    delta = QQ.convert(delta)
    for (a, b), d in (((i, j), delta), ((j, i), -delta)):
        row = constants.setdefault((a, b), {})
        row[k] = row.get(k, QQ.zero) + d
        if not row[k]:
            del row[k]
        if not row:
            del constants[(a, b)]
    return LieAlgebraData(
        series=g.series,
        rank=g.rank,
        labels=g.labels,
        constants=constants,
        form=g.form,
        factors=g.factors,
        realization=g.realization,
        realization_tag=g.realization_tag + "; perturbed",
        highest_root=g.highest_root,
        positive_roots=g.positive_roots,
        layout=g.layout,
    )


# ---------------------------------------------------------------------------
# Structure validation
# ---------------------------------------------------------------------------

def jacobi_violation(constants: Constants, n: int) -> tuple[int, int, int] | None:
    """First basis triple (i, j, k) on which the Jacobi identity fails, or None."""

    def double(i, j, k) -> dict[int, object]:
        out: dict[int, object] = {}
        for m, c in constants.get((i, j), {}).items():
            for p, d in constants.get((m, k), {}).items():
                out[p] = out.get(p, QQ.zero) + c * d
        return out

    for i, j, k in combinations(range(n), 3):
        total: dict[int, object] = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for p, v in double(a, b, c).items():
                total[p] = total.get(p, QQ.zero) + v
        if any(total.values()):
            return i, j, k
    return None


def validate_structure(g: LieAlgebraData) -> ValidationReport:
    n = g.dim
    checks = []

    bad = [
        (i, j) for (i, j), row in g.constants.items()
        if i == j or g.bracket(j, i) != {k: -c for k, c in row.items()}
    ]
    checks.append(ValidationCheck("antisymmetry", not bad, f"violations at {bad[:3]}" if bad else ""))

    triple = jacobi_violation(g.constants, n)
    jacobi_fail = None if triple is None else tuple(g.labels[i] for i in triple)
    checks.append(ValidationCheck("jacobi", jacobi_fail is None, f"fails on {jacobi_fail}" if jacobi_fail else ""))

    symmetric = all(g.form[i][j] == g.form[j][i] for i in range(n) for j in range(i))
    checks.append(ValidationCheck("form_symmetric", symmetric))
    rank = g.form_matrix.rank()
    checks.append(ValidationCheck("form_nondegenerate", rank == n, f"rank {rank} of {n}"))

    invariance_fail = None
    for i in range(n):
        for j in range(n):
            left = g.bracket(i, j)
            for k in range(n):
                right = g.bracket(i, k)
                value = sum((c * g.form[m][k] for m, c in left.items()), QQ.zero)
                value += sum((c * g.form[j][m] for m, c in right.items()), QQ.zero)
                if value:
                    invariance_fail = (g.labels[i], g.labels[j], g.labels[k])
                    break
            if invariance_fail:
                break
        if invariance_fail:
            break
    checks.append(ValidationCheck(
        "form_invariance", invariance_fail is None, f"fails on {invariance_fail}" if invariance_fail else ""
    ))

    expected = sum(classical_dimension(f.series, f.size) for f in g.factors)
    checks.append(ValidationCheck("dimension", expected == n, f"dim {n}, expected {expected}"))

    report = ValidationReport(tuple(checks))
    if not report.passed:
        logger.warning("Structure validation failed for %s: %s", g.series,
                       [c.name for c in checks if not c.passed])
    return report


def validate_splitting(s: Splitting) -> ValidationReport:
    g = s.algebra
    h, r = set(s.h_indices), set(s.r_indices)
    checks = []
    for name, part in (("h_closed", h), ("r_closed", r)):
        leak = [
            (g.labels[i], g.labels[j]) for i in part for j in part
            if not set(g.bracket(i, j)) <= part
        ]
        checks.append(ValidationCheck(name, not leak, f"leaves the span on {leak[:3]}" if leak else ""))
    covering = not (h & r) and h | r == set(range(g.dim))
    checks.append(ValidationCheck("complementary", covering, f"|h|={len(h)}, |r|={len(r)}, dim={g.dim}"))

    if s.scenario == "involution":
        fixed = all(
            transpose_involution(g.realization[i][0]) == g.realization[i][0] for i in s.r_indices
        )
        t_odd = all(
            transpose_involution(g.realization[i][0]) == -g.realization[i][0] for i in g.layout["t"]
        )
        checks.append(ValidationCheck("r_fixed_by_involution", fixed))
        checks.append(ValidationCheck("cartan_in_minus_one_eigenspace", t_odd))
    return ValidationReport(tuple(checks))


# ---------------------------------------------------------------------------
# Splittings
# ---------------------------------------------------------------------------

def _require_simple(g: LieAlgebraData, what: str) -> None:
    if len(g.factors) != 1 or not {"u", "t", "v"} <= set(g.layout):
        raise UnsupportedScenarioError(f"{what} needs a simple algebra in its triangular basis")


def splitting_borel_opposite(g: LieAlgebraData) -> Splitting:
    """(h, r) = (b, u_-)."""
    _require_simple(g, "the Borel splitting")
    split = Splitting(g, g.layout["u"] + g.layout["t"], g.layout["v"], "borel")
    logger.info("Borel splitting: dim h = %d, dim r = %d", len(split.h_indices), len(split.r_indices))
    return split


def splitting_involution_max_rank(g: LieAlgebraData) -> Splitting:
    """(h, r) = (b, g_0) for σ(x) = -x^T, g_0 = so_N, in the basis (e_α, h_i | e_α - f_α)."""
    _require_simple(g, "the involution splitting")
    if g.series != "A":
        raise UnsupportedScenarioError(
            f"the maximal-rank involution splitting is implemented for type A only, not {g.series}"
        )
    u, t, v = g.layout["u"], g.layout["t"], g.layout["v"]
    unit = lambda k: [QQ.one if m == k else QQ.zero for m in range(g.dim)]  # noqa: E731
    vectors = [unit(k) for k in u + t]
    labels = [g.labels[k] for k in u + t]
    for e_idx, f_idx in zip(u, v):
        vec = unit(e_idx)
        vec[f_idx] = -QQ.one
        vectors.append(vec)
        labels.append("k_" + g.labels[e_idx].split("_", 1)[1])
    n_b = len(u) + len(t)
    layout = {"u": u, "t": t, "k": tuple(range(n_b, g.dim))}
    adapted = rebase(g, vectors, labels, layout=layout, note="adapted basis (e_α, h_i | k_α = e_α - f_α)")
    split = Splitting(adapted, tuple(range(n_b)), layout["k"], "involution")
    logger.info("Involution splitting: dim b = %d, dim g0 = %d", n_b, len(layout["k"]))
    return split


def splitting_manin(g: LieAlgebraData) -> tuple[LieAlgebraData, Splitting]:
    """g×g = (Δ_t^(-) ⊕ (u × u_-)) ⊕ Δ_g in the adapted basis."""
    _require_simple(g, "the Manin splitting")
    if g.rank > MANIN_MAX_RANK:
        raise UnsupportedScenarioError(f"the Manin splitting is supported up to rank {MANIN_MAX_RANK}")
    n = g.dim
    u, t, v = g.layout["u"], g.layout["t"], g.layout["v"]

    def vec(first: dict[int, int], second: dict[int, int]) -> list:
        out = [QQ.zero] * (2 * n)
        for k, c in first.items():
            out[k] = QQ.convert(c)
        for k, c in second.items():
            out[n + k] = QQ.convert(c)
        return out

    vectors, labels = [], []
    for k in u:
        vectors.append(vec({k: 1}, {}))
        labels.append(f"{g.labels[k]}.I")
    for k in t:
        vectors.append(vec({k: 1}, {k: -1}))
        labels.append(f"{g.labels[k]}.anti")
    for k in v:
        vectors.append(vec({}, {k: 1}))
        labels.append(f"{g.labels[k]}.II")
    for k in range(n):
        vectors.append(vec({k: 1}, {k: 1}))
        labels.append(f"{g.labels[k]}.diag")

    layout = {
        "u": tuple(range(len(u))),
        "t": tuple(range(len(u), len(u) + len(t))),
        "v": tuple(range(len(u) + len(t), n)),
        "diag": tuple(range(n, 2 * n)),
        "diag_t": tuple(n + k for k in t),
    }
    adapted = rebase(
        direct_square(g), vectors, labels, layout=layout,
        note="adapted basis (e.I, h.anti, f.II | x.diag)",
    )
    split = Splitting(adapted, tuple(range(n)), layout["diag"], "manin")
    logger.info("Manin splitting of %s%d x %s%d: dim %d", g.series, g.rank, g.series, g.rank, 2 * n)
    return adapted, split


def splitting_for(scenario: str, g: LieAlgebraData) -> Splitting:
    if scenario == "borel":
        return splitting_borel_opposite(g)
    if scenario == "involution":
        return splitting_involution_max_rank(g)
    if scenario == "manin":
        return splitting_manin(g)[1]
    raise UnsupportedScenarioError(f"unknown scenario {scenario!r}; expected borel, involution or manin")


# ---------------------------------------------------------------------------
# Distinguished elements
# ---------------------------------------------------------------------------

def simple_root_indices(g: LieAlgebraData) -> tuple[list[int], list[int]]:
    """Indices of e_{α_i} and f_{α_i}, i = 1..l, in Bourbaki order."""
    _require_simple(g, "simple roots")
    u, v = g.layout["u"], g.layout["v"]
    units = [tuple(1 if m == i else 0 for m in range(g.rank)) for i in range(g.rank)]
    pos = [g.positive_roots.index(r) for r in units]
    return [u[p] for p in pos], [v[p] for p in pos]


def highest_root_index(g: LieAlgebraData) -> int:
    """Index of e_δ."""
    _require_simple(g, "the highest root")
    return g.layout["u"][g.positive_roots.index(g.highest_root)]


def coroot(g: LieAlgebraData, root: int) -> list:
    """h_α = [e_α, f_α] for the root at position `root` of positive_roots."""
    e_idx, f_idx = g.layout["u"][root], g.layout["v"][root]
    out = [QQ.zero] * g.dim
    for k, c in g.bracket(e_idx, f_idx).items():
        out[k] = c
    return out


def principal_nilpotent_point(g: LieAlgebraData) -> tuple[PrincipalTriple, PointOnDual]:
    """Principal sl2-triple and y = e + h - f as a point of g*."""
    e_simple, f_simple = simple_root_indices(g)
    t = g.layout["t"]
    # cartan[j][i] = α_j(h_i), read from [h_i, e_j] = α_j(h_i) e_j
    cartan = [[g.bracket(t[i], e_simple[j]).get(e_simple[j], QQ.zero) for i in range(g.rank)]
              for j in range(g.rank)]
    coeffs = _solve(cartan, [QQ(2)] * g.rank)

    e = [QQ.zero] * g.dim
    h = [QQ.zero] * g.dim
    f = [QQ.zero] * g.dim
    for i in range(g.rank):
        e[e_simple[i]] = QQ.one
        h[t[i]] = coeffs[i]
        f[f_simple[i]] = coeffs[i]
    y = [a + b - c for a, b, c in zip(e, h, f)]
    logger.info("Principal triple: h = %s", [str(c) for c in coeffs])
    return PrincipalTriple(tuple(e), tuple(h), tuple(f)), g.dual_point(y)
