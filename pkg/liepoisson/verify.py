"""
Scenario verification: exact checks assembled into certificates.

run_scenario builds the algebra, its splitting, the basic invariants and the
generator sets, then runs one check per certificate:

  structure, splitting, invariants, ggs_identity, restriction,
  kostant_regularity, family_jacobi, phi_conjugation, contraction_identity,
  centre_0, centre_inf, pc_generators, vandermonde_closure, commute_0,
  commute_1, commute_inf, trdeg, index_0, index_1, index_inf, kernel_sum

and, for the borel scenario, torus_invariance, top_monomial, completeness_y,
completeness_regular, divisor_inf, divisor_0, witness_rank,
witness_rank_divisor and kernel_sum_divisor.

Sampled checks compare an exact rank found at random integer points with
the value the theory predicts. Every such rank is also a one-sided bound
(trdeg and Jacobian ranks from below, coranks from above), so overshooting
the bound is a failure, hitting it is a pass, and falling short within the
retry budget is "inconclusive".

Each check draws from its own stream derived from (seed, check name) and
runs inside its own try/except, so one broken check never aborts the run.
"""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Callable, NamedTuple

from sympy.polys.domains import QQ

from liepoisson.brackets import (
    bracket_t,
    contracted_point,
    family_jacobi,
    lie_poisson,
    pencil_at,
    phi_conjugation_mismatches,
    tensor_at,
)
from liepoisson.documents import algebra_document, document_digest, generators_document, invariants_document
from liepoisson.errors import (
    SamplingError,
    UnsupportedAlgebraError,
    UnsupportedDivisorError,
    UnsupportedScenarioError,
)
from liepoisson.generators import (
    center_generators,
    maximality_witness,
    monomial_powers_match,
    pc_generators,
    top_monomial,
    vandermonde_closure,
)
from liepoisson.invariants import (
    basic_invariants,
    check_adg_invariance,
    differential_rank,
    ggs_identity,
    manin_system,
)
from liepoisson.pencil import jk_profile
from liepoisson.polyring import H_MAX, R_MAX, component, gradient, jacobian_rank, supported_on
from liepoisson.rootdata import (
    MANIN_MAX_RANK,
    SUPPORTED,
    build_classical,
    coroot,
    highest_root_index,
    principal_nilpotent_point,
    simple_root_indices,
    splitting_for,
    validate_splitting,
    validate_structure,
)
from liepoisson.sampling import (
    coords_to_strings,
    derive_rng,
    hyperplane_point,
    random_parameter,
    random_point,
    sample_until,
)
from models import (
    INFINITY,
    ONE,
    SCENARIOS,
    ZERO,
    BracketParam,
    Certificate,
    Divisor,
    GeneratorSet,
    InvariantSet,
    LieAlgebraData,
    PointOnDual,
    Report,
    RunConfig,
    Splitting,
)

logger = logging.getLogger(__name__)

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"

# A check returns (status, witness); the runner adds name, seed and timing.
CheckResult = tuple[str, dict[str, Any]]


class RankEstimate(NamedTuple):
    value: int
    point: PointOnDual | None
    hits: int  # sampled points attaining value


def _point_doc(point: PointOnDual | None) -> list[str] | None:
    return None if point is None else coords_to_strings(point)


def _corank(m) -> int:
    return m.shape[0] - m.rank()


# ---------------------------------------------------------------------------
# Public checks
# ---------------------------------------------------------------------------

def check_commute(gs: GeneratorSet, s: Splitting, t: BracketParam, *, seed: int = 0) -> Certificate:
    """Pass iff {F_a, F_b}_t is the zero polynomial for every pair of members."""
    items = gs.items
    checked = 0
    for a, b in combinations(range(len(items)), 2):
        checked += 1
        if bracket_t(items[a].poly, items[b].poly, s, t):
            witness = {"pairs_checked": checked, "failing_pair": [items[a].label, items[b].label]}
            return Certificate(f"commute_{t}", FAIL, witness, seed)
    return Certificate(f"commute_{t}", PASS, {"pairs_checked": checked, "members": len(items)}, seed)


def trdeg_estimate(gs: GeneratorSet, trials: int, seed: int, *, bound: int = 20) -> RankEstimate:
    """Largest Jacobian rank of the set over `trials` random points."""
    if trials < 1:
        raise SamplingError("trdeg_estimate needs at least one trial")
    polys = gs.polys
    if not polys:
        return RankEstimate(0, None, 0)
    dim = polys[0].ring.ngens
    grads = [gradient(p) for p in polys]
    rng = derive_rng(seed, "trdeg")
    best, hits = RankEstimate(-1, None, 0), 0
    for _ in range(trials):
        point = random_point(dim, rng, bound)
        rank = jacobian_rank(polys, point, gradients=grads)
        if rank > best.value:
            best, hits = RankEstimate(rank, point, 0), 0
        if rank == best.value:
            hits += 1
    return best._replace(hits=hits)


def index_estimate(s: Splitting, t: BracketParam, trials: int, seed: int, *, bound: int = 20) -> RankEstimate:
    """Smallest corank of π_t over `trials` random points."""
    if trials < 1:
        raise SamplingError("index_estimate needs at least one trial")
    rng = derive_rng(seed, f"index_{t}")
    best, hits = RankEstimate(s.algebra.dim + 1, None, 0), 0
    for _ in range(trials):
        point = random_point(s.algebra.dim, rng, bound)
        corank = _corank(tensor_at(s, t, point))
        if corank < best.value:
            best, hits = RankEstimate(corank, point, 0), 0
        if corank == best.value:
            hits += 1
    return best._replace(hits=hits)


def completeness_check(gs: GeneratorSet, point: PointOnDual, s: Splitting, g: LieAlgebraData,
                       *, seed: int = 0) -> Certificate:
    """Regular ξ with dim d_ξ(gs) = b(g): the set is complete on the orbit of ξ."""
    if not any(point.coords):
        return Certificate("completeness", PASS, {"orbit_dim": 0, "trivial": True}, seed)
    corank = _corank(tensor_at(s, ONE, point))
    dim_d = jacobian_rank(gs.polys, point)
    witness = {
        "point": _point_doc(point),
        "corank": corank,
        "expected_corank": g.index,
        "differential_dim": dim_d,
        "expected_differential_dim": g.magic_number,
    }
    passed = corank == g.index and dim_d == g.magic_number
    return Certificate("completeness", PASS if passed else FAIL, witness, seed)


def singular_divisors(g: LieAlgebraData, end: str) -> list[Divisor]:
    """Irreducible divisors of the singular set of g_(∞) (end "inf") or g_(0) (end "0")."""
    if end == "inf":
        return [Divisor("root", k) for k in range(len(g.positive_roots))]
    return [Divisor("simple", i) for i, a in enumerate(g.highest_root) if a > 1]


def divisor_label(g: LieAlgebraData, divisor: Divisor) -> str:
    if divisor.kind == "root":
        return "D(" + "".join(str(c) for c in g.positive_roots[divisor.index]) + ")"
    return f"D_{divisor.index + 1}"


def divisor_draw(s: Splitting, divisor: Divisor, rng, bound: int) -> Callable[[], PointOnDual]:
    g = s.algebra
    if divisor.kind == "root":
        normal = coroot(g, divisor.index)
        return lambda: hyperplane_point(normal, rng, bound)
    if g.highest_root[divisor.index] == 1:
        raise UnsupportedDivisorError(
            f"D_{divisor.index + 1} needs a_{divisor.index + 1} > 1; with a_i = 1 (always so in type A) "
            "f_i is not a factor of the fundamental semi-invariant"
        )
    _, f_simple = simple_root_indices(g)
    target = f_simple[divisor.index]

    def draw() -> PointOnDual:
        coords = list(random_point(g.dim, rng, bound).coords)
        coords[target] = QQ.zero
        return PointOnDual(tuple(coords))

    return draw


def divisor_corank(s: Splitting, divisor: Divisor, t: BracketParam, trials: int, seed: int,
                   *, bound: int = 20) -> RankEstimate:
    """Smallest corank of π_t over `trials` points sampled on the divisor."""
    if trials < 1:
        raise SamplingError("divisor_corank needs at least one trial")
    rng = derive_rng(seed, f"divisor_{t}_{divisor_label(s.algebra, divisor)}")
    draw = divisor_draw(s, divisor, rng, bound)
    best, hits = RankEstimate(s.algebra.dim + 1, None, 0), 0
    for _ in range(trials):
        point = draw()
        corank = _corank(tensor_at(s, t, point))
        if corank < best.value:
            best, hits = RankEstimate(corank, point, 0), 0
        if corank == best.value:
            hits += 1
    return best._replace(hits=hits)


# ---------------------------------------------------------------------------
# Scenario context
# ---------------------------------------------------------------------------

@dataclass
class ScenarioContext:
    scenario: str
    g: LieAlgebraData  # the simple algebra (the ambient one for borel)
    split: Splitting
    inv: InvariantSet
    pc: GeneratorSet
    centres: dict[str, GeneratorSet]
    samples: int
    bound: int
    retry_budget: int
    seed: int

    @property
    def algebra(self) -> LieAlgebraData:
        return self.split.algebra

    @property
    def system(self) -> list[tuple[str, Any, int]]:
        """(label, polynomial, degree) of the invariants the scenario is built from."""
        if self.scenario == "manin":
            return [(label, p, d) for label, p, d, _ in manin_system(self.inv)]
        return list(zip(self.inv.labels, self.inv.polys, self.inv.degrees))


def _bounded(found: int, expected: int, *, ceiling: bool) -> str:
    """Status of a sampled value; expected is a ceiling (or a floor) for it."""
    if found == expected:
        return PASS
    if (found > expected) == ceiling:
        return FAIL
    return INCONCLUSIVE


def _exact(ok: bool) -> str:
    return PASS if ok else FAIL


# ---------------------------------------------------------------------------
# Checks shared by all scenarios
# ---------------------------------------------------------------------------

def _structure(ctx: ScenarioContext, rng) -> CheckResult:
    report = validate_structure(ctx.algebra)
    return _exact(report.passed), {
        "failed": [c.name for c in report.checks if not c.passed],
        "details": {c.name: c.detail for c in report.checks if c.detail},
    }


def _splitting(ctx: ScenarioContext, rng) -> CheckResult:
    report = validate_splitting(ctx.split)
    return _exact(report.passed), {
        "failed": [c.name for c in report.checks if not c.passed],
        "dim_h": len(ctx.split.h_indices),
        "dim_r": len(ctx.split.r_indices),
    }


def _invariants(ctx: ScenarioContext, rng) -> CheckResult:
    g = ctx.algebra
    not_invariant = [label for label, p in zip(ctx.inv.labels, ctx.inv.polys) if not check_adg_invariance(p, g)]
    degree_sum = sum(ctx.inv.degrees)
    witness = {
        "labels": list(ctx.inv.labels),
        "degrees": list(ctx.inv.degrees),
        "degree_sum": degree_sum,
        "expected_degree_sum": g.magic_number,
        "not_invariant": not_invariant,
    }
    return _exact(not not_invariant and degree_sum == g.magic_number and len(ctx.inv) == g.index), witness


def _ggs_identity(ctx: ScenarioContext, rng) -> CheckResult:
    sides = {"borel": (R_MAX,), "involution": (R_MAX, H_MAX), "manin": (H_MAX,)}[ctx.scenario]
    witness, ok = {}, True
    for side in sides:
        total, dim = ggs_identity(ctx.inv, ctx.split, side)
        key = "r" if side == R_MAX else "h"
        witness[key] = {"degree_sum": total, "dim": dim}
        ok = ok and total == dim
    return _exact(ok), witness


def _restriction(ctx: ScenarioContext, rng) -> CheckResult:
    s = ctx.split
    bad = []
    if ctx.scenario == "manin":
        diag_t = s.algebra.layout["diag_t"]
        for label, p, d in ctx.system:
            if label.startswith("P") and not supported_on(component(p, s, 0), diag_t):
                bad.append(f"({label})_0,{d}")
            if label.startswith("M") and component(p, s, d):
                bad.append(f"({label})_{d},0")
    else:
        for label, p, d in ctx.system:
            if component(p, s, 0):
                bad.append(f"({label})_0,{d}")
            if ctx.scenario == "borel":
                cartan_part = component(p, s, d)
                if not cartan_part or not supported_on(cartan_part, s.algebra.layout["t"]):
                    bad.append(f"({label})_{d},0")
    return _exact(not bad), {"violations": bad}


def _kostant_regularity(ctx: ScenarioContext, rng) -> CheckResult:
    """rank {d_ξ H_j} = l exactly when corank π_1(ξ) = l."""
    g = ctx.algebra
    points = [("zero", PointOnDual.of([0] * g.dim))]
    if ctx.scenario == "borel":
        points.append(("y", principal_nilpotent_point(g)[1]))
    points += [(f"sample{k}", random_point(g.dim, rng, ctx.bound)) for k in range(ctx.samples)]
    rows, ok = [], True
    for name, point in points:
        regular = _corank(tensor_at(ctx.split, ONE, point)) == g.index
        independent = differential_rank(ctx.inv, point) == g.index
        ok = ok and regular == independent
        rows.append({"point": name, "regular": regular, "independent": independent})
    return _exact(ok), {"points": rows}


def _contraction_identity(ctx: ScenarioContext, rng) -> CheckResult:
    s = ctx.split
    rows, ok = [], True
    for t in (BracketParam.of(2), BracketParam.of("-1/3")):
        point = random_point(s.algebra.dim, rng, ctx.bound)
        left = tensor_at(s, t, point).rank()
        right = tensor_at(s, ONE, contracted_point(s, t, point)).rank()
        ok = ok and left == right
        rows.append({"t": str(t), "point": _point_doc(point), "rank_t": left, "rank_1": right})
    return _exact(ok), {"samples": rows}


def _family_jacobi(ctx: ScenarioContext, rng) -> CheckResult:
    s = ctx.split
    labels = s.algebra.labels
    rows, ok = [], True
    for t in (ZERO, INFINITY, BracketParam(random_parameter(rng, ctx.bound))):
        triple = family_jacobi(s, t)
        ok = ok and triple is None
        rows.append({"t": str(t), "violation": None if triple is None else [labels[i] for i in triple]})
    return _exact(ok), {"parameters": rows}


def _phi_conjugation(ctx: ScenarioContext, rng) -> CheckResult:
    """{x, y}_t = φ_t^{-1}([φ_t x, φ_t y]) on all basis pairs."""
    s = ctx.split
    labels = s.algebra.labels
    rows, ok = [], True
    for t in (BracketParam.of(2), BracketParam(random_parameter(rng, ctx.bound))):
        bad = phi_conjugation_mismatches(s, t)
        ok = ok and not bad
        rows.append({"t": str(t), "mismatches": [[labels[i], labels[j]] for i, j in bad[:5]]})
    return _exact(ok), {"parameters": rows}


def _centre(end: str) -> Callable[[ScenarioContext, Any], CheckResult]:
    param = ZERO if end == "0" else INFINITY

    def check(ctx: ScenarioContext, rng) -> CheckResult:
        gs = ctx.centres[end]
        s = ctx.split
        gens = s.algebra.ring.gens
        not_central = [
            item.label for item in gs.items if any(bracket_t(item.poly, x, s, param) for x in gens)
        ]
        witness = {
            "members": [item.label for item in gs.items],
            "count": len(gs),
            "expected_count": gs.expected_count,
            "not_central": not_central,
        }
        ok = len(gs) == gs.expected_count and not not_central
        if ctx.scenario == "borel" and end == "0":
            wrong = [
                item.label for item, d in zip(gs.items, ctx.inv.degrees) if tuple(item.bidegree) != (1, d - 1)
            ]
            witness["wrong_bidegree"] = wrong
            ok = ok and not wrong
        if not ok:
            return FAIL, witness

        polys = gs.polys
        grads = [gradient(p) for p in polys]
        point, tries = sample_until(
            lambda: random_point(s.algebra.dim, rng, ctx.bound),
            lambda pt: jacobian_rank(polys, pt, gradients=grads) == len(polys),
            ctx.retry_budget,
        )
        witness["independence_point"] = _point_doc(point)
        witness["tries"] = tries
        return (PASS if point is not None else INCONCLUSIVE), witness

    return check


def _pc_generators(ctx: ScenarioContext, rng) -> CheckResult:
    gs = ctx.pc
    zero = [item.label for item in gs.items if not item.poly]
    tags: dict[str, int] = {}
    for item in gs.items:
        tags[item.tag] = tags.get(item.tag, 0) + 1
    witness = {
        "count": len(gs),
        "expected_count": gs.expected_count,
        "zero_members": zero,
        "by_tag": tags,
        "members": [item.label for item in gs.items],
    }
    return _exact(len(gs) == gs.expected_count and not zero), witness


def _vandermonde_closure(ctx: ScenarioContext, rng) -> CheckResult:
    witness, ok = {}, True
    for t in (QQ(2), QQ(-3)):
        failures = vandermonde_closure(ctx.pc, ctx.inv, ctx.split, t)
        witness[str(t)] = failures
        ok = ok and not failures
    return _exact(ok), {"escaping": witness}


def _commute(t: BracketParam) -> Callable[[ScenarioContext, Any], CheckResult]:
    def check(ctx: ScenarioContext, rng) -> CheckResult:
        cert = check_commute(ctx.pc, ctx.split, t)
        return cert.status, cert.witness

    return check


def _trdeg(ctx: ScenarioContext, rng) -> CheckResult:
    estimate = trdeg_estimate(ctx.pc, ctx.samples, ctx.seed, bound=ctx.bound)
    expected = ctx.algebra.magic_number
    status = _bounded(estimate.value, expected, ceiling=True)
    if status == PASS and estimate.hits < min(3, ctx.samples):
        status = INCONCLUSIVE
    return status, {
        "value": estimate.value,
        "expected": expected,
        "points_at_value": estimate.hits,
        "trials": ctx.samples,
        "point": _point_doc(estimate.point),
    }


def _index(t: BracketParam) -> Callable[[ScenarioContext, Any], CheckResult]:
    def check(ctx: ScenarioContext, rng) -> CheckResult:
        estimate = index_estimate(ctx.split, t, ctx.samples, ctx.seed, bound=ctx.bound)
        expected = ctx.algebra.index
        return _bounded(estimate.value, expected, ceiling=False), {
            "value": estimate.value,
            "expected": expected,
            "trials": ctx.samples,
            "point": _point_doc(estimate.point),
        }

    return check


def _kernel_sum(ctx: ScenarioContext, rng) -> CheckResult:
    """dim Σ_t ker π_t(ξ) = b at a point regular for every t."""
    s = ctx.split
    expected = s.algebra.magic_number
    for tries in range(1, ctx.retry_budget + 1):
        point = random_point(s.algebra.dim, rng, ctx.bound)
        profile = jk_profile(pencil_at(s, point), seed=rng.randrange(2 ** 32))
        if profile.singular:
            logger.debug("Kernel-sum sample %d has singular lines, retrying", tries)
            continue
        return _exact(profile.kernel_sum_dim == expected), {
            "point": _point_doc(point),
            "kernel_sum_dim": profile.kernel_sum_dim,
            "expected": expected,
            "generic_rank": profile.generic_rank,
            "tries": tries,
        }
    return INCONCLUSIVE, {"tries": ctx.retry_budget}


# ---------------------------------------------------------------------------
# Borel-only checks
# ---------------------------------------------------------------------------

def _torus_invariance(ctx: ScenarioContext, rng) -> CheckResult:
    g = ctx.algebra
    gens = g.ring.gens
    moved = [
        item.label for item in ctx.pc.items
        if any(lie_poisson(item.poly, gens[k], g) for k in g.layout["t"])
    ]
    return _exact(not moved), {"not_invariant": moved}


def _top_monomial(ctx: ScenarioContext, rng) -> CheckResult:
    scalar, ok = top_monomial(ctx.g, ctx.split, ctx.inv)
    powers = ok and monomial_powers_match(ctx.g, ctx.split, ctx.inv)
    return _exact(ok and powers), {
        "scalar": None if scalar is None else str(scalar),
        "highest_root": list(ctx.g.highest_root),
        "powers_match": bool(powers),
    }


def _completeness_y(ctx: ScenarioContext, rng) -> CheckResult:
    _, y = principal_nilpotent_point(ctx.g)
    cert = completeness_check(ctx.pc, y, ctx.split, ctx.g)
    return cert.status, cert.witness


def _completeness_regular(ctx: ScenarioContext, rng) -> CheckResult:
    g, s = ctx.g, ctx.split
    b, found = g.magic_number, []
    wanted = min(3, ctx.samples)
    grads = [gradient(p) for p in ctx.pc.polys]
    for _ in range(ctx.retry_budget):
        point = random_point(g.dim, rng, ctx.bound)
        if _corank(tensor_at(s, ONE, point)) != g.index:
            continue
        dim_d = jacobian_rank(ctx.pc.polys, point, gradients=grads)
        if dim_d > b:
            return FAIL, {"point": _point_doc(point), "differential_dim": dim_d, "expected": b}
        if dim_d == b:
            found.append(_point_doc(point))
            if len(found) == wanted:
                return PASS, {"points": found, "differential_dim": b}
    return INCONCLUSIVE, {"points": found, "wanted": wanted}


def _divisors(end: str) -> Callable[[ScenarioContext, Any], CheckResult]:
    param = INFINITY if end == "inf" else ZERO

    def check(ctx: ScenarioContext, rng) -> CheckResult:
        g, s = ctx.g, ctx.split
        divisors = singular_divisors(g, end)
        if not divisors:
            return PASS, {"vacuous": True, "reason": "all highest-root coefficients equal 1"}
        expected = g.index + 2
        rows, statuses = [], []
        for divisor in divisors:
            estimate = divisor_corank(s, divisor, param, ctx.samples, ctx.seed, bound=ctx.bound)
            status = _bounded(estimate.value, expected, ceiling=False)
            statuses.append(status)
            rows.append({
                "divisor": divisor_label(g, divisor),
                "corank": estimate.value,
                "point": _point_doc(estimate.point),
            })
        return _worst(statuses), {"expected": expected, "divisors": rows}

    return check


def _worst(statuses: list[str]) -> str:
    if FAIL in statuses:
        return FAIL
    if INCONCLUSIVE in statuses:
        return INCONCLUSIVE
    return PASS


def _diamond(g: LieAlgebraData) -> Callable[[PointOnDual], bool]:
    """ξ is nonzero on at least l of e_δ, f_1, ..., f_l."""
    _, f_simple = simple_root_indices(g)
    watched = [highest_root_index(g)] + list(f_simple)
    return lambda point: sum(1 for k in watched if point.coords[k]) >= g.index


def _witness_search(ctx: ScenarioContext, draw) -> CheckResult:
    g = ctx.g
    gs = maximality_witness(g, ctx.split, ctx.inv)
    expected = g.magic_number + g.index
    grads = [gradient(p) for p in gs.polys]
    diamond = _diamond(g)
    best = -1
    for tries in range(1, ctx.retry_budget + 1):
        point = draw()
        if not diamond(point):
            continue
        rank = jacobian_rank(gs.polys, point, gradients=grads)
        best = max(best, rank)
        if rank >= expected:
            return _bounded(rank, expected, ceiling=True), {
                "point": _point_doc(point), "rank": rank, "expected": expected, "tries": tries,
            }
    return INCONCLUSIVE, {"best_rank": best, "expected": expected}


def _witness_rank(ctx: ScenarioContext, rng) -> CheckResult:
    return _witness_search(ctx, lambda: random_point(ctx.g.dim, rng, ctx.bound))


def _witness_rank_divisor(ctx: ScenarioContext, rng) -> CheckResult:
    rows, statuses = [], []
    for divisor in singular_divisors(ctx.g, "inf"):
        status, witness = _witness_search(ctx, divisor_draw(ctx.split, divisor, rng, ctx.bound))
        statuses.append(status)
        rows.append({"divisor": divisor_label(ctx.g, divisor), "status": status, **witness})
    return _worst(statuses), {"divisors": rows}


def _kernel_sum_divisor(ctx: ScenarioContext, rng) -> CheckResult:
    """On a generic point of D(α) the pencil has one Jordan line (at ∞) and dim L = b - 1."""
    g, s = ctx.g, ctx.split
    expected = g.magic_number - 1
    rows, statuses = [], []
    for divisor in singular_divisors(g, "inf"):
        draw = divisor_draw(s, divisor, rng, ctx.bound)
        row = {"divisor": divisor_label(g, divisor), "status": INCONCLUSIVE}
        for tries in range(1, ctx.retry_budget + 1):
            point = draw()
            profile = jk_profile(pencil_at(s, point), seed=rng.randrange(2 ** 32))
            check = profile.jordan_line_check
            only_infinity = [sp.kind for sp in profile.singular] == ["infinity"]
            if not only_infinity or not check or not check.get("hypothesis"):
                continue
            ok = check["conclusions_hold"] and profile.kernel_sum_dim == expected
            row.update({
                "status": _exact(ok),
                "point": _point_doc(point),
                "kernel_sum_dim": profile.kernel_sum_dim,
                "intersection_dim": check["intersection_dim"],
                "pairing_vanishes": check["pairing_vanishes"],
                "tries": tries,
            })
            break
        statuses.append(row["status"])
        rows.append(row)
    return _worst(statuses), {"expected": expected, "divisors": rows}


# ---------------------------------------------------------------------------
# Orchestration
# ---------------------------------------------------------------------------

COMMON_CHECKS: list[tuple[str, Callable]] = [
    ("structure", _structure),
    ("splitting", _splitting),
    ("invariants", _invariants),
    ("ggs_identity", _ggs_identity),
    ("restriction", _restriction),
    ("kostant_regularity", _kostant_regularity),
    ("family_jacobi", _family_jacobi),
    ("phi_conjugation", _phi_conjugation),
    ("contraction_identity", _contraction_identity),
    ("centre_0", _centre("0")),
    ("centre_inf", _centre("inf")),
    ("pc_generators", _pc_generators),
    ("vandermonde_closure", _vandermonde_closure),
    ("commute_0", _commute(ZERO)),
    ("commute_1", _commute(ONE)),
    ("commute_inf", _commute(INFINITY)),
    ("trdeg", _trdeg),
    ("index_0", _index(ZERO)),
    ("index_1", _index(ONE)),
    ("index_inf", _index(INFINITY)),
    ("kernel_sum", _kernel_sum),
]

BOREL_CHECKS: list[tuple[str, Callable]] = [
    ("torus_invariance", _torus_invariance),
    ("top_monomial", _top_monomial),
    ("completeness_y", _completeness_y),
    ("completeness_regular", _completeness_regular),
    ("divisor_inf", _divisors("inf")),
    ("divisor_0", _divisors("0")),
    ("witness_rank", _witness_rank),
    ("witness_rank_divisor", _witness_rank_divisor),
    ("kernel_sum_divisor", _kernel_sum_divisor),
]


def checks_for(scenario: str) -> list[tuple[str, Callable]]:
    return COMMON_CHECKS + (BOREL_CHECKS if scenario == "borel" else [])


def _run_check(name: str, fn: Callable, ctx: ScenarioContext, seed: int) -> Certificate:
    start = time.perf_counter()
    try:
        status, witness = fn(ctx, derive_rng(seed, name))
    except Exception as exc:
        logger.error("Check %s raised: %s", name, exc)
        status, witness = FAIL, {"error": f"{type(exc).__name__}: {exc}"}
    elapsed = round((time.perf_counter() - start) * 1000, 3)
    if status == INCONCLUSIVE:
        logger.warning("Check %s inconclusive within the retry budget", name)
    else:
        logger.info("Check %s: %s (%.1f ms)", name, status, elapsed)
    return Certificate(name, status, witness, seed, elapsed)


def prepare(scenario: str, series: str, rank: int, *, samples: int = 16, bound: int = 20,
            retry_budget: int = 64, transform: Callable[[LieAlgebraData], LieAlgebraData] | None = None,
            seed: int = 42) -> ScenarioContext:
    """Algebra, splitting, invariants and generator sets of a scenario."""
    g = build_classical(series, rank)
    s = splitting_for(scenario, g)
    if transform is not None:
        s = Splitting(transform(s.algebra), s.h_indices, s.r_indices, s.scenario)
        if scenario == "borel":
            g = s.algebra
    inv = basic_invariants(s.algebra)
    return ScenarioContext(
        scenario=scenario,
        g=g,
        split=s,
        inv=inv,
        pc=pc_generators(scenario, g, s, inv),
        centres={end: center_generators(s, end, inv) for end in ("0", "inf")},
        samples=samples,
        bound=bound,
        retry_budget=retry_budget,
        seed=seed,
    )


def artifact_digests(ctx: ScenarioContext) -> dict[str, str]:
    """sha256 of each document the certificates were computed from.

    Keys name the command that regenerates the document with the same
    --scenario: "algebra" (build), "invariants" (invariants) and
    "generators:<role>" (generators --role).
    """
    algebra = ctx.algebra
    digests = {
        "algebra": document_digest(algebra_document(algebra, ctx.split)),
        "invariants": document_digest(invariants_document(ctx.inv, algebra)),
    }
    sets = [ctx.pc, ctx.centres["0"], ctx.centres["inf"]]
    if ctx.scenario == "borel":
        try:
            sets.append(maximality_witness(ctx.g, ctx.split, ctx.inv))
        except Exception as exc:
            logger.error("No witness document to digest: %s", exc)
    for gs in sets:
        digests[f"generators:{gs.role}"] = document_digest(generators_document(gs, algebra))
    return digests


def _validate_request(scenario: str, series: str, rank: int, samples: int, bound: int) -> None:
    if scenario not in SCENARIOS:
        raise UnsupportedScenarioError(f"unsupported scenario {scenario!r}; expected one of {', '.join(SCENARIOS)}")
    if rank not in SUPPORTED.get(series, ()):
        raise UnsupportedAlgebraError(f"{series}{rank} is not a supported algebra")
    if scenario == "involution" and series != "A":
        raise UnsupportedScenarioError("the involution scenario is implemented for type A only")
    if scenario == "manin" and rank > MANIN_MAX_RANK:
        raise UnsupportedScenarioError(f"the manin scenario is supported up to rank {MANIN_MAX_RANK}")
    if samples < 1:
        raise SamplingError(f"samples must be positive, got {samples}")
    if bound < 1:
        raise SamplingError(f"coordinate bound must be positive, got {bound}")


def run_scenario(scenario: str, series: str, rank: int, seed: int = 42, samples: int = 16, *,
                 bound: int = 20, retry_budget: int = 64,
                 transform: Callable[[LieAlgebraData], LieAlgebraData] | None = None,
                 workers: int = 1, out: str | None = None) -> Report:
    _validate_request(scenario, series, rank, samples, bound)
    config = RunConfig("verify", series, rank, scenario, seed, samples, bound, out)
    logger.info("Running %s scenario for %s%d (seed %d, %d samples)", scenario, series, rank, seed, samples)

    start = time.perf_counter()
    try:
        ctx = prepare(scenario, series, rank, samples=samples, bound=bound,
                      retry_budget=retry_budget, transform=transform, seed=seed)
    except Exception as exc:
        logger.error("Setup of the %s scenario failed: %s", scenario, exc)
        elapsed = round((time.perf_counter() - start) * 1000, 3)
        failed = Certificate("setup", FAIL, {"error": f"{type(exc).__name__}: {exc}"}, seed, elapsed)
        return Report(config, (failed,))

    plan = checks_for(scenario)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_check, name, fn, ctx, seed) for name, fn in plan]
            checks = tuple(f.result() for f in futures)
    else:
        checks = tuple(_run_check(name, fn, ctx, seed) for name, fn in plan)

    report = Report(config, checks, ctx.algebra.realization_tag, artifact_digests(ctx))
    logger.info("Scenario %s for %s%d: %s", scenario, series, rank, report.status)
    return report
