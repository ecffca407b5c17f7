"""
Generator sets built from the basic invariants.

  centre_generators   Poisson centres of the two contractions g_(0), g_(∞)
  pc_generators       the Poisson-commutative algebra Z_<h,r> of a scenario
  maximality_witness  Z_<b,u_-> extended by e_δ and f_1..f_l

Every generator is a bi-homogeneous component (or a linear coordinate)
tagged with where it comes from. The Vandermonde closure check confirms
that φ_t(H_j) lies in the algebra the set generates.
"""
import logging

from sympy.polys.domains import QQ

from liepoisson.errors import UnsupportedScenarioError
from liepoisson.invariants import by_factor, manin_system
from liepoisson.polyring import H_MAX, R_MAX, apply_phi, bidegree, component, supported_on, top_component
from liepoisson.rootdata import highest_root_index, simple_root_indices
from models import BiDegree, BracketParam, GeneratorItem, GeneratorSet, InvariantSet, LieAlgebraData, Splitting

logger = logging.getLogger(__name__)

TAG_COMPONENT = "bihomogeneous-component"
TAG_CARTAN = "cartan-basis"
TAG_DIAGONAL_CARTAN = "diagonal-cartan-basis"
TAG_TOP_R = "top-r-component"
TAG_TOP_H = "top-h-component"
TAG_HIGHEST_ROOT = "highest-root-vector"
TAG_SIMPLE_ROOT = "simple-root-vector"


def _end(end) -> str:
    if isinstance(end, BracketParam):
        if end.is_infinite:
            return "inf"
        if not end.value:
            return "0"
    elif str(end) in ("0", "inf", "∞"):
        return "0" if str(end) == "0" else "inf"
    raise UnsupportedScenarioError(f"centres exist at t = 0 and t = ∞ only, not {end}")


def _coordinate_items(s: Splitting, indices, tag: str) -> list[GeneratorItem]:
    ring = s.algebra.ring
    return [
        GeneratorItem(ring.gens[i], tag, s.algebra.labels[i], bidegree(ring.gens[i].LM, s))
        for i in indices
    ]


def _top_item(label: str, poly, s: Splitting, side: str, tag: str) -> GeneratorItem:
    deg, part = top_component(poly, s, side)
    marker = "^top" if side == R_MAX else "_top"
    return GeneratorItem(part, tag, f"({label}){marker}", deg)


def base_system(inv: InvariantSet, s: Splitting) -> list[tuple[str, object, int, int, int]]:
    """(label, H, d, lowest h-degree, highest h-degree) of the components used."""
    if s.scenario == "borel":
        return [(label, p, d, 1, d - 1) for label, p, d in zip(inv.labels, inv.polys, inv.degrees)]
    if s.scenario == "involution":
        return [(label, p, d, 1, d) for label, p, d in zip(inv.labels, inv.polys, inv.degrees)]
    if s.scenario == "manin":
        return [(label, p, d, 1, top) for label, p, d, top in manin_system(inv)]
    raise UnsupportedScenarioError(f"unknown scenario {s.scenario!r}")


def remainder_indices(s: Splitting) -> tuple[int, ...]:
    """Coordinates the components left out of the set may depend on."""
    if s.scenario == "borel":
        return s.algebra.layout["t"]
    if s.scenario == "manin":
        return s.algebra.layout["diag_t"]
    return ()


# ---------------------------------------------------------------------------
# Centres
# ---------------------------------------------------------------------------

def center_generators(s: Splitting, end, inv: InvariantSet) -> GeneratorSet:
    end = _end(end)
    g = s.algebra
    role = f"centre-{end}"
    if s.scenario in ("borel", "involution") and end == "0":
        items = [_top_item(label, p, s, R_MAX, TAG_TOP_R) for label, p in zip(inv.labels, inv.polys)]
    elif s.scenario == "borel":
        items = _coordinate_items(s, g.layout["t"], TAG_CARTAN)
    elif s.scenario == "involution":
        items = [_top_item(label, p, s, H_MAX, TAG_TOP_H) for label, p in zip(inv.labels, inv.polys)]
    elif s.scenario == "manin" and end == "0":
        items = [
            _top_item(f"H{j + 1}.I-H{j + 1}.II", first - second, s, R_MAX, TAG_TOP_R)
            for j, (first, second, _) in by_factor(inv).items()
        ]
        items += _coordinate_items(s, g.layout["diag_t"], TAG_DIAGONAL_CARTAN)
    elif s.scenario == "manin":
        items = [_top_item(label, p, s, H_MAX, TAG_TOP_H) for label, p, _, _ in manin_system(inv)]
    else:
        raise UnsupportedScenarioError(f"no centre description for ({s.scenario}, {end})")
    logger.info("Centre of the %s contraction at t=%s: %d generators", s.scenario, end, len(items))
    return GeneratorSet(tuple(items), s.scenario, role, g.index)


# ---------------------------------------------------------------------------
# PC-subalgebras
# ---------------------------------------------------------------------------

def pc_generators(scenario: str, g: LieAlgebraData, s: Splitting, inv: InvariantSet) -> GeneratorSet:
    """Free generators of Z_<h,r> for the borel, involution or manin scenario.

    g is the simple algebra the scenario starts from; s carries the ambient
    algebra (g itself, its adapted basis, or g×g).
    """
    if scenario != s.scenario:
        raise UnsupportedScenarioError(f"splitting is {s.scenario!r}, asked for {scenario!r}")
    items = []
    if scenario == "borel":
        items += _coordinate_items(s, s.algebra.layout["t"], TAG_CARTAN)
    for label, poly, d, lo, hi in base_system(inv, s):
        for i in range(lo, hi + 1):
            part = component(poly, s, i)
            if not part:
                logger.warning("Component (%s)_%d,%d vanishes", label, i, d - i)
                continue
            items.append(GeneratorItem(part, TAG_COMPONENT, f"({label})_{i},{d - i}", BiDegree(i, d - i)))
    if scenario == "manin":
        items += _coordinate_items(s, s.algebra.layout["diag_t"], TAG_DIAGONAL_CARTAN)

    expected = s.algebra.magic_number
    logger.info("%s generators for %s%d: %d (expected %d)", scenario, g.series, g.rank, len(items), expected)
    return GeneratorSet(tuple(items), scenario, "pc", expected)


def vandermonde_closure(gs: GeneratorSet, inv: InvariantSet, s: Splitting, t) -> list[str]:
    """Labels of the H_j for which φ_t(H_j) escapes the algebra generated by gs.

    φ_t(H) = Σ_i t^{d-i} H_{i,d-i}; the components in the set account for all
    terms but the ones supported on remainder_indices(s).
    """
    t = QQ.convert(t)
    members = {item.poly for item in gs.items}
    allowed = remainder_indices(s)
    failures = []
    for label, poly, d, lo, hi in base_system(inv, s):
        rest = apply_phi(poly, s, t)
        for i in range(lo, hi + 1):
            part = component(poly, s, i)
            if part and part not in members:
                failures.append(label)
                break
            rest -= part * t ** (d - i)
        else:
            if not supported_on(rest, allowed):
                failures.append(label)
    return failures


# ---------------------------------------------------------------------------
# Maximality witness
# ---------------------------------------------------------------------------

def maximality_witness(g: LieAlgebraData, s: Splitting, inv: InvariantSet) -> GeneratorSet:
    """Z_<b,u_-> with H_l^• replaced by e_δ, f_1, ..., f_l; size b(g) + l.

    H_l^• = c · e_δ Π f_i^{a_i} is generated by the root vectors, so it is left out.
    """
    if s.scenario != "borel":
        raise UnsupportedScenarioError("the maximality witness is defined for the borel scenario")
    base = pc_generators("borel", g, s, inv)
    _, top = top_component(inv.polys[-1], s, R_MAX)
    kept = tuple(item for item in base.items if item.poly != top)
    _, f_simple = simple_root_indices(g)
    extra = _coordinate_items(s, [highest_root_index(g)], TAG_HIGHEST_ROOT)
    extra += _coordinate_items(s, f_simple, TAG_SIMPLE_ROOT)
    return GeneratorSet(kept + tuple(extra), "borel", "witness", g.magic_number + g.rank)


def top_monomial(g: LieAlgebraData, s: Splitting, inv: InvariantSet):
    """(scalar c, ok): H_l^• = c · e_δ Π f_i^{a_i} with H_l of maximal degree."""
    _, top = top_component(inv.polys[-1], s, R_MAX)
    ring = g.ring
    _, f_simple = simple_root_indices(g)
    monomial = ring.gens[highest_root_index(g)]
    for idx, a in zip(f_simple, g.highest_root):
        monomial *= ring.gens[idx] ** a
    if len(top) != 1 or top.LM != monomial.LM:
        return None, False
    return top.LC, True


def monomial_powers_match(g: LieAlgebraData, s: Splitting, inv: InvariantSet, powers=(1, 2)) -> bool:
    """e_δ^c Π f_i^{c a_i} = (H_l^• / scalar)^c for the given c."""
    scalar, ok = top_monomial(g, s, inv)
    if not ok:
        return False
    _, top = top_component(inv.polys[-1], s, R_MAX)
    normalized = top.quo_ground(scalar)
    ring = g.ring
    _, f_simple = simple_root_indices(g)
    for c in powers:
        monomial = ring.gens[highest_root_index(g)] ** c
        for idx, a in zip(f_simple, g.highest_root):
            monomial *= ring.gens[idx] ** (c * a)
        if normalized ** c != monomial:
            return False
    return True
