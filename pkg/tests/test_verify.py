import pytest

from liepoisson.documents import report_document
from liepoisson.errors import (
    SamplingError,
    UnsupportedAlgebraError,
    UnsupportedDivisorError,
    UnsupportedScenarioError,
)
from liepoisson.generators import pc_generators
from liepoisson.invariants import basic_invariants
from liepoisson.rootdata import (
    build_classical,
    perturb_constant,
    principal_nilpotent_point,
    splitting_borel_opposite,
)
from liepoisson.verify import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    _bounded,
    check_commute,
    checks_for,
    completeness_check,
    divisor_corank,
    divisor_draw,
    index_estimate,
    run_scenario,
    singular_divisors,
    trdeg_estimate,
)
from models import INFINITY, ONE, ZERO, BracketParam, Divisor, GeneratorItem, GeneratorSet, PointOnDual


def generator_set(*polys) -> GeneratorSet:
    items = tuple(GeneratorItem(p, "test", f"F{k}") for k, p in enumerate(polys))
    return GeneratorSet(items, "borel", "pc", len(items))


@pytest.fixture(scope="module")
def sl2_report():
    return run_scenario("borel", "A", 1, seed=42, samples=16)


# ---------------------------------------------------------------------------
# Commutativity and estimates
# ---------------------------------------------------------------------------

def test_commute_pass(sl2_borel):
    e, h, f = sl2_borel.algebra.ring.gens
    cert = check_commute(generator_set(h, 4 * e * f), sl2_borel, ONE)
    assert cert.status == PASS
    assert cert.name == "commute_1"
    assert cert.witness["pairs_checked"] == 1


def test_commute_fail_names_the_pair(sl2_borel):
    e, h, f = sl2_borel.algebra.ring.gens
    cert = check_commute(generator_set(h, e * f, e), sl2_borel, ONE)
    assert cert.status == FAIL
    assert cert.witness["failing_pair"] == ["F0", "F2"]


def test_commute_empty_set(sl2_borel):
    cert = check_commute(generator_set(), sl2_borel, INFINITY)
    assert cert.status == PASS
    assert cert.name == "commute_inf"
    assert cert.witness["pairs_checked"] == 0


def test_commute_at_every_parameter(sl3, sl3_borel, sl3_inv):
    gs = pc_generators("borel", sl3, sl3_borel, sl3_inv)
    for t in (ZERO, ONE, INFINITY, BracketParam.of("-2/5")):
        assert check_commute(gs, sl3_borel, t).status == PASS


def test_trdeg(sl2_borel):
    e, h, f = sl2_borel.algebra.ring.gens
    assert trdeg_estimate(generator_set(h, e * f), 8, seed=1).value == 2
    assert trdeg_estimate(generator_set(h, e * f, 3 * h), 8, seed=1).value == 2
    assert trdeg_estimate(generator_set(), 8, seed=1).value == 0


def test_trdeg_manin_sl2(sl2, sl2_manin):
    gs = pc_generators("manin", sl2, sl2_manin, basic_invariants(sl2_manin.algebra))
    assert trdeg_estimate(gs, 8, seed=3).value == 4


def test_trdeg_monotone_in_trials(sl3, sl3_borel, sl3_inv):
    gs = pc_generators("borel", sl3, sl3_borel, sl3_inv)
    values = [trdeg_estimate(gs, k, seed=9).value for k in (1, 2, 4, 8)]
    assert values == sorted(values)


def test_trdeg_needs_a_trial(sl2_borel):
    with pytest.raises(SamplingError):
        trdeg_estimate(generator_set(sl2_borel.algebra.ring.gens[1]), 0, seed=1)


@pytest.mark.parametrize("t", [ZERO, ONE, INFINITY])
def test_index_sl2_borel(sl2_borel, t):
    assert index_estimate(sl2_borel, t, 8, seed=5).value == 1


def test_index_manin_sl2(sl2_manin):
    assert index_estimate(sl2_manin, ZERO, 8, seed=5).value == 2


def test_index_monotone_in_trials(sl3_borel):
    values = [index_estimate(sl3_borel, ZERO, k, seed=2).value for k in (1, 2, 4, 8)]
    assert values == sorted(values, reverse=True)


def test_bounded_statuses():
    assert _bounded(5, 5, ceiling=True) == PASS
    assert _bounded(6, 5, ceiling=True) == FAIL
    assert _bounded(4, 5, ceiling=True) == INCONCLUSIVE
    assert _bounded(2, 2, ceiling=False) == PASS
    assert _bounded(1, 2, ceiling=False) == FAIL
    assert _bounded(3, 2, ceiling=False) == INCONCLUSIVE


# ---------------------------------------------------------------------------
# Completeness and divisors
# ---------------------------------------------------------------------------

def test_completeness_at_nilpotent_sl3(sl3, sl3_borel, sl3_inv):
    gs = pc_generators("borel", sl3, sl3_borel, sl3_inv)
    _, y = principal_nilpotent_point(sl3)
    cert = completeness_check(gs, y, sl3_borel, sl3)
    assert cert.status == PASS
    assert cert.witness["differential_dim"] == 5
    assert cert.witness["corank"] == 2


@pytest.mark.slow
@pytest.mark.parametrize("series,rank", [("A", 3), ("C", 2)])
def test_commute_and_complete_larger(series, rank):
    g = build_classical(series, rank)
    s = splitting_borel_opposite(g)
    gs = pc_generators("borel", g, s, basic_invariants(g))
    for t in (ZERO, ONE, INFINITY):
        assert check_commute(gs, s, t).status == PASS
    _, y = principal_nilpotent_point(g)
    cert = completeness_check(gs, y, s, g)
    assert cert.status == PASS
    assert cert.witness["differential_dim"] == g.magic_number


def test_completeness_at_zero_is_trivial(sl2, sl2_borel, sl2_inv):
    gs = pc_generators("borel", sl2, sl2_borel, sl2_inv)
    cert = completeness_check(gs, PointOnDual.of([0, 0, 0]), sl2_borel, sl2)
    assert cert.status == PASS
    assert cert.witness["orbit_dim"] == 0


def test_singular_divisors(sl3, sp4):
    assert singular_divisors(sl3, "inf") == [Divisor("root", k) for k in range(3)]
    assert singular_divisors(sl3, "0") == []
    assert singular_divisors(sp4, "0") == [Divisor("simple", 0)]


def test_root_divisor_corank_sl2(sl2_borel):
    estimate = divisor_corank(sl2_borel, Divisor("root", 0), INFINITY, 6, seed=11)
    assert estimate.value == 3
    assert estimate.point.coords[1] == 0


def test_root_divisors_sl3(sl3_borel):
    for k in range(3):
        estimate = divisor_corank(sl3_borel, Divisor("root", k), INFINITY, 8, seed=4)
        assert estimate.value == 4


def test_simple_divisor_needs_coefficient_above_one(sl3_borel):
    with pytest.raises(UnsupportedDivisorError):
        divisor_draw(sl3_borel, Divisor("simple", 0), None, 5)


@pytest.mark.slow
def test_simple_divisor_corank_so5(so5):
    s = splitting_borel_opposite(so5)
    estimate = divisor_corank(s, Divisor("simple", 1), ZERO, 6, seed=11)
    assert estimate.value == so5.index + 2


# ---------------------------------------------------------------------------
# Scenarios
# ---------------------------------------------------------------------------

def test_sl2_borel_all_pass(sl2_report):
    failed = [(c.name, c.status, c.witness) for c in sl2_report.checks if c.status != PASS]
    assert failed == []
    assert [c.name for c in sl2_report.checks] == [name for name, _ in checks_for("borel")]


def test_sl2_borel_witnesses(sl2_report):
    assert sl2_report.get("divisor_0").witness["vacuous"] is True
    assert sl2_report.get("trdeg").witness["value"] == 2
    assert sl2_report.get("kernel_sum").witness["kernel_sum_dim"] == 2
    assert sl2_report.get("completeness_y").witness["differential_dim"] == 2
    assert [row["violation"] for row in sl2_report.get("family_jacobi").witness["parameters"]] == [None] * 3
    assert sl2_report.get("phi_conjugation").witness["parameters"][0] == {"t": "2", "mismatches": []}


@pytest.mark.parametrize("scenario", ["involution", "manin"])
def test_sl2_other_scenarios_pass(scenario):
    report = run_scenario(scenario, "A", 1, seed=7, samples=8)
    assert report.status == PASS, [(c.name, c.witness) for c in report.checks if not c.passed]
    assert len(report.checks) == len(checks_for(scenario))


def test_sl3_borel_passes():
    report = run_scenario("borel", "A", 2, seed=42, samples=8)
    assert report.status == PASS, [(c.name, c.witness) for c in report.checks if not c.passed]


@pytest.mark.slow
@pytest.mark.parametrize("scenario,series,rank", [
    ("borel", "A", 3),
    ("borel", "C", 2),
    ("borel", "B", 2),
    ("involution", "A", 2),
    ("involution", "A", 3),
    ("manin", "A", 2),
])
def test_larger_scenarios_pass(scenario, series, rank):
    report = run_scenario(scenario, series, rank, seed=42, samples=8)
    assert report.status == PASS, [(c.name, c.witness) for c in report.checks if not c.passed]


def test_perturbed_structure_constant_fails():
    report = run_scenario(
        "borel", "A", 1, seed=42, samples=4,
        transform=lambda g: perturb_constant(g, 0, 2, 0, 1),
    )
    assert report.status == FAIL
    assert report.get("structure").status == FAIL
    assert "jacobi" in report.get("structure").witness["failed"]
    assert report.get("family_jacobi").status == FAIL
    rows = report.get("family_jacobi").witness["parameters"]
    assert [row["violation"] for row in rows] == [None, None, ["e_1", "h_1", "f_1"]]


def test_runs_are_reproducible(sl2_report):
    again = run_scenario("borel", "A", 1, seed=42, samples=16)
    assert report_document(again) == report_document(sl2_report)


def test_workers_do_not_change_the_report(sl2_report):
    parallel = run_scenario("borel", "A", 1, seed=42, samples=16, workers=3)
    assert report_document(parallel) == report_document(sl2_report)


def test_seed_is_recorded(sl2_report):
    assert sl2_report.config.seed == 42
    assert all(c.seed == 42 for c in sl2_report.checks)


@pytest.mark.parametrize("kwargs,error", [
    ({"scenario": "parabolic"}, UnsupportedScenarioError),
    ({"series": "C", "scenario": "involution", "rank": 2}, UnsupportedScenarioError),
    ({"rank": 4, "scenario": "manin"}, UnsupportedScenarioError),
    ({"series": "E", "rank": 6}, UnsupportedAlgebraError),
    ({"samples": 0}, SamplingError),
    ({"bound": 0}, SamplingError),
])
def test_rejected_requests(kwargs, error):
    request = {"scenario": "borel", "series": "A", "rank": 1, "samples": 4, "bound": 20, **kwargs}
    with pytest.raises(error):
        run_scenario(request["scenario"], request["series"], request["rank"],
                     samples=request["samples"], bound=request["bound"])
