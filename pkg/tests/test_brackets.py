import random

import pytest
from sympy.polys.domains import QQ

from liepoisson.brackets import (
    bracket_t,
    conjugated_constants,
    contracted_constants,
    contracted_point,
    family_jacobi,
    lie_poisson,
    lie_tensor,
    pencil_at,
    phi_conjugation_mismatches,
    tensor_at,
)
from liepoisson.errors import DimensionMismatchError, InvalidScalarError
from liepoisson.pencil import rank_and_kernel
from liepoisson.rootdata import perturb_constant
from liepoisson.sampling import random_parameter, random_point
from models import INFINITY, ONE, ZERO, BracketParam, PointOnDual, Splitting

SPLITTINGS = ["sl2_borel", "sl3_borel", "sl2_involution", "sl3_involution", "sl2_manin", "sl3_manin"]


def test_lie_poisson_on_coordinates(sl2):
    e, h, f = sl2.ring.gens
    assert lie_poisson(e, f, sl2) == h
    assert lie_poisson(h, e, sl2) == 2 * e
    assert lie_poisson(f, e, sl2) == -h


def test_lie_poisson_leibniz(sl2):
    e, h, f = sl2.ring.gens
    assert lie_poisson(e, e * f, sl2) == e * h
    assert lie_poisson(h, e * f, sl2) == 0


def test_lie_poisson_rejects_foreign_polynomials(sl2, sl3):
    with pytest.raises(DimensionMismatchError):
        lie_poisson(sl3.ring.gens[0], sl2.ring.gens[0], sl2)


def test_borel_contractions(sl2_borel):
    e, h, f = sl2_borel.algebra.ring.gens
    assert bracket_t(e, f, sl2_borel, ZERO) == 0
    assert bracket_t(e, f, sl2_borel, INFINITY) == h
    assert bracket_t(h, f, sl2_borel, ZERO) == -2 * f
    assert bracket_t(h, f, sl2_borel, INFINITY) == 0
    assert bracket_t(e, h, sl2_borel, ZERO) == -2 * e
    assert bracket_t(e, h, sl2_borel, INFINITY) == 0


def test_family_is_linear_in_t(sl2_borel):
    e, h, f = sl2_borel.algebra.ring.gens
    t = BracketParam.of("3/2")
    assert bracket_t(e, f, sl2_borel, t) == QQ(3, 2) * h
    assert bracket_t(h, f, sl2_borel, t) == -2 * f


@pytest.mark.parametrize("fixture", ["sl2_borel", "sl3_borel", "sl2_involution", "sl2_manin"])
def test_t_one_is_the_lie_poisson_bracket(fixture, request):
    s = request.getfixturevalue(fixture)
    g = s.algebra
    gens = g.ring.gens
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            assert bracket_t(gens[i], gens[j], s, ONE) == lie_poisson(gens[i], gens[j], g)


def test_contracted_constants_drop_r_brackets(sl3_borel):
    c0 = contracted_constants(sl3_borel, "0")
    r = sl3_borel.r_set
    assert not any(i in r and j in r for i, j in c0)
    cinf = contracted_constants(sl3_borel, "inf")
    h = set(sl3_borel.h_indices)
    assert not any(i in h and j in h for i, j in cinf)


def test_tensor_at_infinity_sl2(sl2_borel):
    point = PointOnDual.of([0, 1, 0])
    m = tensor_at(sl2_borel, INFINITY, point)
    assert m.to_list() == [[0, 0, 1], [0, 0, 0], [-1, 0, 0]]
    rank, kernel = rank_and_kernel(m)
    assert rank == 2
    assert kernel == [(QQ(0), QQ(1), QQ(0))]


def test_tensor_at_one_matches_lie_tensor(sl3_borel):
    point = PointOnDual.of([3, -1, 2, 5, 0, 1, -4, 7])
    assert tensor_at(sl3_borel, ONE, point) == lie_tensor(sl3_borel.algebra, point)


def test_tensor_dimension_mismatch(sl2_borel):
    with pytest.raises(DimensionMismatchError):
        tensor_at(sl2_borel, ONE, PointOnDual.of([1, 2]))


def test_pencil_members(sl2_borel):
    point = PointOnDual.of([1, 2, 3])
    pencil = pencil_at(sl2_borel, point)
    t = BracketParam.of(5)
    assert pencil.member(t) == tensor_at(sl2_borel, t, point)
    assert pencil.member(INFINITY) == tensor_at(sl2_borel, INFINITY, point)


@pytest.mark.parametrize("t", ["2", "-1/3", "7"])
def test_contraction_identity(sl3_borel, t):
    param = BracketParam.of(t)
    point = PointOnDual.of([2, -3, 1, 4, -1, 5, 2, -2])
    moved = contracted_point(sl3_borel, param, point)
    assert tensor_at(sl3_borel, param, point).rank() == tensor_at(sl3_borel, ONE, moved).rank()


@pytest.mark.parametrize("t", [ZERO, INFINITY])
def test_contracted_point_needs_finite_nonzero_t(sl2_borel, t):
    with pytest.raises(InvalidScalarError):
        contracted_point(sl2_borel, t, PointOnDual.of([1, 1, 1]))


@pytest.mark.parametrize("fixture", SPLITTINGS)
@pytest.mark.parametrize("t", ["0", "inf", "-2/7", "5"])
def test_family_satisfies_jacobi(fixture, t, request):
    s = request.getfixturevalue(fixture)
    assert family_jacobi(s, BracketParam.of(t)) is None


@pytest.mark.parametrize("fixture", SPLITTINGS)
@pytest.mark.parametrize("t", ["3", "-2/7"])
def test_family_is_conjugate_through_phi(fixture, t, request):
    s = request.getfixturevalue(fixture)
    assert phi_conjugation_mismatches(s, BracketParam.of(t)) == []


def test_conjugated_constants_scale_r(sl2_borel):
    e, h, f = range(3)
    conjugated = conjugated_constants(sl2_borel, BracketParam.of(3))
    assert conjugated[(e, f)] == {h: QQ(3)}
    assert conjugated[(h, f)] == {f: QQ(-2)}
    assert conjugated[(e, h)] == {e: QQ(-2)}


@pytest.mark.parametrize("t", [ZERO, INFINITY])
def test_conjugated_constants_need_finite_nonzero_t(sl2_borel, t):
    with pytest.raises(InvalidScalarError):
        conjugated_constants(sl2_borel, t)


def test_broken_algebra_breaks_family_jacobi(sl2, sl2_borel):
    e, h, f = range(3)
    broken = perturb_constant(sl2, e, f, e, 1)
    s = Splitting(broken, sl2_borel.h_indices, sl2_borel.r_indices, "borel")
    assert family_jacobi(s, ONE) == (e, h, f)


def test_non_subalgebra_breaks_phi_conjugation(sl2, sl2_borel):
    e, h, f = range(3)
    broken = perturb_constant(sl2, e, h, f, 1)
    s = Splitting(broken, sl2_borel.h_indices, sl2_borel.r_indices, "borel")
    assert (e, h) in phi_conjugation_mismatches(s, BracketParam.of(2))


@pytest.mark.parametrize("fixture", SPLITTINGS)
@pytest.mark.parametrize("seed", [5, 61, 777])
def test_tensor_rank_is_even(fixture, seed, request):
    s = request.getfixturevalue(fixture)
    rng = random.Random(seed)
    point = random_point(s.algebra.dim, rng, 6)
    for t in (ZERO, INFINITY, BracketParam(random_parameter(rng, 6))):
        assert tensor_at(s, t, point).rank() % 2 == 0
