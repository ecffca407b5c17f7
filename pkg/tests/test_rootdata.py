import pytest
from sympy.polys.domains import QQ

from liepoisson.errors import UnsupportedAlgebraError, UnsupportedScenarioError
from liepoisson.rootdata import (
    build_classical,
    coroot,
    highest_root_index,
    perturb_constant,
    principal_nilpotent_point,
    simple_root_indices,
    splitting_for,
    splitting_involution_max_rank,
    splitting_manin,
    validate_splitting,
    validate_structure,
)


@pytest.mark.parametrize("series,rank,dim,magic", [
    ("A", 1, 3, 2),
    ("A", 2, 8, 5),
    ("A", 3, 15, 9),
    ("C", 2, 10, 6),
    ("B", 2, 10, 6),
])
def test_dimension_and_magic_number(series, rank, dim, magic):
    g = build_classical(series, rank)
    assert g.dim == dim
    assert g.index == rank
    assert g.magic_number == magic


def test_sl2_basis_and_brackets(sl2):
    assert sl2.labels == ("e_1", "h_1", "f_1")
    e, h, f = range(3)
    assert sl2.bracket(e, f) == {h: 1}
    assert sl2.bracket(h, e) == {e: 2}
    assert sl2.bracket(h, f) == {f: -2}


def test_sl2_trace_form(sl2):
    assert sl2.form[0][2] == 1
    assert sl2.form[1][1] == 2
    assert sl2.form[0][0] == 0


@pytest.mark.parametrize("series,rank,highest", [
    ("A", 2, (1, 1)),
    ("A", 3, (1, 1, 1)),
    ("B", 2, (1, 2)),
    ("C", 2, (2, 1)),
])
def test_highest_root(series, rank, highest):
    assert build_classical(series, rank).highest_root == highest


def test_sl3_labels(sl3):
    assert sl3.labels == ("e_10", "e_01", "e_11", "h_1", "h_2", "f_10", "f_01", "f_11")
    assert sl3.labels[highest_root_index(sl3)] == "e_11"
    e_simple, f_simple = simple_root_indices(sl3)
    assert [sl3.labels[k] for k in e_simple] == ["e_10", "e_01"]
    assert [sl3.labels[k] for k in f_simple] == ["f_10", "f_01"]


@pytest.mark.parametrize("name", ["sl2", "sl3", "sp4", "so5"])
def test_structure_validates(name, request):
    report = validate_structure(request.getfixturevalue(name))
    assert report.passed, [c.name for c in report.checks if not c.passed]


@pytest.mark.parametrize("series,rank", [("A", 0), ("A", 9), ("E", 6), ("B", 1), ("D", 3)])
def test_unsupported_algebra(series, rank):
    with pytest.raises(UnsupportedAlgebraError):
        build_classical(series, rank)


def test_perturbed_constant_breaks_jacobi(sl2):
    e, h, f = range(3)
    broken = perturb_constant(sl2, e, f, e, 1)
    assert broken.bracket(e, f) == {h: 1, e: 1}
    assert broken.bracket(f, e) == {h: -1, e: -1}
    report = validate_structure(broken)
    assert not report.get("jacobi").passed
    assert report.get("antisymmetry").passed
    assert "perturbed" in broken.realization_tag


def test_coroot_is_cartan_element(sl2):
    assert coroot(sl2, 0) == [QQ(0), QQ(1), QQ(0)]


def test_principal_nilpotent_point_sl2(sl2):
    triple, y = principal_nilpotent_point(sl2)
    assert triple.e == (1, 0, 0)
    assert triple.h == (0, 1, 0)
    assert y.coords == (QQ(-1), QQ(2), QQ(1))


@pytest.mark.parametrize("fixture", ["sl2_borel", "sl3_borel", "sl2_involution", "sl2_manin"])
def test_splittings_validate(fixture, request):
    split = request.getfixturevalue(fixture)
    assert validate_splitting(split).passed


def test_borel_splitting_parts(sl3_borel):
    g = sl3_borel.algebra
    assert [g.labels[k] for k in sl3_borel.r_indices] == ["f_10", "f_01", "f_11"]
    assert len(sl3_borel.h_indices) == 5


def test_involution_adapted_basis(sl2_involution):
    g = sl2_involution.algebra
    assert g.labels == ("e_1", "h_1", "k_1")
    assert sl2_involution.r_indices == (2,)
    assert validate_structure(g).passed


def test_involution_outside_type_a(sp4):
    with pytest.raises(UnsupportedScenarioError):
        splitting_involution_max_rank(sp4)


def test_manin_doubles_the_algebra(sl2):
    ambient, split = splitting_manin(sl2)
    assert ambient.dim == 6
    assert ambient.index == 2
    assert ambient.magic_number == 4
    assert len(split.h_indices) == len(split.r_indices) == 3
    assert [ambient.labels[k] for k in ambient.layout["diag_t"]] == ["h_1.diag"]


def test_manin_rank_limit():
    with pytest.raises(UnsupportedScenarioError):
        splitting_manin(build_classical("A", 4))


def test_unknown_scenario(sl2):
    with pytest.raises(UnsupportedScenarioError):
        splitting_for("parabolic", sl2)
