import pytest
from sympy.polys.domains import QQ

from liepoisson.errors import SamplingError
from liepoisson.sampling import (
    coords_to_strings,
    derive_rng,
    hyperplane_point,
    integer_parameters,
    random_parameter,
    random_point,
    sample_until,
)
from models import PointOnDual


def test_streams_are_reproducible():
    first = [derive_rng(42, "trdeg").random() for _ in range(3)]
    again = [derive_rng(42, "trdeg").random() for _ in range(3)]
    assert first == again
    assert derive_rng(42, "trdeg").random() != derive_rng(42, "index_0").random()
    assert derive_rng(42, "trdeg").random() != derive_rng(43, "trdeg").random()


def test_random_point_bounds():
    rng = derive_rng(1, "points")
    for _ in range(20):
        point = random_point(5, rng, 3)
        assert point.dim == 5
        assert all(-3 <= c <= 3 for c in point.coords)


def test_random_point_needs_positive_bound():
    with pytest.raises(SamplingError):
        random_point(3, derive_rng(1, "x"), 0)


def test_hyperplane_point_lies_on_hyperplane():
    rng = derive_rng(5, "plane")
    normal = [0, 2, 0, -3, 0]
    for _ in range(10):
        point = hyperplane_point(normal, rng, 10)
        assert sum(QQ(c) * x for c, x in zip(normal, point.coords)) == 0


def test_hyperplane_point_zero_normal():
    with pytest.raises(SamplingError):
        hyperplane_point([0, 0], derive_rng(5, "plane"), 10)


def test_sample_until():
    draws = iter(PointOnDual.of([k]) for k in range(10))
    point, tries = sample_until(lambda: next(draws), lambda p: p.coords[0] == 3, 8)
    assert point == PointOnDual.of([3])
    assert tries == 4


def test_sample_until_exhausts_budget():
    point, tries = sample_until(lambda: PointOnDual.of([0]), lambda p: False, 5)
    assert point is None
    assert tries == 5


def test_integer_parameters_cover_the_range():
    values = integer_parameters(derive_rng(3, "params"), 4)
    assert sorted(values) == list(range(-4, 5))


def test_coords_to_strings():
    assert coords_to_strings(PointOnDual.of([QQ(-1, 2), 3])) == ["-1/2", "3"]


def test_random_parameter_is_nonzero_and_bounded():
    rng = derive_rng(11, "parameters")
    for _ in range(50):
        t = random_parameter(rng, 4)
        assert t != 0
        assert 1 <= abs(t.numerator) <= 4
        assert 1 <= t.denominator <= 4


def test_random_parameter_needs_positive_bound():
    with pytest.raises(SamplingError):
        random_parameter(derive_rng(0, "x"), 0)
