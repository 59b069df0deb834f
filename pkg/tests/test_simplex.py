import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from spernerlab.simplex import (
    StandardSimplex,
    carrier_faces,
    face_opposite,
    make_point,
    relative_volume,
    simplex_diameter,
)


def test_face_opposite_examples():
    f = face_opposite(StandardSimplex(2), 3)
    assert f.vertices == (1, 2)
    assert f.contains((F(1, 2), F(1, 2), F(0)))
    assert not f.contains((F(1, 3),) * 3)
    assert face_opposite(StandardSimplex(1), 1).vertices == (2,)
    assert face_opposite(StandardSimplex(0), 1).vertices == ()


@pytest.mark.parametrize("i", [0, 4, -1])
def test_face_opposite_out_of_range(i):
    with pytest.raises(ValueError):
        face_opposite(StandardSimplex(2), i)


def test_vertices_are_unit_points():
    s = StandardSimplex(3)
    for i in s.labels:
        v = s.vertex(i)
        assert v[i - 1] == 1 and sum(v) == 1
        assert carrier_faces(v) == frozenset(s.labels) - {i}


@pytest.mark.parametrize(
    "p, expected",
    [
        ((1, 0, 0), {2, 3}),
        ((F(1, 2), F(1, 2), 0), {3}),
        ((F(1, 3), F(1, 3), F(1, 3)), set()),
    ],
)
def test_carrier_faces(p, expected):
    assert carrier_faces(make_point(p)) == expected


def test_carrier_faces_floating_tolerance():
    assert carrier_faces((1.0 - 1e-13, 1e-13, 0.0)) == {2, 3}
    assert carrier_faces((0.5, 0.5 - 1e-6, 1e-6)) == set()


def test_make_point_rejects_bad_points():
    with pytest.raises(ValueError):
        make_point(("1/2", "1/3", "1/3"))
    with pytest.raises(ValueError):
        make_point((1.5, -0.5))
    assert make_point((0.5, 0.5 + 1e-10)) == (0.5, 0.5 + 1e-10)


def test_diameter_examples():
    assert simplex_diameter(StandardSimplex(2).vertices) == pytest.approx(math.sqrt(2), abs=0)
    assert simplex_diameter([(F(1, 3),) * 3]) == 0
    assert simplex_diameter([(1, 0), (F(1, 2), F(1, 2))]) == pytest.approx(math.sqrt(2) / 2, rel=1e-15)


def test_relative_volume_of_standard_simplex():
    assert relative_volume(StandardSimplex(3).vertices) == 1
    half = [(1, 0, 0), (F(1, 2), F(1, 2), 0), (F(1, 2), 0, F(1, 2))]
    assert relative_volume(half) == F(1, 4)


points3 = st.lists(st.integers(0, 20), min_size=3, max_size=3).filter(lambda a: sum(a) > 0).map(
    lambda a: tuple(F(x, sum(a)) for x in a)
)


@given(points3)
def test_carrier_faces_are_exact_zeros(p):
    for i in carrier_faces(p):
        assert face_opposite(StandardSimplex(2), i).contains(p)
    assert all(p[i - 1] > 0 for i in {1, 2, 3} - carrier_faces(p))


@given(st.lists(points3, min_size=1, max_size=4), st.permutations(range(4)), st.integers(1, 9))
def test_diameter_symmetric_and_scales(pts, order, scale):
    d = simplex_diameter(pts)
    perm = [pts[i] for i in order if i < len(pts)]
    assert simplex_diameter(perm) == d
    assert simplex_diameter([tuple(scale * c for c in p) for p in pts]) == pytest.approx(scale * d)
