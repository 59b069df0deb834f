import json
import math
from fractions import Fraction as F

import pytest

from spernerlab.complex import (
    boundary_subcomplex,
    build_complex,
    cofacets,
    complex_from_dict,
    complex_to_dict,
    dump_complex,
    load_complex,
    open_star,
    standard_complex,
)
from spernerlab.errors import (
    CoverageError,
    DegenerateSimplexError,
    DuplicateVertexError,
    PseudomanifoldError,
    UnknownSimplexError,
)
from spernerlab.simplex import StandardSimplex
from spernerlab.subdivision import edgewise_subdivide

H = F(1, 2)


def test_simplex_itself_is_valid():
    K = standard_complex(2)
    assert K.top_simplices == ((1, 2, 3),)
    assert len(K.simplices(1)) == 3


def test_square_region_is_rejected():
    # quadrilateral inside the 2-simplex split into two triangles: volume 3/4
    verts = {0: (1, 0, 0), 1: (0, 1, 0), 2: (0, H, H), 3: (H, 0, H)}
    with pytest.raises(CoverageError):
        build_complex(verts, [(0, 1, 2), (0, 2, 3)])


def test_overlapping_simplices_are_rejected():
    verts = {0: (1, 0, 0), 1: (0, 1, 0), 2: (0, 0, 1), 3: (F(1, 3), F(1, 3), F(1, 3))}
    with pytest.raises((CoverageError, PseudomanifoldError)):
        build_complex(verts, [(0, 1, 2), (0, 1, 3)])


def test_duplicate_and_degenerate_inputs():
    with pytest.raises(DuplicateVertexError):
        build_complex([(0, (1, 0)), (0, (0, 1))], [(0,)])
    with pytest.raises(DuplicateVertexError):
        build_complex({0: (1, 0), 1: (1, 0)}, [(0, 1)])
    with pytest.raises(DegenerateSimplexError):
        build_complex({0: (1, 0, 0), 1: (0, 1, 0), 2: (H, H, 0)}, [(0, 1, 2)])


def test_pseudomanifold_violation():
    # three triangles sharing the edge (0, 1)
    verts = {0: (1, 0, 0), 1: (0, 1, 0), 2: (0, 0, 1), 3: (F(1, 3),) * 3, 4: (F(1, 4), F(1, 4), H)}
    with pytest.raises(PseudomanifoldError):
        build_complex(verts, [(0, 1, 2), (0, 1, 3), (0, 1, 4)], check_coverage=False)


def test_first_barycentric_subdivision(bary_complex):
    K = bary_complex(2, 1)
    assert len(K.top_simplices) == 6
    assert len(K.vertices) == 7


def test_boundary_of_unsubdivided_simplex():
    B = boundary_subcomplex(standard_complex(2))
    assert B.dim == 1
    assert sorted(B.tags.items()) == [((1, 2), 3), ((1, 3), 2), ((2, 3), 1)]


def test_boundary_of_subdivided_interval():
    K = edgewise_subdivide(StandardSimplex(1), 2)
    B = boundary_subcomplex(K)
    assert B.dim == 0
    assert sorted(tuple(K.point(v)) for (v,) in B.top_simplices) == [(0, 1), (1, 0)]


def test_boundary_of_barycentric_triangle(bary_complex):
    K = bary_complex(2, 1)
    B = boundary_subcomplex(K)
    assert len(B.top_simplices) == 6
    per_face = {i: sum(1 for t in B.tags.values() if t == i) for i in (1, 2, 3)}
    assert per_face == {1: 2, 2: 2, 3: 2}
    for s, i in B.tags.items():
        assert all(K.point(v)[i - 1] == 0 for v in s)


@pytest.mark.parametrize("n,k", [(1, 2), (2, 1), (2, 2), (3, 1)])
def test_boundary_is_closed_pseudomanifold(bary_complex, n, k):
    B = bary_complex(n, k).boundary
    if B.dim >= 1:
        assert all(len(B.cofaces(f)) == 2 for f in B.simplices(B.dim - 1))


def test_cofacets(bary_complex):
    K = bary_complex(2, 1)
    for f in K.simplices(1):
        c = cofacets(K, f)
        assert len(c) == (1 if f in K.boundary else 2)
    with pytest.raises(UnknownSimplexError):
        cofacets(standard_complex(2), (1, 2, 3))
    with pytest.raises(UnknownSimplexError):
        cofacets(K, (0, 99))


def test_open_star_examples(bary_complex):
    K = bary_complex(2, 1)
    center = next(v for v in K.vertices if all(c == F(1, 3) for c in K.point(v)))
    star = open_star(K, center)
    assert set(K.top_simplices) <= set(star)
    assert sum(1 for s in star if len(s) == 3) == 6
    D = standard_complex(2)
    assert set(open_star(D, 1)) == {(1,), (1, 2), (1, 3), (1, 2, 3)}
    with pytest.raises(UnknownSimplexError):
        open_star(K, 1000)


def test_star_of_corner_in_boundary_is_complement_of_face():
    dB = standard_complex(3).boundary
    for j in range(1, 5):
        star_tops = {s for s in open_star(dB, j) if len(s) == 3}
        assert star_tops == {s for s, i in dB.tags.items() if i != j}


def test_star_diameter_bound(bary_complex):
    K = bary_complex(2, 2)
    dmax = K.max_diameter()
    for w in K.vertices:
        pts = {p for s in open_star(K, w) for p in K.vertex_points(s)}
        diam = max(math.dist(p, q) for p in pts for q in pts)
        assert diam <= 2 * dmax + 1e-12


def test_serialization_round_trip(tmp_path, bary_complex):
    K = bary_complex(2, 2)
    doc = complex_to_dict(K)
    again = complex_from_dict(json.loads(json.dumps(doc)))
    assert complex_to_dict(again) == doc
    assert again.top_simplices == K.top_simplices
    assert all(again.point(v) == K.point(v) for v in K.vertices)
    path = tmp_path / "k.json"
    dump_complex(K, path)
    text = path.read_text()
    dump_complex(load_complex(path), path)
    assert path.read_text() == text
