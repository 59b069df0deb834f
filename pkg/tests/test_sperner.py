import json
from collections import Counter
from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from spernerlab.complex import build_complex, standard_complex
from spernerlab.errors import InvalidLabelingError, MissingLabelError, PathFollowingError
from spernerlab.simplex import StandardSimplex
from spernerlab.sperner import (
    Labeling,
    census,
    door_walk,
    find_fully_labeled_bruteforce,
    find_fully_labeled_pathfollow,
    labeling_from_json,
    restrict_to_face,
    to_simplicial_map,
    validate_sperner,
    _ExplicitAdapter,
)
from spernerlab.subdivision import ImplicitEdgewise, edgewise_subdivide
from spernerlab.verify import all_sperner_labelings, random_sperner_labeling


def identity_labeling(n):
    K = standard_complex(n)
    return Labeling(K, {i: i for i in K.vertices})


def interval_112():
    K = build_complex({0: (1, 0), 1: (F(1, 2), F(1, 2)), 2: (0, 1)}, [(0, 1), (1, 2)])
    return Labeling(K, {0: 1, 1: 1, 2: 2})


def recount(L, face=None):
    """Brute-force oracle: label sets of tops and of all their facets, boundary by zero coordinates."""
    K, n = L.complex, L.n
    face = n + 1 if face is None else face
    full = set(range(1, n + 2))
    door = full - {face}
    labs = lambda s: {L.labels[v] for v in s}
    e = sum(1 for s in K.top_simplices if labs(s) == full)
    f = sum(1 for s in K.top_simplices if labs(s) == door)
    facets = Counter(t for s in K.top_simplices for t in combinations(s, n))
    on_bd = lambda t: any(all(K.point(v)[i] == 0 for v in t) for i in range(n + 1))
    g = sum(1 for t in facets if labs(t) == door and not on_bd(t))
    h = sum(1 for t in facets if labs(t) == door and on_bd(t))
    return e, f, g, h


def test_validate_examples():
    assert validate_sperner(identity_labeling(2)) == []
    K = standard_complex(1)
    assert validate_sperner(Labeling(K, {1: 2, 2: 2})) == [(1, 2)]
    with pytest.raises(MissingLabelError):
        validate_sperner(Labeling(K, {1: 1}))
    assert validate_sperner(Labeling(K, {1: 1, 2: 5})) == [(2, 5)]


def test_positive_coordinate_labels_are_valid(bary_complex):
    K = bary_complex(2, 2)
    for seed in range(20):
        assert validate_sperner(random_sperner_labeling(K, seed)) == []


def test_census_identity_labeling():
    c = census(identity_labeling(2))
    assert (c.e, c.f, c.g, c.h) == (1, 0, 0, 1)
    assert c.fully_labeled == ((1, 2, 3),)


def test_census_interval():
    L = interval_112()
    c = census(L)
    # [0, 1/2] carries labels {1, 1}: third type; the midpoint is an interior door
    assert (c.e, c.f, c.g, c.h) == (1, 1, 1, 1)
    assert c.fully_labeled == ((1, 2),)
    assert c.third_type == ((0, 1),)
    assert find_fully_labeled_bruteforce(L) == [(1, 2)]
    assert find_fully_labeled_pathfollow(L) == (1, 2)


def test_census_rejects_invalid():
    K = standard_complex(1)
    with pytest.raises(InvalidLabelingError):
        census(Labeling(K, {1: 2, 2: 2}))
    with pytest.raises(InvalidLabelingError):
        find_fully_labeled_bruteforce(Labeling(K, {1: 2, 2: 1}))


def test_census_zero_dimensional():
    L = identity_labeling(0)
    c = census(L)
    assert (c.e, c.h) == (1, 1) and c.identity_holds


@pytest.mark.parametrize("n,k", [(1, 2), (2, 2), (3, 1)])
def test_census_matches_recount(bary_complex, n, k):
    K = bary_complex(n, k)
    for seed in range(60):
        L = random_sperner_labeling(K, seed)
        for face in range(1, n + 2):
            c = census(L, face)
            assert (c.e, c.f, c.g, c.h) == recount(L, face)
            assert c.identity_holds and c.e % 2 == 1
            assert all(K.carrier(s) == {face} for s in c.boundary_doors)


def test_exhaustive_barycentric_triangle(bary_complex):
    # frozen from a hand-built subdivision enumerated independently
    stats = [census(L) for L in all_sperner_labelings(bary_complex(2, 1))]
    assert len(stats) == 24
    assert Counter(c.e for c in stats) == {1: 24}
    assert Counter(c.f for c in stats) == {0: 8, 1: 4, 2: 8, 3: 4}
    assert [sum(getattr(c, a) for c in stats) for a in "efgh"] == [24, 32, 32, 24]


def test_exhaustive_interval():
    K = edgewise_subdivide(StandardSimplex(1), 4)
    es = Counter(census(L).e for L in all_sperner_labelings(K))
    # 4 = C(4,1) sequences change label once, C(4,3) = 4 three times
    assert es == {1: 4, 3: 4}


@pytest.mark.parametrize("n,k", [(1, 3), (2, 1), (2, 2), (3, 1), (3, 2)])
def test_type_partition_and_door_counts(bary_complex, n, k):
    K = bary_complex(n, k)
    L = random_sperner_labeling(K, 11 * n + k)
    c = census(L)
    assert len(c.first_type) + c.e + c.f == len(K.top_simplices)
    assert not set(c.first_type) & set(c.fully_labeled)
    door = set(range(1, n + 1))
    per_top = {s: sum(1 for t in combinations(s, n) if L.label_set(t) == door) for s in K.top_simplices}
    assert all(per_top[s] == 1 for s in c.fully_labeled)
    assert all(per_top[s] == 2 for s in c.third_type)
    assert all(per_top[s] == 0 for s in c.first_type)
    assert sum(per_top.values()) == c.h + 2 * c.g == c.e + 2 * c.f


@pytest.mark.parametrize("n,k", [(1, 3), (2, 3), (3, 2)])
def test_pathfollow_in_bruteforce(bary_complex, n, k):
    K = bary_complex(n, k)
    for seed in range(25):
        L = random_sperner_labeling(K, seed)
        assert find_fully_labeled_pathfollow(L) in find_fully_labeled_bruteforce(L)


def test_pathfollow_identity():
    assert find_fully_labeled_pathfollow(identity_labeling(3)) == (1, 2, 3, 4)
    assert find_fully_labeled_pathfollow(identity_labeling(0)) == (1,)


@pytest.mark.parametrize("n,m", [(1, 7), (2, 5), (3, 4)])
def test_implicit_walk_agrees_with_explicit(n, m):
    K = edgewise_subdivide(StandardSimplex(n), m)
    grid = ImplicitEdgewise(n, m)
    lattice = {tuple(int(c * m) for c in K.point(v)): v for v in K.vertices}
    for seed in range(15):
        L = random_sperner_labeling(K, seed)
        lab = lambda a: L.labels[lattice[a]]
        chain = find_fully_labeled_pathfollow(grid, lab)
        assert tuple(sorted(lattice[a] for a in chain)) == find_fully_labeled_pathfollow(L)
        generic, _ = door_walk(grid, lab, n, track_visits=True)
        assert generic[0] == chain


def test_implicit_walk_large_grid():
    grid = ImplicitEdgewise(2, 256)
    c = (0.23, 0.41, 0.36)

    def lab(a):
        w = grid.point(a)
        return next(j for j in (1, 2, 3) if c[j - 1] < w[j - 1])

    chain = find_fully_labeled_pathfollow(grid, lab)
    assert {lab(a) for a in chain} == {1, 2, 3}


def test_walk_detects_broken_labeling():
    # labels violate the Sperner condition at v_2, so the walk is entered through a non-door
    K = edgewise_subdivide(StandardSimplex(1), 3)
    bad = {v: 1 for v in K.vertices}
    with pytest.raises(PathFollowingError):
        door_walk(_ExplicitAdapter(K), bad.__getitem__, 1)
    grid = ImplicitEdgewise(2, 4)
    with pytest.raises(PathFollowingError):
        grid.walk(lambda a: 1)


def test_simplicial_map_properties(bary_complex):
    K = bary_complex(2, 2)
    L = random_sperner_labeling(K, 3)
    phi = to_simplicial_map(L)
    for s, i in K.boundary.tags.items():
        assert set(phi.image(s)) <= set(StandardSimplex(2).face_opposite(i).vertices)
    full = set(census(L).fully_labeled)
    onto = {s for s in K.top_simplices if phi.image(s) == (1, 2, 3)}
    assert onto == full
    ident = to_simplicial_map(identity_labeling(2))
    assert ident.vertex_map == {1: 1, 2: 2, 3: 3}


def test_restriction_is_sperner(bary_complex):
    K = bary_complex(3, 1)
    for seed in range(10):
        L = random_sperner_labeling(K, seed)
        R = restrict_to_face(L)
        assert validate_sperner(R) == []
        assert census(R).e == census(L).h


def test_labeling_json_round_trip(bary_complex):
    K = bary_complex(2, 1)
    L = random_sperner_labeling(K, 4)
    again = labeling_from_json(K, L.to_json())
    assert again.labels == L.labels
    doc = census(L).to_dict()
    assert set(doc) >= {"e", "f", "g", "h", "fully_labeled"}
    json.dumps(doc)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([(1, 2), (2, 1), (2, 2), (3, 1)]))
def test_sperner_invariants(seed, nk):
    from conftest import bary

    L = random_sperner_labeling(bary(*nk), seed)
    c = census(L)
    assert c.e % 2 == 1
    assert c.h + 2 * c.g == c.e + 2 * c.f
    assert c.e % 2 == c.h % 2
    assert len(find_fully_labeled_bruteforce(L)) == c.e
