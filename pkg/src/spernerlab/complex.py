"""Simplicial complexes embedded in the standard simplex.

Simplices are sorted tuples of vertex ids.  Orientation is never stored: all
algebra downstream is over F2.
"""

from __future__ import annotations

import json
from collections import defaultdict
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import (
    CoverageError,
    DegenerateSimplexError,
    DuplicateVertexError,
    InvalidComplexError,
    PseudomanifoldError,
    UnknownSimplexError,
)
from .simplex import (
    StandardSimplex,
    carrier_faces,
    is_exact,
    make_point,
    relative_volume,
    exact_rank,
    simplex_diameter,
)

COVERAGE_CHECK_LIMIT = 100_000

Simplex = tuple


class EmbeddedComplex:
    """A pure simplicial complex whose vertices are points of the standard simplex.

    Do not call the constructor directly; use :func:`build_complex`, which
    validates.  Instances are treated as immutable.
    """

    def __init__(self, dim: int, points: Mapping, top_simplices: Iterable[Simplex], tags=None):
        self.dim = dim
        self._points = dict(points)
        self.top_simplices: tuple[Simplex, ...] = tuple(sorted(tuple(sorted(s)) for s in top_simplices))
        # boundary complexes carry the index of the face Delta_i holding each top simplex
        self.tags: dict[Simplex, int] = dict(tags or {})

    def __repr__(self) -> str:
        return (
            f"EmbeddedComplex(dim={self.dim}, vertices={len(self._points)}, "
            f"top_simplices={len(self.top_simplices)})"
        )

    # -- basic accessors -------------------------------------------------

    @property
    def ambient_dim(self) -> int:
        return len(next(iter(self._points.values()))) - 1 if self._points else self.dim

    @property
    def vertices(self) -> tuple:
        return tuple(sorted(self._points))

    @property
    def points(self) -> Mapping:
        return self._points

    def point(self, v):
        try:
            return self._points[v]
        except KeyError:
            raise UnknownSimplexError(f"unknown vertex {v!r}") from None

    @cached_property
    def exact(self) -> bool:
        return all(is_exact(p) for p in self._points.values())

    @property
    def subdivides_simplex(self) -> bool:
        return self.dim == self.ambient_dim

    # -- face lattice ----------------------------------------------------

    @cached_property
    def _lattice(self) -> tuple[dict[int, tuple[Simplex, ...]], dict[Simplex, tuple[Simplex, ...]]]:
        faces: dict[int, set] = defaultdict(set)
        cof: dict[Simplex, set] = defaultdict(set)
        for top in self.top_simplices:
            faces[self.dim].add(top)
            for k in range(self.dim, 0, -1):
                for s in combinations(top, k + 1):
                    for drop in range(k + 1):
                        f = s[:drop] + s[drop + 1:]
                        faces[k - 1].add(f)
                        cof[f].add(s)
        by_dim = {k: tuple(sorted(v)) for k, v in faces.items()}
        cofaces = {f: tuple(sorted(v)) for f, v in cof.items()}
        return by_dim, cofaces

    def simplices(self, k: int) -> tuple[Simplex, ...]:
        """All k-simplices, in lexicographic order of their vertex ids."""
        return self._lattice[0].get(k, ())

    def all_simplices(self) -> list[Simplex]:
        return [s for k in range(self.dim + 1) for s in self.simplices(k)]

    def __contains__(self, s) -> bool:
        s = tuple(sorted(s))
        return s in self._simplex_set

    @cached_property
    def _simplex_set(self) -> frozenset:
        return frozenset(s for k in range(self.dim + 1) for s in self.simplices(k))

    def cofaces(self, s: Simplex) -> tuple[Simplex, ...]:
        """Simplices of one dimension higher having ``s`` as a face."""
        s = tuple(sorted(s))
        if s not in self:
            raise UnknownSimplexError(f"{s} is not a simplex of this complex")
        return self._lattice[1].get(s, ())

    @cached_property
    def _vertex_star(self) -> dict:
        star = defaultdict(list)
        for k in range(self.dim + 1):
            for s in self.simplices(k):
                for v in s:
                    star[v].append(s)
        return star

    def open_star(self, w) -> tuple[Simplex, ...]:
        if w not in self._points:
            raise UnknownSimplexError(f"unknown vertex {w!r}")
        return tuple(self._vertex_star[w])

    def vertex_points(self, s: Simplex) -> list:
        return [self._points[v] for v in s]

    def carrier(self, s: Simplex) -> frozenset[int]:
        """Faces Delta_i containing every vertex of ``s``."""
        out = None
        for v in s:
            c = carrier_faces(self._points[v])
            out = c if out is None else out & c
        return out if out is not None else frozenset()

    def diameter(self, s: Simplex) -> float:
        return simplex_diameter(self.vertex_points(s))

    def max_diameter(self) -> float:
        # the diameter of a simplex is its longest edge
        if self.dim == 0:
            return 0.0
        return max(self.diameter(e) for e in self.simplices(1))

    @cached_property
    def boundary(self) -> "EmbeddedComplex":
        return boundary_subcomplex(self)


def _normalize_vertices(vertices) -> dict:
    items = vertices.items() if isinstance(vertices, Mapping) else vertices
    points = {}
    for vid, coords in items:
        if vid in points:
            raise DuplicateVertexError(f"duplicate vertex id {vid!r}")
        try:
            points[vid] = make_point(coords)
        except ValueError as exc:
            raise InvalidComplexError(f"vertex {vid!r}: {exc}") from None
    seen = {}
    for vid, p in points.items():
        if p in seen:
            raise DuplicateVertexError(f"vertices {seen[p]!r} and {vid!r} share the point {p}")
        seen[p] = vid
    return points


def build_complex(
    vertices,
    top_simplices: Iterable[Sequence],
    *,
    check_coverage: bool = True,
    coverage_limit: int = COVERAGE_CHECK_LIMIT,
    tags=None,
) -> EmbeddedComplex:
    """Validate and index a complex.

    ``vertices`` maps vertex id to barycentric coordinates (a mapping or a list
    of pairs).  Checks run in this order: vertex ids and points, simplex
    shape, affine independence, the pseudomanifold condition, and finally (for
    exact complexes of full dimension, up to ``coverage_limit`` top simplices)
    that the simplices tile the standard simplex.
    """
    points = _normalize_vertices(vertices)
    tops = [tuple(sorted(s)) for s in top_simplices]
    if not tops:
        raise InvalidComplexError("a complex needs at least one top simplex")
    dims = {len(s) - 1 for s in tops}
    if len(dims) != 1:
        raise InvalidComplexError(f"top simplices of mixed dimension {sorted(dims)}")
    dim = dims.pop()
    if len(set(tops)) != len(tops):
        raise InvalidComplexError("repeated top simplex")
    for s in tops:
        if len(set(s)) != len(s):
            raise DegenerateSimplexError(f"simplex {s} repeats a vertex")
        for v in s:
            if v not in points:
                raise InvalidComplexError(f"simplex {s} uses unknown vertex {v!r}")
        pts = [points[v] for v in s]
        if dim > 0:
            diffs = [[Fraction(a) - Fraction(b) for a, b in zip(p, pts[0])] for p in pts[1:]]
            if exact_rank(diffs) < dim:
                raise DegenerateSimplexError(f"simplex {s} is affinely degenerate")
    used = {v for s in tops for v in s}
    if used != set(points):
        extra = sorted(set(points) - used, key=repr)
        raise InvalidComplexError(f"vertices not used by any simplex: {extra[:5]}")

    K = EmbeddedComplex(dim, points, tops, tags)
    if dim > K.ambient_dim:
        raise InvalidComplexError("complex dimension exceeds ambient simplex dimension")
    _check_pseudomanifold(K)
    if check_coverage and K.subdivides_simplex and K.exact and len(tops) <= coverage_limit:
        _check_coverage(K)
    return K


def _check_pseudomanifold(K: EmbeddedComplex) -> None:
    if K.dim == 0:
        return
    for f in K.simplices(K.dim - 1):
        c = len(K.cofaces(f))
        if c not in (1, 2):
            raise PseudomanifoldError(f"codimension-1 face {f} has {c} top cofacets")


def _check_coverage(K: EmbeddedComplex) -> None:
    total = sum(relative_volume(K.vertex_points(s)) for s in K.top_simplices)
    if total != 1:
        raise CoverageError(f"top simplices have total volume {total} of the standard simplex, expected 1")
    if K.dim == 0:
        return
    for f in K.simplices(K.dim - 1):
        if len(K.cofaces(f)) == 1 and not K.carrier(f):
            raise CoverageError(f"free face {f} lies in the interior of the simplex")


@lru_cache(maxsize=None)
def standard_complex(n: int) -> EmbeddedComplex:
    """The unsubdivided standard n-simplex, vertex ``i`` at v_i (cached, shared)."""
    s = StandardSimplex(n)
    return build_complex({i: s.vertex(i) for i in s.labels}, [tuple(s.labels)])


def boundary_subcomplex(K: EmbeddedComplex) -> EmbeddedComplex:
    """Simplices of ``K`` lying in the boundary of the standard simplex.

    Every returned top simplex is tagged (``result.tags``) with the index i of
    the face Delta_i that contains it.
    """
    if not K.exact:
        raise ValueError("boundary tagging requires exact coordinates")
    if not K.subdivides_simplex:
        raise ValueError("boundary_subcomplex expects a subdivision of the full simplex")
    n = K.dim
    if n == 0:
        return EmbeddedComplex(-1, {}, [])
    tops, tags = [], {}
    for f in K.simplices(n - 1):
        c = K.carrier(f)
        if c:
            if len(c) != 1:
                raise InvalidComplexError(f"boundary face {f} lies in several faces {sorted(c)}")
            tops.append(f)
            tags[f] = next(iter(c))
    pts = {v: K.point(v) for s in tops for v in s}
    return EmbeddedComplex(n - 1, pts, tops, tags)


def cofacets(K: EmbeddedComplex, face: Sequence) -> tuple[Simplex, ...]:
    """Top simplices having the codimension-1 simplex ``face`` as a face."""
    face = tuple(sorted(face))
    if len(face) != K.dim:
        raise UnknownSimplexError(f"{face} is not a codimension-1 simplex (dimension {len(face) - 1})")
    return K.cofaces(face)


def open_star(K: EmbeddedComplex, w) -> tuple[Simplex, ...]:
    return K.open_star(w)


# -- serialization -----------------------------------------------------------


def complex_to_dict(K: EmbeddedComplex) -> dict:
    return {
        "dim": K.dim,
        "vertices": {str(v): [str(Fraction(c)) for c in K.point(v)] for v in K.vertices},
        "top_simplices": [list(s) for s in K.top_simplices],
    }


def complex_from_dict(doc: Mapping, **kwargs) -> EmbeddedComplex:
    verts = [(int(k), [Fraction(c) for c in coords]) for k, coords in doc["vertices"].items()]
    K = build_complex(verts, [tuple(s) for s in doc["top_simplices"]], **kwargs)
    if K.dim != doc["dim"]:
        raise InvalidComplexError(f"declared dim {doc['dim']} but simplices have dim {K.dim}")
    return K


def dump_complex(K: EmbeddedComplex, path) -> None:
    Path(path).write_text(json.dumps(complex_to_dict(K), sort_keys=True) + "\n", encoding="utf-8")


def load_complex(path, **kwargs) -> EmbeddedComplex:
    return complex_from_dict(json.loads(Path(path).read_text(encoding="utf-8")), **kwargs)
