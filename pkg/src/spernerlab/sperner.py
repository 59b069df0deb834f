"""Sperner labelings, the (e, f, g, h) census, and fully-labeled simplex search."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping

from .complex import EmbeddedComplex, Simplex, standard_complex
from .errors import (
    InvalidLabelingError,
    MissingLabelError,
    PathFollowingError,
)
from .simplex import carrier_faces
from .subdivision import ImplicitEdgewise


@dataclass(frozen=True)
class Labeling:
    complex: EmbeddedComplex
    labels: Mapping

    def __post_init__(self):
        object.__setattr__(self, "labels", dict(self.labels))

    @property
    def n(self) -> int:
        return self.complex.ambient_dim

    def __getitem__(self, v) -> int:
        return self.labels[v]

    def label_set(self, s) -> frozenset[int]:
        return frozenset(self.labels[v] for v in s)

    def to_json(self) -> str:
        return json.dumps({str(v): self.labels[v] for v in sorted(self.labels)}, sort_keys=True)


def labeling_from_json(K: EmbeddedComplex, text: str) -> Labeling:
    return Labeling(K, {int(k): int(v) for k, v in json.loads(text).items()})


def load_labeling(K: EmbeddedComplex, path) -> Labeling:
    return labeling_from_json(K, Path(path).read_text(encoding="utf-8"))


def validate_sperner(L: Labeling) -> list[tuple]:
    """Return the ``(vertex, face)`` pairs breaking the Sperner condition.

    An empty list means the labeling is valid.  A vertex on Delta_i may not be
    labeled i, and labels must lie in 1..n+1.
    """
    K = L.complex
    n = L.n
    missing = [v for v in K.vertices if v not in L.labels]
    if missing:
        raise MissingLabelError(f"no label for vertices {missing[:5]}")
    bad = []
    for v in K.vertices:
        lab = L.labels[v]
        if not (isinstance(lab, int) and 1 <= lab <= n + 1):
            bad.append((v, lab))
        elif lab in carrier_faces(K.point(v)):
            bad.append((v, lab))
    return bad


def require_sperner(L: Labeling) -> None:
    bad = validate_sperner(L)
    if bad:
        raise InvalidLabelingError(bad)


@dataclass(frozen=True)
class SpernerCensus:
    """Counts from the double-counting argument, relative to the face ``face``.

    ``fully_labeled`` (e of them) carry every label; ``third_type`` (f) carry
    exactly the labels of the distinguished face with one repeat;
    ``interior_doors`` (g) and ``boundary_doors`` (h) are codimension-1
    simplices labeled exactly like the distinguished face.
    """

    n: int
    face: int
    fully_labeled: tuple
    third_type: tuple
    interior_doors: tuple
    boundary_doors: tuple
    first_type: tuple = field(repr=False, default=())

    @property
    def e(self) -> int:
        return len(self.fully_labeled)

    @property
    def f(self) -> int:
        return len(self.third_type)

    @property
    def g(self) -> int:
        return len(self.interior_doors)

    @property
    def h(self) -> int:
        return len(self.boundary_doors)

    @property
    def identity_holds(self) -> bool:
        return self.h + 2 * self.g == self.e + 2 * self.f

    def to_dict(self) -> dict:
        return {
            "e": self.e,
            "f": self.f,
            "g": self.g,
            "h": self.h,
            "face": self.face,
            "fully_labeled": [list(s) for s in self.fully_labeled],
        }


def census(L: Labeling, face: int | None = None) -> SpernerCensus:
    """Classify every top simplex and every door of a Sperner labeling."""
    require_sperner(L)
    K = L.complex
    n = L.n
    face = n + 1 if face is None else face
    if not 1 <= face <= n + 1:
        raise ValueError(f"face index {face} out of range")
    full = frozenset(range(1, n + 2))
    door = full - {face}
    if n == 0:
        # the empty simplex is the single boundary door
        return SpernerCensus(0, face, K.top_simplices, (), (), ((),))
    first, second, third = [], [], []
    for s in K.top_simplices:
        labs = L.label_set(s)
        if labs == full:
            second.append(s)
        elif labs == door:
            third.append(s)
        else:
            first.append(s)
    interior, boundary = [], []
    for t in K.simplices(n - 1):
        if L.label_set(t) != door:
            continue
        if K.carrier(t):
            boundary.append(t)
        else:
            interior.append(t)
    for t in boundary:
        if K.carrier(t) != {face}:
            raise PathFollowingError(f"boundary door {t} is not contained in face {face}")
    return SpernerCensus(n, face, tuple(second), tuple(third), tuple(interior), tuple(boundary), tuple(first))


def find_fully_labeled_bruteforce(L: Labeling) -> list[Simplex]:
    require_sperner(L)
    full = set(range(1, L.n + 2))
    return [s for s in L.complex.top_simplices if {L.labels[v] for v in s} == full]


# -- path following ------------------------------------------------------------


class _ExplicitAdapter:
    """Door-graph queries on an explicit complex.

    ``F_d`` is the face spanned by v_1..v_{d+1}; a vertex belongs to it when
    its coordinates past position d+1 vanish.
    """

    def __init__(self, K: EmbeddedComplex):
        self.K = K
        self.level = {}
        for v in K.vertices:
            p = K.point(v)
            nz = [i for i, c in enumerate(p) if c != 0]
            self.level[v] = max(nz)

    def start(self):
        for v, lev in self.level.items():
            if lev == 0:
                return (v,)
        raise PathFollowingError("complex has no vertex at v_1")

    @staticmethod
    def vertices(node):
        return node

    def _in_face(self, s, d):
        return all(self.level[v] <= d for v in s)

    def across(self, node, d, k):
        facet = node[:k] + node[k + 1:]
        if d == 0:
            return None
        for t in self.K.cofaces(facet):
            if t != node and self._in_face(t, d):
                new = next(v for v in t if v not in facet)
                return t, t.index(new)
        return None

    def up(self, node, d):
        cands = [t for t in self.K.cofaces(node) if self._in_face(t, d + 1)]
        if len(cands) != 1:
            raise PathFollowingError(f"{node} has {len(cands)} cofaces in face F_{d + 1}")
        t = cands[0]
        new = next(v for v in t if v not in node)
        return t, t.index(new)

    def down(self, node, d, k):
        facet = node[:k] + node[k + 1:]
        return facet if self._in_face(facet, d - 1) else None

    def node_budget(self):
        return sum(len(self.K.simplices(k)) for k in range(self.K.dim + 1)) + 1


def door_walk(adapter, label: Callable, n: int, *, track_visits: bool = True):
    """Follow the door graph from v_1 to a fully-labeled top simplex.

    Nodes are d-simplices of F_d whose labels contain 1..d.  Fully-labeled
    d-simplices link up to the unique (d+1)-simplex of F_{d+1} containing them;
    doors (facets labeled exactly 1..d) link neighbors inside F_d, or drop
    down to F_{d-1} when they lie on its boundary.  Every node has degree 2
    except v_1 and fully-labeled top simplices, so the walk ends at one.

    Returns ``(node, steps)``.
    """
    node = adapter.start()
    d = 0
    entry = 0  # chain position opposite the door we came through; None = came from above
    seen = set() if track_visits else None
    budget = adapter.node_budget()
    steps = 0
    while True:
        steps += 1
        if steps > budget:
            raise PathFollowingError("walk exceeded the number of simplices; a door was reused")
        verts = adapter.vertices(node)
        labs = [label(v) for v in verts]
        if seen is not None:
            key = (d, verts)
            if key in seen:
                raise PathFollowingError(f"door graph revisited {verts} in F_{d}")
            seen.add(key)
        if entry is None:
            top = [i for i, lab in enumerate(labs) if lab == d + 1]
            if len(top) != 1 or set(labs) != set(range(1, d + 2)):
                raise PathFollowingError(f"{verts} is not fully labeled in F_{d}: {labs}")
            exit_k = top[0]
        else:
            lab = labs[entry]
            door = labs[:entry] + labs[entry + 1:]
            if set(door) != set(range(1, d + 1)):
                raise PathFollowingError(f"entered {verts} through a non-door, labels {labs}")
            if lab == d + 1:
                if d == n:
                    return node, steps
                node, entry = adapter.up(node, d)
                d += 1
                continue
            dup = [i for i, x in enumerate(labs) if x == lab and i != entry]
            if len(dup) != 1 or lab > d + 1:
                raise PathFollowingError(f"labels {labs} at {verts} break the door structure")
            exit_k = dup[0]
        nxt = adapter.across(node, d, exit_k)
        if nxt is not None:
            node, entry = nxt
            continue
        if d == 0:
            raise PathFollowingError("walk tried to leave through the empty face")
        below = adapter.down(node, d, exit_k)
        if below is None:
            raise PathFollowingError(f"boundary door of {verts} is not in F_{d - 1}")
        node, entry, d = below, None, d - 1


def find_fully_labeled_pathfollow(L, label: Callable | None = None):
    """Locate one fully-labeled top simplex by walking the door graph.

    ``L`` is either a :class:`Labeling` of an explicit complex (the result is
    a sorted vertex-id tuple) or an :class:`ImplicitEdgewise` grid together
    with a ``label`` callable on lattice vectors (the result is the Kuhn
    chain of lattice vectors).  Only simplices on the path are visited.
    """
    if isinstance(L, ImplicitEdgewise):
        if label is None:
            raise TypeError("an implicit grid needs a label callable")
        chain, _ = L.walk(label)
        return chain
    require_sperner(L)
    node, _ = door_walk(_ExplicitAdapter(L.complex), L.labels.__getitem__, L.n)
    return node


# -- simplicial maps -------------------------------------------------------------


@dataclass(frozen=True)
class SimplicialMap:
    source: EmbeddedComplex
    target: EmbeddedComplex
    vertex_map: Mapping

    def __post_init__(self):
        object.__setattr__(self, "vertex_map", dict(self.vertex_map))
        for s in self.source.top_simplices:
            img = self.image(s)
            if img not in self.target:
                raise ValueError(f"image {img} of {s} is not a simplex of the target")

    def image(self, s) -> Simplex:
        return tuple(sorted({self.vertex_map[v] for v in s}))

    def maps_onto(self, s, t) -> bool:
        return len(s) == len(t) and self.image(s) == tuple(sorted(t))

    def compose(self, inner: "SimplicialMap") -> "SimplicialMap":
        """``self`` after ``inner``."""
        return SimplicialMap(inner.source, self.target, {v: self.vertex_map[w] for v, w in inner.vertex_map.items()})


def identity_map(K: EmbeddedComplex) -> SimplicialMap:
    return SimplicialMap(K, K, {v: v for v in K.vertices})


def to_simplicial_map(L: Labeling) -> SimplicialMap:
    """phi: vertex labeled i goes to v_i of the standard simplex."""
    require_sperner(L)
    return SimplicialMap(L.complex, standard_complex(L.n), L.labels)


def boundary_map(L: Labeling) -> SimplicialMap:
    """Restriction of the labeling map to boundary complexes."""
    require_sperner(L)
    src = L.complex.boundary
    tgt = standard_complex(L.n).boundary
    return SimplicialMap(src, tgt, {v: L.labels[v] for v in src.vertices})


def restrict_to_face(L: Labeling, face: int | None = None) -> Labeling:
    """The labeling induced on the boundary simplices lying in Delta_face.

    The result lives on a complex of dimension n-1 whose points keep their
    n+1 coordinates, so labels are relabeled to 1..n by dropping ``face``.
    """
    from .complex import build_complex

    n = L.n
    face = n + 1 if face is None else face
    B = L.complex.boundary
    tops = [s for s in B.top_simplices if B.tags[s] == face]
    verts = {v for s in tops for v in s}
    pts = {v: tuple(c for i, c in enumerate(L.complex.point(v), 1) if i != face) for v in verts}
    K = build_complex(pts, tops)
    relabel = {v: L.labels[v] - (L.labels[v] > face) for v in verts}
    return Labeling(K, relabel)
