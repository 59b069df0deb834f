"""Barycentric and edgewise subdivisions of the standard simplex.

Edgewise scheme
---------------
Lattice points of the level-``m`` subdivision are integer vectors
``a = (a_1, ..., a_{n+1})`` with ``a_j >= 0`` and ``sum(a) == m``; the point is
``a / m``.  In cumulative coordinates ``y_k = a_1 + ... + a_k`` the simplex is
the order simplex ``0 <= y_1 <= ... <= y_n <= m``, and we triangulate it by the
Freudenthal (Kuhn) rule: a top simplex is a base lattice point ``b`` plus a
permutation ``pi`` of ``1..n``, with vertices ``b, b + e_pi1, b + e_pi1 + e_pi2, ...``.
A unit step ``e_k`` in y-space moves one unit from ``a_{k+1}`` to ``a_k``.

Edge vectors of a Kuhn simplex are sums of a contiguous block of the steps,
which in barycentric coordinates have entries in {-1, 0, 1}/m with an even
number of nonzeros, at most n+1.  Hence every simplex has diameter at most
``sqrt(2 * floor((n+1)/2)) / m = sqrt(2) * c_n / m`` with
``c_n = sqrt(floor((n+1)/2))`` (c_1 = c_2 = 1, c_3 = sqrt(2)), and the bound is
attained.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterator

from .complex import EmbeddedComplex, build_complex, standard_complex
from .errors import ResourceLimitError
from .simplex import StandardSimplex, barycenter

DEFAULT_MAX_SIMPLICES = 2_000_000


def max_simplices_cap() -> int:
    env = os.environ.get("SPERNER_MAX_SIMPLICES")
    return int(env) if env else DEFAULT_MAX_SIMPLICES


def _check_cap(count: int, cap: int | None) -> None:
    cap = max_simplices_cap() if cap is None else cap
    if count > cap:
        raise ResourceLimitError(f"{count} top simplices exceeds the cap of {cap}")


def barycentric_subdivide(K: EmbeddedComplex, *, max_simplices: int | None = None) -> EmbeddedComplex:
    """One vertex per simplex of ``K`` (its barycenter); top simplices are flags."""
    n = K.dim
    _check_cap(len(K.top_simplices) * math.factorial(n + 1), max_simplices)
    ids = {}
    points = {}
    for s in K.all_simplices():
        ids[s] = len(ids)
        points[ids[s]] = barycenter(K.vertex_points(s))
    tops = []
    for top in K.top_simplices:
        for order in permutations(top):
            tops.append(tuple(ids[tuple(sorted(order[: k + 1]))] for k in range(n + 1)))
    return build_complex(points, tops)


def edgewise_count(n: int, m: int) -> int:
    return m**n


def edgewise_scheme_constant(n: int) -> float:
    return math.sqrt((n + 1) // 2)


def edgewise_diameter(n: int, m: int) -> float:
    return 0.0 if n == 0 else math.sqrt(2 * ((n + 1) // 2)) / m


def _step(a: tuple, k: int, sign: int = 1) -> tuple:
    # y-space unit step e_k: move one unit from a_{k+1} to a_k
    b = list(a)
    b[k - 1] += sign
    b[k] -= sign
    return tuple(b)


class ImplicitEdgewise:
    """Level-``m`` edgewise subdivision queried on demand.

    Vertices are identified by their integer lattice vectors ``a``.  Simplices
    of the face ``F_d`` spanned by v_1..v_{d+1} are ``(chain, perm)`` pairs,
    where ``chain`` lists the d+1 lattice vertices in Kuhn order and ``perm``
    the steps between them.  Nothing is materialized.
    """

    def __init__(self, n: int, m: int):
        if m < 1:
            raise ValueError("m must be >= 1")
        if n < 0:
            raise ValueError("n must be >= 0")
        self.n = n
        self.m = m

    def __repr__(self) -> str:
        return f"ImplicitEdgewise(n={self.n}, m={self.m})"

    @property
    def dim(self) -> int:
        return self.n

    @property
    def top_count(self) -> int:
        return edgewise_count(self.n, self.m)

    def max_diameter(self) -> float:
        return edgewise_diameter(self.n, self.m)

    def point(self, a: tuple, exact: bool = False) -> tuple:
        if exact:
            return tuple(Fraction(x, self.m) for x in a)
        m = self.m
        return tuple(x / m for x in a)

    def is_vertex(self, a: tuple) -> bool:
        return len(a) == self.n + 1 and sum(a) == self.m and min(a) >= 0

    # -- door-graph adapter ----------------------------------------------

    def start(self):
        a = (self.m,) + (0,) * self.n
        return ((a,), ())

    @staticmethod
    def vertices(node) -> tuple:
        return node[0]

    def across(self, node, d: int, k: int):
        """Neighbor in F_d across the facet opposite chain position ``k``.

        Returns ``(node, new_position)`` or ``None`` on the boundary of F_d.
        """
        chain, perm = node
        if d == 0:
            return None
        if k == 0:
            new = _step(chain[d], perm[0])
            if min(new) < 0:
                return None
            return (chain[1:] + (new,), perm[1:] + perm[:1]), d
        if k == d:
            new = _step(chain[0], perm[d - 1], -1)
            if min(new) < 0:
                return None
            return ((new,) + chain[:-1], perm[-1:] + perm[:-1]), 0
        new = _step(chain[k - 1], perm[k])
        if min(new) < 0:
            return None
        p = list(perm)
        p[k - 1], p[k] = p[k], p[k - 1]
        return (chain[:k] + (new,) + chain[k + 1:], tuple(p)), k

    def up(self, node, d: int):
        """The unique simplex of F_{d+1} having ``node`` as a face."""
        chain, perm = node
        new = _step(chain[0], d + 1, -1)
        return ((new,) + chain, (d + 1,) + perm), 0

    @staticmethod
    def down(node, d: int, k: int):
        chain, perm = node
        if k == 0 and perm[0] == d:
            return chain[1:], perm[1:]
        if k == d and perm[-1] == d:
            return chain[:-1], perm[:-1]
        return None

    def walk(self, label) -> tuple[tuple, list]:
        """Door-graph walk from v_1, specialized to Kuhn pivoting.

        Same path as :func:`spernerlab.sperner.door_walk` on this grid, but
        labels are tracked incrementally so each pivot evaluates ``label``
        once.  Returns the fully-labeled chain and its labels.
        """
        from .errors import PathFollowingError

        n = self.n
        chain = [(self.m,) + (0,) * n]
        labs = [label(chain[0])]
        perm: list[int] = []
        d = 0
        entry = 0
        budget = self.node_budget()
        steps = 0
        while True:
            steps += 1
            if steps > budget:
                raise PathFollowingError("walk exceeded the number of simplices; a door was reused")
            if entry is None:
                if labs.count(d + 1) != 1:
                    raise PathFollowingError(f"{chain} is not fully labeled in F_{d}: {labs}")
                k = labs.index(d + 1)
            else:
                lab = labs[entry]
                if lab == d + 1:
                    if d == n:
                        return tuple(chain), labs
                    src = chain[0]
                    new = src[:d] + (src[d] - 1, src[d + 1] + 1) + src[d + 2:]
                    chain.insert(0, new)
                    perm.insert(0, d + 1)
                    labs.insert(0, label(new))
                    d += 1
                    entry = 0
                    continue
                if lab > d + 1 or labs.count(lab) != 2:
                    raise PathFollowingError(f"labels {labs} at {chain} break the door structure")
                k = labs.index(lab)
                if k == entry:
                    k = labs.index(lab, k + 1)
            # pivot out chain[k]
            if k == 0:
                j = perm[0] if d else 0
                src = chain[d]
                ok = d > 0 and src[j] > 0
                if ok:
                    new = src[: j - 1] + (src[j - 1] + 1, src[j] - 1) + src[j + 1:]
                    del chain[0], labs[0]
                    chain.append(new)
                    labs.append(label(new))
                    perm.append(perm.pop(0))
                    entry = d
                    continue
            elif k == d:
                j = perm[d - 1]
                src = chain[0]
                ok = src[j - 1] > 0
                if ok:
                    new = src[: j - 1] + (src[j - 1] - 1, src[j] + 1) + src[j + 1:]
                    chain.pop()
                    labs.pop()
                    chain.insert(0, new)
                    labs.insert(0, label(new))
                    perm.insert(0, perm.pop())
                    entry = 0
                    continue
            else:
                j = perm[k]
                src = chain[k - 1]
                ok = src[j] > 0
                if ok:
                    new = src[: j - 1] + (src[j - 1] + 1, src[j] - 1) + src[j + 1:]
                    chain[k] = new
                    labs[k] = label(new)
                    perm[k - 1], perm[k] = perm[k], perm[k - 1]
                    entry = k
                    continue
            # the door lies on the boundary of F_d, hence in F_{d-1}
            if d == 0:
                raise PathFollowingError("walk tried to leave through the empty face")
            if k == 0 and perm[0] == d:
                perm.pop(0)
            elif k == d and perm[-1] == d:
                perm.pop()
            else:
                raise PathFollowingError(f"boundary door of {chain} is not in F_{d - 1}")
            del chain[k], labs[k]
            d -= 1
            entry = None

    def node_budget(self) -> int:
        return sum(self.m**d for d in range(self.n + 1)) + 1

    # -- enumeration (small m only) ------------------------------------

    def iter_vertices(self) -> Iterator[tuple]:
        yield from _compositions(self.m, self.n + 1)

    def iter_top_simplices(self) -> Iterator[tuple]:
        """Yield every top simplex as its Kuhn chain (m**n of them)."""
        n = self.n
        if n == 0:
            yield ((self.m,),)
            return
        for base in self.iter_vertices():
            for perm in permutations(range(1, n + 1)):
                chain = [base]
                ok = True
                for k in perm:
                    nxt = _step(chain[-1], k)
                    if nxt[k] < 0:
                        ok = False
                        break
                    chain.append(nxt)
                if ok:
                    yield tuple(chain)

    def materialize(self, *, max_simplices: int | None = None) -> EmbeddedComplex:
        return edgewise_subdivide(StandardSimplex(self.n), self.m, max_simplices=max_simplices)


def _compositions(total: int, parts: int) -> Iterator[tuple]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def edgewise_subdivide(s: StandardSimplex, m: int, *, implicit: bool = False, max_simplices: int | None = None):
    """Level-``m`` edgewise (Freudenthal) subdivision of ``s``.

    With ``implicit=True`` returns an :class:`ImplicitEdgewise`; otherwise an
    explicit complex whose integer vertex ids follow lexicographic order of the
    lattice vectors (descending in a_1).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    grid = ImplicitEdgewise(s.dim, m)
    if implicit:
        return grid
    _check_cap(grid.top_count, max_simplices)
    ids = {a: i for i, a in enumerate(grid.iter_vertices())}
    points = {i: grid.point(a, exact=True) for a, i in ids.items()}
    tops = [tuple(ids[a] for a in chain) for chain in grid.iter_top_simplices()]
    return build_complex(points, tops)


@dataclass(frozen=True)
class SubdivisionLevel:
    complex: object  # EmbeddedComplex or ImplicitEdgewise
    depth: int
    top_count: int
    max_diameter: float
    m: int | None = None


def subdivision_sequence(
    n: int,
    scheme: str,
    depth: int,
    *,
    m0: int = 1,
    implicit: bool = False,
    max_simplices: int | None = None,
) -> SubdivisionLevel:
    """Level ``depth`` of the refinement sequence starting from the simplex itself."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if scheme == "barycentric":
        factor = math.factorial(n + 1)
        _check_cap(factor**depth, max_simplices)
        K = standard_complex(n)
        for _ in range(depth):
            K = barycentric_subdivide(K, max_simplices=max_simplices)
        return SubdivisionLevel(K, depth, len(K.top_simplices), K.max_diameter())
    if scheme == "edgewise":
        m = m0 * 2**depth
        K = edgewise_subdivide(StandardSimplex(n), m, implicit=implicit, max_simplices=max_simplices)
        return SubdivisionLevel(K, depth, edgewise_count(n, m), edgewise_diameter(n, m), m)
    raise ValueError(f"unknown scheme {scheme!r}")
