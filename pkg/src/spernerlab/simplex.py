"""The standard n-simplex, its faces, and barycentric points.

Points are plain tuples.  Tuples of :class:`fractions.Fraction` (or ints) are
the exact regime used for all parity computations; tuples of floats are the
solver regime and are compared against the tolerances below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

ZERO_TOL = 1e-12  # coordinate counts as zero (floating points)
SUM_TOL = 1e-9  # allowed drift of the coordinate sum (floating points)

Point = tuple


_EXACT_TYPES = (int, Fraction)


def is_exact(coords: Iterable) -> bool:
    return all(isinstance(c, _EXACT_TYPES) or (not isinstance(c, float) and isinstance(c, Rational)) for c in coords)


def make_point(coords: Sequence, *, exact: bool | None = None, sum_tol: float = SUM_TOL) -> Point:
    """Validate ``coords`` as a point of the standard simplex and return it as a tuple.

    Strings and ints are parsed as exact fractions. Floats stay floats unless
    ``exact=True`` is requested.
    """
    parsed = []
    for c in coords:
        if isinstance(c, str):
            c = Fraction(c)
        elif isinstance(c, int) and not isinstance(c, bool):
            c = Fraction(c)
        parsed.append(c)
    if exact is True:
        parsed = [Fraction(c) for c in parsed]
    elif exact is False:
        parsed = [float(c) for c in parsed]
    if not parsed:
        raise ValueError("a point needs at least one coordinate")
    if is_exact(parsed):
        if any(c < 0 for c in parsed):
            raise ValueError(f"negative barycentric coordinate in {parsed}")
        if sum(parsed) != 1:
            raise ValueError(f"coordinates of {parsed} do not sum to 1")
    else:
        if any(c < -sum_tol for c in parsed):
            raise ValueError(f"negative barycentric coordinate in {parsed}")
        if abs(math.fsum(parsed) - 1.0) > sum_tol:
            raise ValueError(f"coordinates of {parsed} do not sum to 1")
    return tuple(parsed)


@dataclass(frozen=True)
class Face:
    """The face of the standard simplex opposite vertex ``index``."""

    dim: int  # dimension of the ambient simplex
    index: int

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(j for j in range(1, self.dim + 2) if j != self.index)

    def contains(self, point: Sequence, tol: float = ZERO_TOL) -> bool:
        x = point[self.index - 1]
        return x == 0 if is_exact(point) else abs(x) <= tol

    def __str__(self) -> str:
        return f"Delta_{self.index}: x^{self.index} = 0"


@dataclass(frozen=True)
class StandardSimplex:
    dim: int

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dimension must be >= 0")

    @property
    def labels(self) -> range:
        return range(1, self.dim + 2)

    def vertex(self, i: int) -> Point:
        self._check_label(i)
        return tuple(Fraction(int(j == i)) for j in self.labels)

    @property
    def vertices(self) -> tuple[Point, ...]:
        return tuple(self.vertex(i) for i in self.labels)

    def barycenter(self) -> Point:
        return tuple(Fraction(1, self.dim + 1) for _ in self.labels)

    def face_opposite(self, i: int) -> Face:
        self._check_label(i)
        return Face(self.dim, i)

    def _check_label(self, i: int) -> None:
        if not 1 <= i <= self.dim + 1:
            raise ValueError(f"label {i} out of range 1..{self.dim + 1}")


def face_opposite(s: StandardSimplex, i: int) -> Face:
    return s.face_opposite(i)


def carrier_faces(p: Sequence, tol: float = ZERO_TOL) -> frozenset[int]:
    """Indices ``i`` (1-based) of the faces x^i = 0 that contain ``p``."""
    if is_exact(p):
        return frozenset(i for i, c in enumerate(p, 1) if c == 0)
    return frozenset(i for i, c in enumerate(p, 1) if c <= tol)


def distance(p: Sequence, q: Sequence) -> float:
    if is_exact(p) and is_exact(q):
        return math.sqrt(sum((Fraction(a) - b) ** 2 for a, b in zip(p, q)))
    return math.dist(p, q)


def squared_distance(p: Sequence, q: Sequence):
    return sum((a - b) ** 2 for a, b in zip(p, q))


def simplex_diameter(points: Sequence[Sequence]) -> float:
    """Largest pairwise Euclidean distance, coordinates taken in (n+1)-space."""
    if not points:
        raise ValueError("need at least one point")
    best = 0
    for a in range(len(points)):
        for b in range(a + 1, len(points)):
            best = max(best, squared_distance(points[a], points[b]))
    return math.sqrt(best)


def barycenter(points: Sequence[Sequence]) -> Point:
    k = len(points)
    if is_exact(c for p in points for c in p):
        return tuple(sum(col, Fraction(0)) / k for col in zip(*points))
    return tuple(math.fsum(col) / k for col in zip(*points))


def exact_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by fraction-exact Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, len(m)):
            if m[r][col]:
                factor = m[r][col] / p
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def exact_det(rows: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        p = m[col][col]
        det *= p
        for r in range(col + 1, n):
            if m[r][col]:
                factor = m[r][col] / p
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return det


def relative_volume(points: Sequence[Sequence]) -> Fraction:
    """Volume of a full-dimensional simplex as a fraction of the standard simplex.

    The barycentric coordinate matrix of the vertices has determinant equal to
    that ratio (up to sign).
    """
    return abs(exact_det(points))
