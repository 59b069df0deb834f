"""Approximate fixed points of self-maps of the standard simplex via Sperner labels.

Also provides the ray retraction r(x) (exit point on the boundary of the ray
from f(x) through x) and the open-star labeling used to build simplicial
approximations of r.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NamedTuple, Sequence

from .complex import EmbeddedComplex
from .errors import FixedPointError, MapEvaluationError, SubdivisionTooCoarse
from .simplex import SUM_TOL, ZERO_TOL, barycenter, is_exact
from .sperner import Labeling, find_fully_labeled_bruteforce, find_fully_labeled_pathfollow
from .subdivision import ImplicitEdgewise, subdivision_sequence

log = logging.getLogger(__name__)

FLOAT_LABEL_MARGIN = 1e-15
RAY_TOL = 1e-12


class MapOnSimplex:
    """A caller-supplied map from the standard n-simplex to itself.

    Outputs slightly off the simplex (within ``sum_tol``) are clamped and
    renormalized; anything further off raises :class:`MapEvaluationError`.
    Exact (Fraction) outputs must lie on the simplex exactly.
    """

    def __init__(self, dim: int, func: Callable[[tuple], Sequence], name: str = "map", sum_tol: float = SUM_TOL):
        self.dim = dim
        self.func = func
        self.name = name
        self.sum_tol = sum_tol

    def __repr__(self) -> str:
        return f"MapOnSimplex({self.name!r}, dim={self.dim})"

    def __call__(self, x: Sequence) -> tuple:
        y = tuple(self.func(tuple(x)))
        if len(y) != self.dim + 1:
            raise MapEvaluationError(f"{self.name} returned {len(y)} coordinates, expected {self.dim + 1}")
        if all(type(c) is float for c in y):
            if min(y) >= 0.0:
                s = math.fsum(y)
                if s == 1.0:
                    return y
                if abs(s - 1.0) <= self.sum_tol:
                    return tuple(c / s for c in y)
        if is_exact(y):
            if any(c < 0 for c in y) or sum(y) != 1:
                raise MapEvaluationError(f"{self.name}({x}) = {y} is not in the simplex")
            return y
        if any(not math.isfinite(c) or c < -self.sum_tol for c in y):
            raise MapEvaluationError(f"{self.name}({x}) = {y} is not in the simplex")
        y = tuple(max(float(c), 0.0) for c in y)
        s = math.fsum(y)
        if abs(s - 1.0) > self.sum_tol:
            raise MapEvaluationError(f"{self.name}({x}) has coordinate sum {s}")
        return y if s == 1.0 else tuple(c / s for c in y)


class FixedPointHit(NamedTuple):
    point: tuple
    image: tuple


def label_from_map(f: MapOnSimplex, w: Sequence, margin: float | None = None):
    """Smallest j (1-based) with f(w)^j < w^j - margin, or a :class:`FixedPointHit`.

    The margin defaults to 0 when both ``w`` and ``f(w)`` are exact and to
    ``FLOAT_LABEL_MARGIN`` otherwise.  A returned label j always has
    ``w^j > 0``, so these labels satisfy the Sperner condition.
    """
    y = f(w)
    if margin is None:
        margin = 0 if is_exact(w) and is_exact(y) else FLOAT_LABEL_MARGIN
    for j, (a, b) in enumerate(zip(y, w), 1):
        if a < b - margin:
            return j
    return FixedPointHit(tuple(w), y)


def ray_retraction(f: MapOnSimplex, x: Sequence, tol: float | None = None) -> tuple:
    """Exit point on the boundary of the ray from f(x) through x."""
    y = f(x)
    exact = is_exact(x) and is_exact(y)
    tol = (0 if exact else RAY_TOL) if tol is None else tol
    d = [a - b for a, b in zip(x, y)]
    if max(abs(c) for c in d) <= tol:
        raise FixedPointError(f"f(x) == x at {tuple(x)}; the ray is undefined")
    neg = [j for j, c in enumerate(d) if c < 0]
    if not neg:
        raise MapEvaluationError(f"displacement {d} has no negative entry; f({tuple(x)}) is off the simplex")
    j_min = min(neg, key=lambda j: x[j] / -d[j])
    t = x[j_min] / -d[j_min]
    p = [a + t * c for a, c in zip(x, d)]
    p[j_min] = Fraction(0) if exact else 0.0
    if not exact:
        p = [max(c, 0.0) for c in p]
    return tuple(p)


def star_predicates(y: Sequence, tol: float = ZERO_TOL) -> frozenset[int]:
    """Labels j with y in st(v_j) of the boundary, i.e. y^j > 0."""
    return frozenset(j for j, c in enumerate(y, 1) if c > tol)


def _interior_samples(pts: list, count: int, rng: random.Random) -> list:
    out = []
    for _ in range(count):
        w = [rng.expovariate(1.0) for _ in pts]
        s = sum(w)
        out.append(tuple(math.fsum(wi / s * p[i] for wi, p in zip(w, pts)) for i in range(len(pts[0]))))
    return out


def star_labeling(
    r: Callable[[tuple], Sequence],
    K: EmbeddedComplex,
    samples: int = 16,
    *,
    seed: int = 0,
    tol: float = ZERO_TOL,
) -> Labeling:
    """Label each vertex w by the smallest j with r(st(w)) inside st(v_j).

    Containment is tested on samples of the open star: w itself, the
    barycenter of every simplex containing w, and ``samples`` random interior
    points of each such simplex.  It is an empirical check, not a proof.
    Raises :class:`SubdivisionTooCoarse` naming the first vertex with no
    admissible label.
    """
    rng = random.Random(seed)
    n = K.ambient_dim
    cache: dict = {}

    def image(p):
        p = tuple(float(c) for c in p)
        if p not in cache:
            cache[p] = tuple(r(p))
        return cache[p]

    labels = {}
    for w in K.vertices:
        allowed = set(range(1, n + 2))
        pts = [K.point(w)]
        for s in K.open_star(w):
            if len(s) == 1:
                continue
            vp = [tuple(float(c) for c in K.point(v)) for v in s]
            pts.append(barycenter(vp))
            pts.extend(_interior_samples(vp, samples, rng))
        for p in pts:
            allowed &= star_predicates(image(p), tol)
            if not allowed:
                raise SubdivisionTooCoarse(w)
        labels[w] = min(allowed)
    return Labeling(K, labels)


# -- solver -----------------------------------------------------------------------------


@dataclass
class ApproxFixedPoint:
    point: tuple
    residual: float
    level: int
    witness: tuple  # vertex points of the fully-labeled simplex
    witness_labels: tuple
    diameter: float
    m: int | None = None
    converged: bool = False
    fixed_point_hit: bool = False
    history: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "converged": self.converged,
            "diameter": self.diameter,
            "fixed_point_hit": self.fixed_point_hit,
            "history": self.history,
            "level": self.level,
            "m": self.m,
            "point": list(self.point),
            "residual": self.residual,
            "witness": [list(p) for p in self.witness],
            "witness_labels": list(self.witness_labels),
        }


def residual(f: MapOnSimplex, x: Sequence) -> float:
    return max(abs(float(a) - float(b)) for a, b in zip(f(x), x))


class _Hit(Exception):
    def __init__(self, hit: FixedPointHit):
        self.hit = hit


def _edgewise_level(f, n, m, search):
    grid = ImplicitEdgewise(n, m)
    cache: dict = {}

    def label(a):
        lab = cache.get(a)
        if lab is None:
            lab = label_from_map(f, grid.point(a))
            if isinstance(lab, FixedPointHit):
                raise _Hit(lab)
            cache[a] = lab
        return lab

    if search == "path":
        chain = find_fully_labeled_pathfollow(grid, label)
    else:
        full = set(range(1, n + 2))
        chain = next(c for c in grid.iter_top_simplices() if {label(a) for a in c} == full)
    pts = [grid.point(a) for a in chain]
    return pts, [cache[a] for a in chain], grid.max_diameter()


def _barycentric_level(f, n, depth, search, max_simplices):
    K = subdivision_sequence(n, "barycentric", depth, max_simplices=max_simplices).complex
    labels = {}
    for v in K.vertices:
        lab = label_from_map(f, tuple(float(c) for c in K.point(v)))
        if isinstance(lab, FixedPointHit):
            raise _Hit(lab)
        labels[v] = lab
    L = Labeling(K, labels)
    if search == "path":
        s = find_fully_labeled_pathfollow(L)
    else:
        s = find_fully_labeled_bruteforce(L)[0]
    pts = [tuple(float(c) for c in K.point(v)) for v in s]
    return pts, [labels[v] for v in s], K.diameter(s)


def solve(
    f: MapOnSimplex,
    tol: float,
    scheme: str = "edgewise",
    max_level: int = 20,
    *,
    m0: int = 1,
    search: str = "path",
    max_simplices: int | None = None,
) -> ApproxFixedPoint:
    """Refine until the barycenter of a fully-labeled simplex has residual <= tol.

    Level k uses the edgewise grid with m = m0 * 2**k (or the k-fold
    barycentric subdivision).  A vertex whose image does not descend in any
    coordinate is a fixed point and is returned at once.  When ``max_level``
    is exhausted the best candidate is returned with ``converged=False``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if search not in ("path", "brute"):
        raise ValueError(f"unknown search {search!r}")
    n = f.dim
    best = None
    history = []
    for level in range(max_level + 1):
        try:
            if scheme == "edgewise":
                m = m0 * 2**level
                pts, labs, diam = _edgewise_level(f, n, m, search)
            elif scheme == "barycentric":
                m = None
                pts, labs, diam = _barycentric_level(f, n, level, search, max_simplices)
            else:
                raise ValueError(f"unknown scheme {scheme!r}")
        except _Hit as hit:
            x = hit.hit.point
            res = residual(f, x)
            history.append(res)
            lab = label_from_map(f, x, 0.0)
            return ApproxFixedPoint(
                x, res, level, (x,), () if isinstance(lab, FixedPointHit) else (lab,), 0.0,
                m if scheme == "edgewise" else None, res <= max(tol, SUM_TOL), True, history,
            )
        x = tuple(math.fsum(col) / len(pts) for col in zip(*pts))
        res = residual(f, x)
        log.debug("level %d: residual %.3e (diameter %.3e)", level, res, diam)
        if best is None or res < best.residual:
            best = ApproxFixedPoint(x, res, level, tuple(pts), tuple(labs), diam, m)
        history.append(best.residual)
        if best.residual <= tol:
            break
    best.history = history
    best.converged = best.residual <= tol
    return best


# -- map registry ------------------------------------------------------------------


def _dirichlet(rng: random.Random, k: int) -> list[float]:
    w = [rng.gammavariate(1.0, 1.0) for _ in range(k)]
    s = math.fsum(w)
    return [x / s for x in w]


def quadratic_map(n: int, seed: int) -> MapOnSimplex:
    """f(x)_j = sum over k, l of x_k x_l P[k][l][j], with each P[k][l] a random point of the simplex.

    Since sum(x) = 1 the output is a convex combination of the P[k][l], hence
    lies in the simplex.  The P are drawn Dirichlet(1, ..., 1) from
    ``random.Random(seed)``, so every f(v_k) = P[k][k] is interior and no
    corner is fixed.
    """
    rng = random.Random(seed)
    P = [[_dirichlet(rng, n + 1) for _ in range(n + 1)] for _ in range(n + 1)]

    def func(x):
        out = [0.0] * (n + 1)
        for k in range(n + 1):
            if not x[k]:
                continue
            for l in range(n + 1):
                w = float(x[k]) * float(x[l])
                if w:
                    row = P[k][l]
                    for j in range(n + 1):
                        out[j] += w * row[j]
        return out

    return MapOnSimplex(n, func, f"quadratic:{seed}")


def parse_map(spec: str, n: int) -> MapOnSimplex:
    """Build a map from a registry spec: ``identity``, ``constant:c1,...``, ``rotate``, ``quadratic:<seed>``."""
    name, sep, arg = spec.partition(":")
    if name in ("identity", "rotate") and sep:
        raise ValueError(f"{name} takes no argument")
    if name == "identity":
        return MapOnSimplex(n, lambda x: x, "identity")
    if name == "rotate":
        return MapOnSimplex(n, lambda x: x[-1:] + x[:-1], "rotate")
    if name == "constant":
        try:
            c = tuple(float(t) for t in arg.split(","))
        except ValueError:
            raise ValueError(f"bad constant map {spec!r}") from None
        if len(c) != n + 1 or any(t < 0 for t in c) or abs(math.fsum(c) - 1) > SUM_TOL:
            raise ValueError(f"constant {c} is not a point of the {n}-simplex")
        return MapOnSimplex(n, lambda x: c, spec)
    if name == "quadratic":
        try:
            seed = int(arg)
        except ValueError:
            raise ValueError(f"bad quadratic seed in {spec!r}") from None
        return quadratic_map(n, seed)
    raise ValueError(f"unknown map {spec!r}")
