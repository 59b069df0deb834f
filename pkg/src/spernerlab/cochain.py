"""F2 simplicial cochains: coboundary, pullback, connecting map, ranks.

A cochain is stored as its support, the set of simplices with coefficient 1.
Adding cochains is symmetric difference.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .complex import EmbeddedComplex, Simplex, standard_complex
from .errors import (
    NotACocycleError,
    PseudomanifoldError,
    ResourceLimitError,
    VerificationError,
)
from .sperner import Labeling, SimplicialMap, boundary_map, census, require_sperner, to_simplicial_map

ELIMINATION_LIMIT = 200_000


@dataclass(frozen=True)
class Cochain:
    complex: EmbeddedComplex
    degree: int
    support: frozenset

    def __post_init__(self):
        supp = frozenset(tuple(sorted(s)) for s in self.support)
        for s in supp:
            if len(s) != self.degree + 1 or s not in self.complex:
                raise ValueError(f"{s} is not a {self.degree}-simplex of the complex")
        object.__setattr__(self, "support", supp)

    def __add__(self, other: "Cochain") -> "Cochain":
        if other.complex is not self.complex or other.degree != self.degree:
            raise ValueError("cochains live on different complexes or degrees")
        return Cochain(self.complex, self.degree, self.support ^ other.support)

    def __bool__(self) -> bool:
        return bool(self.support)

    def __len__(self) -> int:
        return len(self.support)

    def simplices(self) -> list[Simplex]:
        return sorted(self.support)

    def is_relative(self, A: EmbeddedComplex) -> bool:
        """True when no simplex of ``A`` appears."""
        return not any(s in A for s in self.support)

    def to_dict(self) -> dict:
        return {"degree": self.degree, "simplices": [list(s) for s in self.simplices()]}


def cochain(K: EmbeddedComplex, degree: int, simplices: Iterable = ()) -> Cochain:
    """Sum of the given simplices; repeated simplices cancel in pairs."""
    supp = set()
    for s in simplices:
        supp ^= {tuple(sorted(s))}
    return Cochain(K, degree, frozenset(supp))


def zero(K: EmbeddedComplex, degree: int) -> Cochain:
    return Cochain(K, degree, frozenset())


def cochain_from_dict(K: EmbeddedComplex, doc: dict) -> Cochain:
    return cochain(K, doc["degree"], [tuple(s) for s in doc["simplices"]])


def coboundary_terms(c: Cochain) -> Counter:
    """The coboundary before mod-2 cancellation: simplex -> multiplicity."""
    terms = Counter()
    for s in c.support:
        terms.update(c.complex.cofaces(s))
    return terms


def coboundary(c: Cochain) -> Cochain:
    out = set()
    for s in c.support:
        for t in c.complex.cofaces(s):
            out ^= {t}
    return Cochain(c.complex, c.degree + 1, frozenset(out))


def pullback(phi: SimplicialMap, c: Cochain) -> Cochain:
    """Sum of the source simplices mapped onto some simplex of ``c``."""
    if c.complex is not phi.target and c.complex.top_simplices != phi.target.top_simplices:
        raise ValueError("cochain does not live on the map's target")
    k = c.degree
    supp = frozenset(s for s in phi.source.simplices(k) if len(set(phi.image(s))) == k + 1 and phi.image(s) in c.support)
    return Cochain(phi.source, k, supp)


@dataclass(frozen=True)
class CommutationReport:
    pullback_of_coboundary: Cochain
    coboundary_of_pullback: Cochain

    @property
    def equal(self) -> bool:
        return self.pullback_of_coboundary.support == self.coboundary_of_pullback.support

    def to_dict(self) -> dict:
        return {
            "equal": self.equal,
            "pullback_of_coboundary": self.pullback_of_coboundary.to_dict(),
            "coboundary_of_pullback": self.coboundary_of_pullback.to_dict(),
        }


def verify_commutation(phi: SimplicialMap, c: Cochain) -> CommutationReport:
    return CommutationReport(pullback(phi, coboundary(c)), coboundary(pullback(phi, c)))


@dataclass(frozen=True)
class ChainIdentityReport:
    """Both sides of the chain-level identity for one labeling.

    ``lhs_terms`` is the left side before cancellation: each hat-sigma once
    and both top cofacets of every interior door.
    """

    lhs_terms: Counter
    lhs: Cochain
    rhs: Cochain
    h: int
    g: int
    e: int
    cancellations: int

    @property
    def parity(self) -> int:
        return self.e % 2

    def to_dict(self) -> dict:
        return {
            "e": self.e,
            "g": self.g,
            "h": self.h,
            "cancellations": self.cancellations,
            "lhs": self.lhs.to_dict(),
            "rhs": self.rhs.to_dict(),
            "lhs_terms": [[list(s), m] for s, m in sorted(self.lhs_terms.items())],
        }


def chain_identity_report(L: Labeling, face: int | None = None) -> ChainIdentityReport:
    """Expand the chain-level identity for ``L`` and check it term by term.

    Computes phi^*(coboundary(Delta_face)) (the right side) and
    coboundary(phi^*(Delta_face)) before cancellation (the left side) from
    cochain operations only, then checks the mod-2 sums agree, that each
    coincident pair is a third-type simplex counted by the census, and the
    integer identity h + 2g = e + 2f.
    """
    require_sperner(L)
    K = L.complex
    n = L.n
    face = n + 1 if face is None else face
    phi = to_simplicial_map(L)
    D = phi.target
    face_simplex = tuple(i for i in range(1, n + 2) if i != face)
    alpha = cochain(D, n - 1, [face_simplex])
    rhs = pullback(phi, coboundary(alpha))
    pulled = pullback(phi, alpha)
    B = K.boundary
    sigmas = [s for s in pulled.simplices() if s in B]
    taus = [s for s in pulled.simplices() if s not in B]
    hats = []
    for s in sigmas:
        cof = K.cofaces(s)
        if len(cof) != 1:
            raise VerificationError(f"boundary door {s} has {len(cof)} cofacets")
        hats.append(cof[0])
    if len(set(hats)) != len(hats):
        raise VerificationError("the top simplices over boundary doors are not distinct")
    terms = Counter(hats)
    for t in taus:
        cof = K.cofaces(t)
        if len(cof) != 2:
            raise VerificationError(f"interior door {t} has {len(cof)} cofacets")
        terms.update(cof)
    if any(m > 2 for m in terms.values()):
        raise VerificationError("a top simplex occurs more than twice on the left side")
    lhs = cochain(K, n, [s for s, m in terms.items() if m % 2])
    cancelled = sorted(s for s, m in terms.items() if m == 2)
    if lhs.support != coboundary(pulled).support:
        raise VerificationError("expanded left side disagrees with the coboundary", ("lhs", "coboundary"))
    if lhs.support != rhs.support:
        raise VerificationError("mod-2 sides of the chain identity differ", ("lhs", "rhs"))
    h, g, e, c = len(sigmas), len(taus), len(rhs), len(cancelled)
    if sum(terms.values()) != h + 2 * g or h + 2 * g != e + 2 * c:
        raise VerificationError("integer recount h + 2g = e + 2f failed")
    cen = census(L, face)
    if set(cancelled) != set(cen.third_type):
        raise VerificationError(
            f"{c} cancellations but census counts f = {cen.f} third-type simplices", ("chain", "census")
        )
    return ChainIdentityReport(terms, lhs, rhs, h, g, e, c)


# -- degree -------------------------------------------------------------------


def _require_closed_pseudomanifold(K: EmbeddedComplex) -> None:
    if K.dim < 1:
        return
    for f in K.simplices(K.dim - 1):
        c = len(K.cofaces(f))
        if c != 2:
            raise PseudomanifoldError(f"face {f} has {c} cofacets; expected a closed pseudomanifold")


def preimage_count(phi: SimplicialMap, target_simplex) -> int:
    t = tuple(sorted(target_simplex))
    return sum(1 for s in phi.source.top_simplices if phi.image(s) == t)


def degree_mod2(phi: SimplicialMap, target_simplex=None) -> int:
    """Parity of the number of top simplices mapped onto ``target_simplex``.

    Defaults to the first top simplex of the target, which for the boundary of
    the standard simplex is Delta_{n+1}.
    """
    _require_closed_pseudomanifold(phi.source)
    _require_closed_pseudomanifold(phi.target)
    if phi.source.dim != phi.target.dim:
        raise ValueError("source and target must have the same dimension")
    t = phi.target.top_simplices[0] if target_simplex is None else target_simplex
    return preimage_count(phi, t) % 2


def degrees_mod2(phi: SimplicialMap) -> dict:
    """Degree parity computed separately over every target top simplex."""
    return {t: degree_mod2(phi, t) for t in phi.target.top_simplices}


# -- cohomology ranks -------------------------------------------------------------


def gf2_rank(rows: list[int]) -> int:
    """Rank over F2 of rows given as int bitsets."""
    pivots: dict[int, int] = {}
    rank = 0
    for r in rows:
        while r:
            top = r.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = r
                rank += 1
                break
            r ^= p
    return rank


def _reduce(r: int, pivots: dict) -> int:
    while r:
        p = pivots.get(r.bit_length() - 1)
        if p is None:
            return r
        r ^= p
    return 0


def _relative_basis(K: EmbeddedComplex, A: EmbeddedComplex | None, k: int) -> list[Simplex]:
    if k < 0:
        return []
    simplices = K.simplices(k)
    if len(simplices) > ELIMINATION_LIMIT:
        raise ResourceLimitError(f"{len(simplices)} {k}-simplices exceeds elimination limit {ELIMINATION_LIMIT}")
    return [s for s in simplices if A is None or s not in A]


def _coboundary_rows(K, A, k) -> list[int]:
    src = _relative_basis(K, A, k)
    index = {t: i for i, t in enumerate(_relative_basis(K, A, k + 1))}
    rows = []
    for s in src:
        r = 0
        for t in K.cofaces(s):
            if t in index:
                r |= 1 << index[t]
        rows.append(r)
    return rows


def cohomology_rank(K: EmbeddedComplex, A: EmbeddedComplex | None = None, k: int = 0, *, reduced: bool = False) -> int:
    """dim over F2 of H^k(K, A) by elimination on relative coboundary matrices.

    With ``reduced=True`` and no subcomplex, degree 0 uses the augmented
    complex (constants are divided out), so a point has H^0 = 0.
    """
    dim_ck = len(_relative_basis(K, A, k))
    rank_out = gf2_rank(_coboundary_rows(K, A, k))
    if k > 0:
        rank_in = gf2_rank(_coboundary_rows(K, A, k - 1))
    elif k == 0 and reduced and A is None and dim_ck:
        rank_in = 1  # augmentation: the all-ones 0-cochain is a coboundary
    else:
        rank_in = 0
    return dim_ck - rank_out - rank_in


def is_relative_coboundary(c: Cochain, A: EmbeddedComplex | None) -> bool:
    """Whether ``c`` lies in the image of the relative coboundary."""
    K, k = c.complex, c.degree
    index = {t: i for i, t in enumerate(_relative_basis(K, A, k))}
    pivots: dict[int, int] = {}
    for r in _coboundary_rows(K, A, k - 1):
        r = _reduce(r, pivots)
        if r:
            pivots[r.bit_length() - 1] = r
    v = 0
    for s in c.support:
        if s not in index:
            return False
        v |= 1 << index[s]
    return _reduce(v, pivots) == 0


def top_class(c: Cochain) -> int:
    """Class of a relative top cocycle in H^n(K, boundary) = F2.

    Every top simplex represents the generator, so the class is the number of
    simplices in the support mod 2 (for a connected pseudomanifold).
    """
    if c.degree != c.complex.dim:
        raise ValueError("top_class needs a top-dimensional cochain")
    return len(c.support) % 2


@dataclass(frozen=True)
class ConnectingWitness:
    cocycle: Cochain
    witness: Cochain
    alternative: Cochain
    same_class: bool


def connecting_witness(
    K: EmbeddedComplex, A: EmbeddedComplex, alpha: Cochain, *, seed: int = 0
) -> ConnectingWitness:
    """Represent the connecting map on ``alpha``: extend by zero, take coboundary.

    The result is checked to avoid ``A``, and its class is compared with the
    one obtained from a second, pseudo-random extension.
    """
    if alpha.complex is not A:
        raise ValueError("alpha must be a cochain on the subcomplex A")
    if coboundary(alpha):
        raise NotACocycleError("alpha is not a cocycle of A")
    k = alpha.degree
    ext = Cochain(K, k, alpha.support)
    witness = coboundary(ext)
    if not witness.is_relative(A):
        raise VerificationError("coboundary of the extension touches A")
    rng = random.Random(seed)
    extra = [s for s in K.simplices(k) if s not in A and rng.random() < 0.5]
    alt = coboundary(Cochain(K, k, alpha.support | frozenset(extra)))
    if not alt.is_relative(A):
        raise VerificationError("coboundary of the alternative extension touches A")
    same = is_relative_coboundary(witness + alt, A)
    if not same:
        raise VerificationError("connecting map depends on the extension", ("zero", "random"))
    return ConnectingWitness(alpha, witness, alt, same)


def face_cocycle(n: int, face: int | None = None) -> Cochain:
    """Delta_face as an (n-1)-cochain on the boundary of the standard simplex."""
    face = n + 1 if face is None else face
    dB = standard_complex(n).boundary
    return cochain(dB, n - 1, [tuple(i for i in range(1, n + 2) if i != face)])


@dataclass(frozen=True)
class CohomologicalReport:
    degree: int  # mod-2 degree of the boundary map
    boundary_class: int  # class of delta(phi_boundary^* Delta_face)
    pullback_class: int  # class of phi^* Delta

    def to_dict(self) -> dict:
        return {"degree": self.degree, "boundary_class": self.boundary_class, "pullback_class": self.pullback_class}


def cohomological_parities(L: Labeling, face: int | None = None) -> CohomologicalReport:
    """Both routes around the square of connecting maps and pullbacks."""
    n = L.n
    face = n + 1 if face is None else face
    phi_b = boundary_map(L)
    alpha = face_cocycle(n, face)
    deg = degree_mod2(phi_b, alpha.simplices()[0])
    pulled = pullback(phi_b, Cochain(phi_b.target, n - 1, alpha.support))
    K = L.complex
    w = connecting_witness(K, K.boundary, Cochain(K.boundary, n - 1, pulled.support))
    top = cochain(standard_complex(n), n, [tuple(range(1, n + 2))])
    up = pullback(to_simplicial_map(L), top)
    return CohomologicalReport(deg, top_class(w.witness), top_class(up))
