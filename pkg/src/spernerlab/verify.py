"""Run the combinatorial, chain-level and cohomological parity computations side by side."""

from __future__ import annotations

import hashlib
import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .cochain import chain_identity_report, cohomological_parities
from .complex import EmbeddedComplex
from .errors import ResourceLimitError, SpernerError, VerificationError
from .sperner import Labeling, census, require_sperner

EXHAUSTIVE_LIMIT = 10**6


def labeling_seed(seed: int, index: int) -> int:
    """Independent per-labeling seed derived from a corpus seed."""
    digest = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _choices(K: EmbeddedComplex, v) -> list[int]:
    return [j for j, c in enumerate(K.point(v), 1) if c > 0]


def random_sperner_labeling(K: EmbeddedComplex, seed: int) -> Labeling:
    """Each vertex gets a uniformly random label among its positive coordinates."""
    rng = random.Random(seed)
    return Labeling(K, {v: rng.choice(_choices(K, v)) for v in K.vertices})


def count_sperner_labelings(K: EmbeddedComplex) -> int:
    total = 1
    for v in K.vertices:
        total *= len(_choices(K, v))
    return total


def all_sperner_labelings(K: EmbeddedComplex, limit: int = EXHAUSTIVE_LIMIT) -> Iterator[Labeling]:
    total = count_sperner_labelings(K)
    if total > limit:
        raise ResourceLimitError(f"{total} valid labelings exceeds the exhaustive limit {limit}")
    verts = K.vertices
    for combo in itertools.product(*(_choices(K, v) for v in verts)):
        yield Labeling(K, dict(zip(verts, combo)))


@dataclass(frozen=True)
class TripleCheckReport:
    e: int
    f: int
    g: int
    h: int
    chain_e: int
    chain_h: int
    chain_g: int
    cancellations: int
    degree: int
    boundary_class: int
    pullback_class: int

    @property
    def parities(self) -> dict:
        return {
            "combinatorial": self.e % 2,
            "chain": self.chain_e % 2,
            "cohomological": self.boundary_class,
        }

    @property
    def agree(self) -> bool:
        return len(set(self.parities.values())) == 1

    def to_dict(self) -> dict:
        return {
            "agree": self.agree,
            "cancellations": self.cancellations,
            "degree": self.degree,
            "e": self.e,
            "f": self.f,
            "g": self.g,
            "h": self.h,
            "parities": self.parities,
        }


def _expect(cond: bool, message: str, pair: tuple) -> None:
    if not cond:
        raise VerificationError(f"{pair[0]} vs {pair[1]}: {message}", pair)


def triple_check(L: Labeling) -> TripleCheckReport:
    """Compute the parity of e three ways and insist they coincide.

    Raises :class:`InvalidLabelingError` before any parity claim when the
    labeling is not Sperner, and :class:`VerificationError` (with the
    disagreeing pair) on any mismatch.
    """
    require_sperner(L)
    if L.n == 0:
        c = census(L)
        return TripleCheckReport(c.e, 0, 0, 1, c.e, 1, 0, 0, 1, 1, 1)
    c = census(L)
    ch = chain_identity_report(L)
    co = cohomological_parities(L)
    _expect(c.h + 2 * c.g == c.e + 2 * c.f, "h + 2g != e + 2f", ("census", "census"))
    _expect(c.e % 2 == c.h % 2, "e and h differ in parity", ("census", "census"))
    _expect((ch.e, ch.h, ch.g) == (c.e, c.h, c.g), "counts differ", ("chain", "census"))
    _expect(ch.cancellations == c.f, "cancellations != f", ("chain", "census"))
    _expect(co.degree == c.h % 2, "degree != h mod 2", ("cohomological", "census"))
    _expect(co.boundary_class == co.pullback_class, "square of connecting maps does not commute", ("cohomological", "cohomological"))
    _expect(co.pullback_class == ch.e % 2, "pullback class != chain parity", ("cohomological", "chain"))
    _expect(c.e % 2 == 1, "e is even", ("census", "lemma"))
    report = TripleCheckReport(
        c.e, c.f, c.g, c.h, ch.e, ch.h, ch.g, ch.cancellations, co.degree, co.boundary_class, co.pullback_class
    )
    _expect(report.agree, f"parities {report.parities}", ("combinatorial", "cohomological"))
    return report


def _corpus_record(K: EmbeddedComplex, index: int, seed: int | None, L: Labeling) -> dict:
    rec = {"index": index, "seed": seed}
    try:
        rec.update(triple_check(L).to_dict())
    except SpernerError as exc:
        rec.update({"agree": False, "error": str(exc)})
    return rec


def _random_record(args) -> dict:
    K, seed, index = args
    s = labeling_seed(seed, index)
    return _corpus_record(K, index, s, random_sperner_labeling(K, s))


def run_corpus(K: EmbeddedComplex, count: int, seed: int, *, workers: int = 1) -> list[dict]:
    """Triple-check ``count`` seeded random labelings; records come back in index order."""
    jobs = [(K, seed, i) for i in range(count)]
    if workers > 1 and count > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_random_record, jobs, chunksize=max(1, count // (4 * workers))))
    return [_random_record(j) for j in jobs]


def run_exhaustive(K: EmbeddedComplex, limit: int = EXHAUSTIVE_LIMIT) -> list[dict]:
    return [_corpus_record(K, i, None, L) for i, L in enumerate(all_sperner_labelings(K, limit))]


def corpus_jsonl(records: list[dict]) -> str:
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)
