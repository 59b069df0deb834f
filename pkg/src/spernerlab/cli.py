"""Command line entry point: ``spernerlab {subdivide,verify,solve}``.

Exit codes: 0 success, 1 verification or tolerance failure, 2 usage error,
3 resource cap, 4 map evaluation failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import brouwer
from .complex import complex_to_dict, dump_complex, standard_complex
from .errors import MapEvaluationError, ResourceLimitError
from .simplex import StandardSimplex
from .subdivision import edgewise_diameter, edgewise_subdivide, subdivision_sequence
from .verify import corpus_jsonl, run_corpus, run_exhaustive

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE, EXIT_EVAL = 0, 1, 2, 3, 4


def _emit(doc: dict) -> None:
    print(json.dumps(doc, sort_keys=True))


def _build(args):
    if args.m is not None:
        K = edgewise_subdivide(StandardSimplex(args.dim), args.m)
        return K, edgewise_diameter(args.dim, args.m)
    if args.dim == 0:
        K = standard_complex(0)
        return K, 0.0
    level = subdivision_sequence(args.dim, args.scheme, args.depth, m0=args.m0)
    return level.complex, level.max_diameter


def cmd_subdivide(args) -> int:
    if args.m is not None and args.scheme != "edgewise":
        raise SystemExit("--m requires --scheme edgewise")
    K, diam = _build(args)
    if args.out:
        dump_complex(K, args.out)
    doc = {"dim": K.dim, "max_diameter": diam, "top_simplices": len(K.top_simplices), "vertices": len(K.vertices)}
    if args.print_complex:
        doc["complex"] = complex_to_dict(K)
    _emit(doc)
    print(f"{len(K.top_simplices)} top simplices, max diameter {diam:.6g}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    K, _ = _build(args)
    if args.exhaustive:
        records = run_exhaustive(K)
    else:
        records = run_corpus(K, args.labelings, args.seed, workers=args.threads)
    text = corpus_jsonl(records)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    bad = [r for r in records if not r["agree"]]
    print(f"{len(records)} labelings checked, {len(bad)} disagreements", file=sys.stderr)
    if bad:
        first = bad[0]
        print(f"first failure: index {first['index']} seed {first['seed']}: {first.get('error', '')}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_solve(args) -> int:
    try:
        f = brouwer.parse_map(args.map, args.dim)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        res = brouwer.solve(
            f, args.tol, args.scheme, args.max_level, m0=args.m0, search=args.search
        )
    except MapEvaluationError as exc:
        print(f"map evaluation failed: {exc}", file=sys.stderr)
        return EXIT_EVAL
    _emit(res.to_dict())
    print(f"residual {res.residual:.3e} at level {res.level} ({'converged' if res.converged else 'tolerance not met'})",
          file=sys.stderr)
    return EXIT_OK if res.converged else EXIT_FAIL


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spernerlab", description=__doc__.splitlines()[0])
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker processes for corpus runs")
    sub = p.add_subparsers(dest="command", required=True)

    def complex_args(sp, default_scheme):
        sp.add_argument("--dim", type=_nonneg_int, required=True)
        sp.add_argument("--scheme", choices=["barycentric", "edgewise"], default=default_scheme)
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--depth", type=_nonneg_int, default=1)
        g.add_argument("--m", type=int, help="edgewise level (lattice spacing 1/m)")
        sp.add_argument("--m0", type=int, default=1)

    s = sub.add_parser("subdivide", help="build a subdivision and report its size")
    complex_args(s, "barycentric")
    s.add_argument("--out")
    s.add_argument("--print-complex", action="store_true")
    s.set_defaults(func=cmd_subdivide)

    v = sub.add_parser("verify", help="triple-check random or all Sperner labelings")
    complex_args(v, "barycentric")
    v.add_argument("--labelings", type=_nonneg_int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--exhaustive", action="store_true")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    so = sub.add_parser("solve", help="approximate a fixed point of a registry map")
    so.add_argument("--dim", type=_nonneg_int, required=True)
    so.add_argument("--map", required=True)
    so.add_argument("--tol", type=_positive_float, required=True)
    so.add_argument("--max-level", type=_nonneg_int, default=20)
    so.add_argument("--scheme", choices=["edgewise", "barycentric"], default="edgewise")
    so.add_argument("--search", choices=["path", "brute"], default="path")
    so.add_argument("--m0", type=int, default=1)
    so.set_defaults(func=cmd_solve)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "m", None) is not None and args.m < 1:
        print("error: --m must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(f"error: {exc.code}", file=sys.stderr)
            return EXIT_USAGE
        raise


if __name__ == "__main__":
    sys.exit(main())
