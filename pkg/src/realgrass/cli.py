"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 cell cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time

from .boundary import covering_pairs, fill_diagram_roots, three_way
from .chain import DEFAULT_CELL_CAP, CellCapExceeded, build_complex, homology_of
from .shapes import (
    DoublePartition,
    GrassmannianSpec,
    HalfShiftedDiagram,
    count_cells,
    enumerate_cells,
    enumerate_removals,
    k0_dtype,
    model_spec,
    partition_to_permutation,
    render,
    row_reading_word,
)
from .weyl import random_reduced_word

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

# smallest ranks for which the real group is the usual split form
MIN_RANK = {"B": 3, "C": 2, "D": 4}


class UsageError(Exception):
    pass


def parse_parts(text: str | None) -> tuple[int, ...]:
    if text is None or not text.strip():
        return ()
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise UsageError(f"cannot parse partition {text!r}; expected e.g. 5,5,4")


def spec_from_args(args) -> GrassmannianSpec:
    try:
        spec = GrassmannianSpec(args.family, args.n, args.k)
    except ValueError as e:
        raise UsageError(str(e))
    if args.n < MIN_RANK[args.family]:
        msg = f"n={args.n} is below the usual range for family {args.family} (n >= {MIN_RANK[args.family]})"
        if args.strict_rank:
            raise UsageError(msg)
        print(f"warning: {msg}", file=sys.stderr)
    return spec


def cell_from_args(spec: GrassmannianSpec, args) -> DoublePartition:
    k = model_spec(spec).k
    alpha = parse_parts(args.alpha)
    lam = parse_parts(args.lam)
    if len(alpha) > k:
        raise UsageError(f"alpha has {len(alpha)} parts but k={k}")
    alpha = alpha + (0,) * (k - len(alpha))
    dtype = args.dtype
    if spec.family == "D" and dtype is None:
        r = len([x for x in lam if x])
        if k == 0:
            dtype = k0_dtype(r)
        elif alpha[-1] == r:
            dtype = 0
        else:
            raise UsageError("this D-type shape needs --dtype 1 or 2")
    cell = DoublePartition(alpha, lam, dtype)
    try:
        HalfShiftedDiagram(spec, cell)
    except ValueError as e:
        raise UsageError(str(e))
    return cell


def output_format(args) -> str:
    return "json" if args.json else args.format


# commands

def cmd_homology(args) -> int:
    spec = spec_from_args(args)
    groups = homology_of(build_complex(spec, args.cell_cap))
    fmt = output_format(args)
    if fmt == "json":
        print(json.dumps({"H": [g.to_dict() for g in groups]}))
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree", "betti", "torsion"])
        for g in groups:
            w.writerow([g.degree, g.betti, ";".join(map(str, g.torsion))])
        print(buf.getvalue(), end="")
    else:
        print(f"{spec.label()}  family {spec.family}, n={spec.n}, k={spec.k}, dim {spec.dimension}")
        print(f"{'d':>3}  {'betti':>5}  torsion   H_d")
        for g in groups:
            tors = ",".join(map(str, g.torsion)) or "-"
            print(f"{g.degree:>3}  {g.betti:>5}  {tors:<8}  {g}")
    return EXIT_OK


def cmd_boundary(args) -> int:
    spec = spec_from_args(args)
    cx = build_complex(spec, args.cell_cap)
    fmt = output_format(args)
    if fmt == "json":
        print(cx.to_json(with_cells=args.cells))
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["d", "row", "col", "value"])
        for d, i, j, v in cx.entries():
            w.writerow([d, i, j, v])
        print(buf.getvalue(), end="")
    else:
        print(f"{spec.label()}: cells per dimension {cx.dims()}")
        for d in range(1, cx.top + 1):
            print(f"d_{d}:")
            for j, col in enumerate(cx.boundary(d)):
                for i, v in sorted(col.items()):
                    print(f"  {cx.basis[d][j]} -> {cx.basis[d - 1][i]} : {v:+d}")
    return EXIT_OK


def cmd_diagram(args) -> int:
    spec = spec_from_args(args)
    cell = cell_from_args(spec, args)
    dia = HalfShiftedDiagram(spec, cell)
    w = partition_to_permutation(spec, cell)
    word = row_reading_word(spec, cell)
    roots = fill_diagram_roots(spec, cell)
    removals = enumerate_removals(spec, cell)
    if output_format(args) == "json":
        out = cell.to_dict(spec)
        out.update({
            "permutation": list(w.values),
            "word": word,
            "related_columns": list(dia.related_columns),
            "u": list(dia.u),
            "v": list(dia.v),
            "roots": [[part, i, j, list(r.coeffs)] for (part, i, j), r in roots.items()],
            "removals": [{"removal": rem.describe(), "result": small.to_dict(spec)} for rem, small in removals],
        })
        print(json.dumps(out))
        return EXIT_OK
    tag = "" if cell.dtype is None else f"  (type {cell.dtype})"
    print(f"{cell}{tag} in {spec.label()}")
    print(render(spec, cell))
    print(f"related columns {list(dia.related_columns)}  u={list(dia.u)}  v={list(dia.v)}")
    print(f"w = {w}  length {cell.size}")
    print("word: " + (" ".join(f"s{j}" for j in word) or "(empty)"))
    for (part, i, j), r in roots.items():
        print(f"  {part:<6} ({i},{j})  {r}")
    for rem, small in removals:
        print(f"  remove -> {small}: {rem.describe()}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    spec = spec_from_args(args)
    total = count_cells(spec)
    if total > args.cell_cap:
        raise CellCapExceeded(f"{spec.label()} has {total} cells, above the cap of {args.cell_cap}")
    cells = enumerate_cells(spec)
    fmt = output_format(args)
    rows = [(c.size, c, partition_to_permutation(spec, c)) for c in cells]
    if fmt == "json":
        print(json.dumps({
            "spec": spec.to_dict(),
            "cells": [dict(c.to_dict(spec), dim=d, permutation=list(w.values)) for d, c, w in rows],
        }))
    elif fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["dim", "alpha", "lambda", "dtype", "permutation"])
        for d, c, w in rows:
            wr.writerow([d, ",".join(map(str, c.alpha)), ",".join(map(str, c.lam)),
                         "" if c.dtype is None else c.dtype, ",".join(map(str, w.values))])
        print(buf.getvalue(), end="")
    else:
        print(f"{spec.label()}: {len(cells)} cells")
        for d, c, w in rows:
            print(f"{d:>4}  {str(c):<24} {w}")
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = spec_from_args(args)
    total = count_cells(spec)
    if total > args.cell_cap:
        raise CellCapExceeded(f"{spec.label()} has {total} cells, above the cap of {args.cell_cap}")
    start = time.perf_counter()
    pairs = 0
    bad = []
    for cell, rem, small in covering_pairs(spec):
        pairs += 1
        a = three_way(spec, cell, rem, small)
        if not a.ok:
            bad.append(a)
    cx = build_complex(spec, args.cell_cap)
    groups = homology_of(cx)
    word_mismatch = 0
    if args.random_words:
        rng = random.Random(args.seed)
        cells = [c for d in sorted(cx.basis) for c in cx.basis[d]]
        perms = {c: partition_to_permutation(spec, c) for c in cells}
        for _ in range(args.random_words):
            words = {c: random_reduced_word(perms[c], rng) for c in cells}
            if homology_of(build_complex(spec, args.cell_cap, words=words)) != groups:
                word_mismatch += 1
    elapsed = time.perf_counter() - start
    result = {
        "spec": spec.to_dict(),
        "pairs": pairs,
        "mismatches": len(bad),
        "extra_covers": cx.extra_covers,
        "orientation_corrections": cx.corrections,
        "random_word_trials": args.random_words,
        "random_word_mismatches": word_mismatch,
        "seconds": round(elapsed, 3),
    }
    if output_format(args) == "json":
        result["failures"] = [_failure(a) for a in bad]
        print(json.dumps(result))
    else:
        print(f"{spec.label()}: pairs: {pairs}, mismatches: {len(bad)}")
        print(f"covers outside box removals: {cx.extra_covers}, orientation corrections: {cx.corrections}")
        print("d^2 = 0, entries in {0,±2}, mod-2 and Euler checks: ok")
        if args.random_words:
            print(f"random reduced words: {args.random_words} trials (seed {args.seed}), "
                  f"homology changed in {word_mismatch}")
        print(f"time: {elapsed:.2f}s")
        for a in bad:
            print("MISMATCH " + json.dumps(_failure(a)))
    return EXIT_MISMATCH if bad or word_mismatch else EXIT_OK


def _failure(a) -> dict:
    return {
        "cell": str(a.cell),
        "smaller": str(a.smaller),
        "removal": a.removal.describe(),
        "kappa": {"closed": a.closed, "phi": a.phi, "sigma": a.sigma},
        "beta": {"closed": str(a.beta_closed), "phi": str(a.beta_phi)},
        "chi": a.chi,
        "deleted_position": a.position,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="realgrass",
        description="Integral homology of real isotropic and orthogonal Grassmannians.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", required=True, choices=["B", "C", "D"])
    common.add_argument("--n", required=True, type=int, help="rank parameter")
    common.add_argument("--k", required=True, type=int, help="index of the omitted simple root")
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--json", action="store_true", help="shorthand for --format json")
    common.add_argument("--cell-cap", type=int, default=DEFAULT_CELL_CAP)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--strict-rank", action="store_true",
                        help="reject ranks below the usual range instead of warning")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("homology", parents=[common], help="integral homology table").set_defaults(func=cmd_homology)

    p = sub.add_parser("boundary", parents=[common], help="boundary matrices")
    p.add_argument("--cells", action="store_true", help="include the cell basis in JSON output")
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("diagram", parents=[common], help="render one double partition")
    p.add_argument("--alpha", default="")
    p.add_argument("--lambda", dest="lam", default="")
    p.add_argument("--dtype", type=int, choices=[0, 1, 2])
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("verify", parents=[common], help="cross-check every boundary coefficient")
    p.add_argument("--random-words", type=int, default=0,
                   help="also recompute homology with this many random reduced-word choices")
    p.set_defaults(func=cmd_verify)

    sub.add_parser("enumerate", parents=[common], help="list the cells").set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CellCapExceeded as e:
        print(f"error: {e} (raise it with --cell-cap)", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
