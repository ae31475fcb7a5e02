"""Command-line interface.

Exit codes: 0 success / verified, 1 verification failed, 2 usage error,
3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bounds as bounds_mod
from . import catalog, classify, report
from .codes import (
    BudgetError,
    CodeError,
    LinearCode,
    dual,
    is_divisible,
    is_projective,
    parse_matrix_text,
    weight_distribution,
    write_matrix_text,
)
from .geometry import points_to_code
from .spreads import holes, hole_code, prop1_check, validate

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_USAGE
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _build_parser():
    p = argparse.ArgumentParser(
        prog="divicodes",
        description="projective 2^r-divisible binary codes: check, construct, "
                    "classify, bound",
    )
    sub = p.add_subparsers(dest="command")

    c = sub.add_parser("check", help="verify a generator matrix file")
    c.add_argument("path")
    c.add_argument("--delta", type=int, required=True)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("classify", help="classify divisible codes up to a length")
    c.add_argument("--delta", type=int, required=True, choices=(2, 4, 8))
    c.add_argument("--n-max", type=int, required=True)
    c.add_argument("--out", type=Path, help="JSONL database output path")
    c.add_argument("--counts-out", type=Path, help="TSV counts output path")
    c.add_argument("--figures", type=Path, help="directory for rendered figures")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--all-classes", action="store_true",
                   help="list non-projective classes too (delta 4 and 8)")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("construct", help="emit a catalog construction")
    c.add_argument("--family", required=True)
    c.add_argument("--r", type=int, default=2)
    c.add_argument("--s", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--variant")
    c.add_argument("--out", type=Path)
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("spread", help="build a maximum partial spread")
    c.add_argument("--v", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--verify", action="store_true")
    c.add_argument("--out", type=Path, help="write the hole code matrix here")
    c.set_defaults(func=cmd_spread)

    c = sub.add_parser("bounds", help="four-moment LP feasibility")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--delta", type=int, required=True)
    c.add_argument("--k", type=int)
    c.set_defaults(func=cmd_bounds)

    c = sub.add_parser("lengths", help="realizable/excluded/unknown lengths")
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--figures", type=Path)
    c.set_defaults(func=cmd_lengths)
    return p


def cmd_check(args) -> int:
    try:
        text = Path(args.path).read_text()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    matrix = parse_matrix_text(text)
    code = LinearCode.from_matrix(matrix, allow_reduce=True)
    if code.k < matrix.nrows:
        print(f"note: generator rank-deficient, using k={code.k}")
    wd = weight_distribution(code)
    proj = is_projective(code)
    div = is_divisible(code, args.delta)
    print(f"[{code.n},{code.k}] code")
    print(f"projective: {proj}")
    print(f"{args.delta}-divisible: {div}")
    print("weights:", {i: c for i, c in enumerate(wd.counts) if c and i})
    if code.k < code.n:
        dwd = weight_distribution(dual(code))
        dmin = min(dwd.nonzero_weights())
        print(f"dual distance: {dmin}")
        selfdual = 2 * code.k == code.n and dual(code) == code
        if selfdual:
            print("self-dual: True")
    return EXIT_OK if (proj and div) else EXIT_FAILED


def cmd_classify(args) -> int:
    if args.delta == 2:
        levels = classify.classify_2divisible(args.n_max, workers=args.workers)
        records = classify.records_2divisible(levels)
    else:
        table = classify.classify_divisible(args.delta, args.n_max,
                                            workers=args.workers)
        records = classify.records_divisible(table, args.delta)
    counts = classify.counts_table(records, projective_only=True)
    print(f"projective {args.delta}-divisible classes by (n, k):")
    print(report.counts_text(counts), end="")
    if args.all_classes and args.delta in (4, 8):
        all_counts = classify.counts_table(records, projective_only=False)
        print("all classes (including non-projective):")
        print(report.counts_text(all_counts), end="")
    if args.out:
        db = classify.ClassDB()
        for rec in records:
            db.insert(rec)
        db.save(args.out)
        print(f"wrote {len(db)} records to {args.out}")
    if args.counts_out:
        args.counts_out.write_text(report.counts_tsv(counts))
        print(f"wrote counts to {args.counts_out}")
    if args.figures:
        args.figures.mkdir(parents=True, exist_ok=True)
        fig = args.figures / f"classify_delta{args.delta}_n{args.n_max}.png"
        report.counts_figure(counts, fig,
                             f"projective {args.delta}-divisible classes")
        print(f"wrote figure to {fig}")
    return EXIT_OK


def cmd_construct(args) -> int:
    name = args.family
    if name == "two_weight_45":
        code = points_to_code(catalog.two_weight_45())
    elif name == "example19":
        code = points_to_code(catalog.example19(args.variant or "i"))
    elif name == "ovoid_concat":
        code = catalog.ovoid_concat()
    elif name == "simplex":
        code = catalog.simplex(args.k or args.r + 1)
    elif name == "even_weight":
        code = catalog.even_weight(args.k or 4)
    elif name in catalog.FAMILIES:
        matches = [e for e in catalog.family_entries(args.r)
                   if e.family == name
                   and (args.s is None or e.s == args.s)
                   and (args.k is None or e.k == args.k)
                   and (args.variant is None or e.variant == args.variant)]
        if not matches:
            print(f"error: no catalog entry for {name} with those parameters",
                  file=sys.stderr)
            return EXIT_USAGE
        if len(matches) > 1:
            labels = ", ".join(e.label() for e in matches)
            print(f"error: ambiguous entry, candidates: {labels}", file=sys.stderr)
            return EXIT_USAGE
        code = points_to_code(catalog.family(matches[0]))
    else:
        known = ", ".join(sorted(catalog.FAMILIES) +
                          ["two_weight_45", "example19", "ovoid_concat",
                           "simplex", "even_weight"])
        print(f"error: unknown family {name!r}; known: {known}", file=sys.stderr)
        return EXIT_USAGE
    text = write_matrix_text(code)
    if args.out:
        args.out.write_text(text)
        print(f"[{code.n},{code.k}] written to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_spread(args) -> int:
    spread = catalog.corollary2_spread(args.v, args.r)
    print(f"partial {args.r}-spread in PG({args.v - 1}, F2): {spread.size} members")
    hs = holes(spread)
    print(f"holes: {hs.size}")
    code = hole_code(spread)
    print(f"hole code: [{code.n},{code.k}]")
    if args.out:
        args.out.write_text(write_matrix_text(code))
        print(f"hole code written to {args.out}")
    if args.verify:
        ok = validate(spread)
        print(f"pairwise trivial intersections: {ok}")
        rep = prop1_check(spread)
        print(f"projective: {rep.projective}")
        print(f"{1 << (args.r - 1)}-divisible: {rep.divisible}")
        print(f"length formula n = 2^v-1 - M(2^r-1): {rep.length_formula}")
        print(f"dimension k <= v: {rep.dim_bound}")
        if not (ok and rep.all_pass()):
            return EXIT_FAILED
    return EXIT_OK


def cmd_bounds(args) -> int:
    ks = [args.k] if args.k else list(range(1, args.n + 1))
    any_feasible = False
    for k in ks:
        res = bounds_mod.moment_lp(args.n, k, args.delta)
        if res.feasible:
            any_feasible = True
            print(f"n={args.n} k={k} delta={args.delta}: Feasible")
        else:
            print(f"n={args.n} k={k} delta={args.delta}: Infeasible")
            for step in res.certificate:
                print(f"  {step}")
    if not any_feasible:
        print(f"length {args.n} excluded for delta={args.delta} (all k infeasible)")
    return EXIT_OK


def cmd_lengths(args) -> int:
    seeds = sorted(catalog.certified_lengths(args.r))
    print(f"certified seed lengths: {seeds}")
    ls = bounds_mod.length_closure(args.r, seeds)
    print(report.lengths_text(ls), end="")
    if args.figures:
        args.figures.mkdir(parents=True, exist_ok=True)
        fig = args.figures / f"lengths_r{args.r}.png"
        report.lengths_figure(ls, fig)
        print(f"wrote figure to {fig}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
