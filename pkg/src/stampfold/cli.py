"""Command-line entry point: ``stampfold <verb> [options]``."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from typing import Iterable, Sequence

from . import asymptotics, enumeration, render, sequences, shapes
from .folding import classify_ends, is_folding
from .perm import PermutationError, format_permutation, is_symmetric, parse_permutation
from .sequences import GuardError, IdentityReport, ReferenceDataError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _print_reports(reports: Iterable[IdentityReport], out) -> bool:
    ok = True
    for rep in reports:
        print(rep.line(), file=out)
        ok &= rep.passed
    return ok


# ---------------------------------------------------------------- verbs


def cmd_count(args, out) -> int:
    try:
        table = sequences.compute_sequence(args.seq, args.max_n, workers=args.workers, guard=args.guard)
    except GuardError as exc:
        raise UsageError(str(exc))
    if args.format == "json":
        doc = {"name": table.name, "provenance": table.provenance,
               "values": {str(n): str(v) for n, v in table.items()}}
        out.write(json.dumps(doc, indent=1) + "\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["name", "n", "value"])
        for n, v in table.items():
            w.writerow([table.name, n, v])
    return EXIT_OK


def _enumerate_kind(kind: str, n: int, max_n: int):
    if kind == "foldings":
        return (f.listing for f in enumeration.enumerate_all_foldings(n, max_n))
    if kind == "semi-meanders":
        return (f.listing for f in enumeration.enumerate_semi_meanders(n, max_n))
    if kind == "meanders":
        return (f.listing for f in enumeration.enumerate_all_foldings(n, max_n) if shapes.is_meander(f))
    if n % 2 == 0:
        raise UsageError("symmetric-shapes needs an odd number of stamps")
    if n > max_n:
        raise UsageError("n=%d exceeds the enumeration guard %d" % (n, max_n))
    return (f.listing for f in enumeration.enumerate_symmetric_odd_shapes((n - 1) // 2))


def cmd_enumerate(args, out) -> int:
    try:
        stream = _enumerate_kind(args.kind, args.n, args.max_n)
        for i, p in enumerate(stream):
            if args.limit is not None and i >= args.limit:
                break
            out.write(format_permutation(p) + "\n")
    except ValueError as exc:
        raise UsageError(str(exc))
    return EXIT_OK


def cmd_classify(args, out) -> int:
    p = parse_permutation(args.perm)
    ok = is_folding(p)
    print("perm=%s" % format_permutation(p), file=out)
    print("is_folding=%s" % str(ok).lower(), file=out)
    print("symmetric=%s" % str(is_symmetric(p)).lower(), file=out)
    if ok:
        ends = classify_ends(p)
        print("leaf1_out=%s" % str(ends.leaf1_out).lower(), file=out)
        print("leafn_out=%s" % str(ends.leafn_out).lower(), file=out)
        print("meander=%s" % str(shapes.is_meander(p)).lower(), file=out)
        print("shape=%s" % format_permutation(shapes.canonical_under_G(p)), file=out)
    return EXIT_OK


REFERENCE_COMPARISONS = (("r", 16), ("b", 12), ("k", 7), ("m", 12), ("a", 12), ("k_o", 7),
                         ("t_o", 12), ("t_oo", 12), ("t_io", 12), ("t_oi", 12), ("t_ii", 12), ("t_i", 12))


def cmd_verify(args, out) -> int:
    ident_max = args.ident_max if args.ident_max is not None else max(args.max_n, 12)
    tables = sequences.load_reference_tables()
    ok = True
    print("# brute-force oracle, n <= %d" % args.max_n, file=out)
    ok &= _print_reports(sequences.oracle_reports(args.max_n), out)
    print("# identity battery on computed counts, n <= %d" % ident_max, file=out)
    ok &= _print_reports(sequences.verify_identities(ident_max, args.max_n), out)
    print("# computed sequences against the bundled tables", file=out)
    for name, top in REFERENCE_COMPARISONS:
        top = min(top, ident_max if name not in sequences.P_INDEXED else (ident_max + 3) // 2)
        if name == "r":
            top = max(top, min(16, ident_max + 4))
        table = sequences.compute_sequence(name, top, workers=args.workers)
        ok &= _print_reports([sequences.compare_to_reference(table, tables)], out)
    print("# identities over the bundled tables (exact arithmetic)", file=out)
    ok &= _print_reports(sequences.verify_reference_identities(tables), out)
    ok &= _print_reports([sequences.partial_sum_bounds(tables)], out)
    print("verify: %s" % ("ok" if ok else "FAILED"), file=out)
    return EXIT_OK if ok else EXIT_FAIL


SNAPSHOTS = (("t", 44), ("b", 44), ("k", 24))


def cmd_asymptotics(args, out) -> int:
    T = sequences.load_reference_tables()
    series = {"t": asymptotics.labeled_totals(T["r"]), "b": T["b"], "k": T["k"],
              "m": T["m"], "a": T["a"], "k_o": T["k_o"]}
    ok = True
    print("# one-step growth ratios x(n+1)/x(n)", file=out)
    for name, n in SNAPSHOTS:
        ratios = dict(asymptotics.growth_ratios(series[name]))
        print("%s(%d)/%s(%d) = %.13f" % (name, n + 1, name, n, ratios[n]), file=out)
    rows = asymptotics.in_out_trend(T["t_o"].last, T)
    print("# leaf-out proportions", file=out)
    for p in rows:
        print("n=%d t_o/t=%.6f t_ii/t=%.6f" % (p.n, p.t_o_over_t, p.t_ii_over_t), file=out)
    ok &= _print_reports([asymptotics.check_in_out_trend(rows)], out)
    if args.fekete:
        ok &= _print_reports([asymptotics.fekete_check(T["r"]), asymptotics.fekete_check(T["k"])], out)
    fit = None
    if args.fit:
        fit = asymptotics.fit_nlogn(T["r"], T["m"])
        print("# r(n)/m(n) ~ K n ln(n)", file=out)
        print("K_odd=%.10f K_even=%.10f" % (fit.K_odd, fit.K_even), file=out)
        for n, e in sorted(fit.residuals.items()):
            print("n=%d residual=%+.6f" % (n, e), file=out)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["series", "n", "value"])
            for name in sorted(series):
                for n, v in asymptotics.growth_ratios(series[name]):
                    w.writerow(["ratio_" + name, n, repr(v)])
            if fit is not None:
                for n, e in sorted(fit.residuals.items()):
                    w.writerow(["fit_residual", n, repr(e)])
    return EXIT_OK if ok else EXIT_FAIL


def cmd_render(args, out) -> int:
    p = parse_permutation(args.perm)
    if not is_folding(p):
        raise UsageError("%s is not a folding" % format_permutation(p))
    try:
        if args.ascii:
            doc = render.ascii_folding(p, not args.blank) if args.kind == "folding" else render.ascii_meander(p)
        else:
            spec = render.DiagramSpec(kind=args.kind, cell=args.cell, labeled=not args.blank)
            doc = render.render_folding(p, spec) if args.kind == "folding" else render.render_meander(p, spec)
    except render.RenderError as exc:
        raise UsageError(str(exc))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(doc)
    else:
        out.write(doc)
    return EXIT_OK


def cmd_tables(args, out) -> int:
    tables = sequences.load_reference_tables()
    print("data directory: %s" % sequences.data_dir(), file=out)
    for name in sorted(tables):
        t = tables[name]
        print("%-5s %3d..%-3d last=%d" % (name, t.first, t.last, t[t.last]), file=out)
    if not args.check:
        return EXIT_OK
    print("checksums: ok", file=out)
    ok = _print_reports(sequences.verify_reference_identities(tables), out)
    ok &= _print_reports([sequences.partial_sum_bounds(tables)], out)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- parser


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stampfold", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("count", help="compute a counting sequence")
    p.add_argument("seq", choices=sequences.SEQUENCE_NAMES)
    p.add_argument("--max-n", type=int, required=True, help="largest index (p for k, k_o)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--guard", type=int, help="raise the enumeration guard")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list foldings one per line")
    p.add_argument("--kind", choices=("foldings", "semi-meanders", "meanders", "symmetric-shapes"),
                   required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--limit", type=int)
    p.add_argument("--max-n", type=int, default=enumeration.MAX_ENUMERATION_N)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", help="report folding, end and symmetry flags")
    p.add_argument("--perm", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="oracles, identity battery and table comparison")
    p.add_argument("--max-n", type=_positive, default=8, help="brute-force oracle range")
    p.add_argument("--ident-max", type=int, help="identity battery range (default max(12, max-n))")
    p.add_argument("--workers", type=_positive, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("asymptotics", help="growth ratios and trend diagnostics")
    p.add_argument("--fit", action="store_true")
    p.add_argument("--fekete", action="store_true")
    p.add_argument("--csv", metavar="FILE")
    p.set_defaults(func=cmd_asymptotics)

    p = sub.add_parser("render", help="draw a folding or meander")
    p.add_argument("--kind", choices=("folding", "meander"), default="folding")
    p.add_argument("--perm", required=True)
    p.add_argument("--blank", action="store_true")
    p.add_argument("--ascii", action="store_true")
    p.add_argument("--cell", type=_positive, default=20)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("tables", help="bundled reference tables")
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_tables)
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args, out)
    except (UsageError, PermutationError) as exc:
        print("stampfold: error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except ReferenceDataError as exc:
        print("stampfold: reference data: %s" % exc, file=sys.stderr)
        return EXIT_FAIL
    except shapes.InconsistencyError as exc:
        print("stampfold: internal inconsistency: %s" % exc, file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
