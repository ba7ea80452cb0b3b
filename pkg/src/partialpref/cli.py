"""Command-line front end.

Subcommands: validate, compare, filter, table, check, saturate.  Results
go to stdout, diagnostics to stderr.  Exit codes: 0 success, 1 usage or
parse error, 2 strict-fact violation, 3 table mismatch, 4 axiom
violations.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import casetable, dsl, engine
from .errors import PrefError, StrictViolation, TableMismatch
from .relation import KIND_INDEX


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="partialpref",
        description="Reason about partial preferences over alternatives and lotteries.",
    )
    parser.add_argument("--format", choices=("text", "tsv"), default="text")
    parser.add_argument("--verbose", action="store_true", help="include rule provenance")
    parser.add_argument(
        "--normalize", action="store_true", help="rescale lottery weights to sum to 1"
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("validate", help="build and validate a preference file")
    p.add_argument("prefs", type=Path)

    p = sub.add_parser("compare", help="judge a pair of named lotteries")
    p.add_argument("prefs", type=Path)
    p.add_argument("lotteries", type=Path)
    p.add_argument("name1")
    p.add_argument("name2")

    p = sub.add_parser("filter", help="keep only offers that are not certainly dominated")
    p.add_argument("prefs", type=Path)
    p.add_argument("lotteries", type=Path)

    p = sub.add_parser("table", help="emit or verify the exhaustive case table")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--emit", action="store_true")
    group.add_argument("--verify", type=Path, metavar="TRANSCRIPTION")

    p = sub.add_parser("check", help="check an explicit finite model against the axioms")
    p.add_argument("prefs", type=Path)
    p.add_argument("model", type=Path)

    p = sub.add_parser("saturate", help="derive weak/strict facts over a lottery family")
    p.add_argument("prefs", type=Path)
    p.add_argument("lotteries", type=Path)
    return parser


def _load_relation(path: Path):
    return dsl.relation_from_document(dsl.parse_prefs(path.read_text("utf-8")))


def _load_lotteries(path: Path, normalize: bool):
    doc = dsl.parse_lotteries(path.read_text("utf-8"))
    return dsl.lotteries_from_document(doc, normalize=normalize)


def _cmd_validate(args, out, err) -> int:
    try:
        rel = _load_relation(args.prefs)
    except StrictViolation as exc:
        print(str(exc), file=err)
        return 2
    print(
        f"universe: {len(rel.universe)} alternatives; closure: {len(rel.weak)} weak pairs",
        file=out,
    )
    return 0


def _cmd_compare(args, out, err) -> int:
    rel = _load_relation(args.prefs)
    lots = _load_lotteries(args.lotteries, args.normalize)
    for name in (args.name1, args.name2):
        if name not in lots:
            print(f"unknown lottery name: {name!r}", file=err)
            return 1
    verdict = engine.compare(rel, lots[args.name1], lots[args.name2])
    if args.format == "tsv":
        line = "\t".join(k.symbol for k in verdict.sorted_members())
        print(f"{args.name1}\t{args.name2}\t{line}", file=out)
        if args.verbose:
            for note in verdict.provenance:
                print(f"  {note}", file=out)
    else:
        print(dsl.render_verdict(verdict, verbose=args.verbose), file=out)
    return 0


def _cmd_filter(args, out, err) -> int:
    rel = _load_relation(args.prefs)
    lots = _load_lotteries(args.lotteries, args.normalize)
    kept = engine.maximal_filter(rel, list(lots.items()))
    for name, _ in kept:
        print(name, file=out)
    return 0


def _cmd_table(args, out, err) -> int:
    if args.verify is not None:
        try:
            casetable.verify_table(args.verify.read_text("utf-8"))
        except TableMismatch as exc:
            for case, expected, computed in exc.diffs:
                exp = " ".join(k.symbol for k in sorted(expected, key=KIND_INDEX.__getitem__)) if expected else "(missing)"
                got = " ".join(k.symbol for k in sorted(computed, key=KIND_INDEX.__getitem__)) if computed else "(missing)"
                print(f"{case.symbols()}: transcription [{exp}] != computed [{got}]", file=err)
            return 3
        print("table matches transcription", file=out)
        return 0
    out.write(casetable.render_table(casetable.regenerate_table()))
    return 0


def _cmd_check(args, out, err) -> int:
    rel = _load_relation(args.prefs)
    doc, pairs = dsl.parse_model(args.model.read_text("utf-8"))
    lots = dsl.lotteries_from_document(doc, normalize=args.normalize)
    weak = set()
    for left, right in pairs:
        for name in (left, right):
            if name not in lots:
                print(f"unknown lottery name in model: {name!r}", file=err)
                return 1
        weak.add((lots[left], lots[right]))
    model = casetable.FiniteModel(family=tuple(lots.values()), weak=frozenset(weak))
    violations = casetable.check_axioms(model, rel)
    name_of = {lot: name for name, lot in lots.items()}

    def label(w):
        return name_of.get(w, str(w))

    for v in violations:
        witnesses = ", ".join(label(w) for w in v.witnesses)
        print(f"{v.axiom}: {witnesses}", file=out)
    if violations:
        return 4
    print("no violations", file=out)
    return 0


def _cmd_saturate(args, out, err) -> int:
    rel = _load_relation(args.prefs)
    lots = _load_lotteries(args.lotteries, args.normalize)
    facts = engine.saturate(rel, list(lots.values()))
    order = {lot: i for i, lot in enumerate(lots.values())}
    names = {lot: name for name, lot in lots.items()}
    sep = "\t" if args.format == "tsv" else " "
    rows = []
    for x, y in facts.weak:
        if x == y:
            continue
        op = "<" if (x, y) in facts.strict else "<="
        rows.append((order[x], order[y], f"{names[x]}{sep}{op}{sep}{names[y]}"))
    for _, _, line in sorted(rows):
        print(line, file=out)
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "compare": _cmd_compare,
    "filter": _cmd_filter,
    "table": _cmd_table,
    "check": _cmd_check,
    "saturate": _cmd_saturate,
}


def run(argv, out=None, err=None) -> int:
    """Run the CLI with explicit argv and streams; returns the exit code."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return _COMMANDS[args.subcommand](args, out, err)
    except (PrefError, OSError) as exc:
        print(str(exc), file=err)
        return 1


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))
