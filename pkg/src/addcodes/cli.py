"""Command-line interface: ``addcodes analyze|dual|search|catalog|verify|convert``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 refusal because a computation would exceed an enumeration limit.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from . import catalog, verify
from .code import (
    DEFAULT_ENUM_LIMIT,
    DEFAULT_SUBSET_LIMIT,
    AdditiveCode,
    EnumerationLimitError,
    bb_linearity_test,
    format_code,
    is_f4_linear_literal,
    min_distance,
    parse_code,
    strength,
    symplectic_dual,
    weight_distribution,
)
from .geometry import ObjectFamily, code_from_family, family_from_code, format_family, parse_family
from .search import MODES, Problem, default_workers, format_problem, format_report, parse_problem, run_problem

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3

log = logging.getLogger("addcodes")


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _emit(args, record: dict, text: str) -> None:
    print(json.dumps(record) if args.json else text.rstrip("\n"))


def load_code_or_family(text: str) -> tuple[AdditiveCode | ObjectFamily, str]:
    """Parse a code file (binary or f4) or, failing that, a family file."""
    try:
        return parse_code(text)
    except ValueError as code_err:
        try:
            return parse_family(text), "family"
        except ValueError:
            raise code_err from None


def _load_code(path: str) -> AdditiveCode:
    obj, _ = load_code_or_family(_read(path))
    return code_from_family(obj) if isinstance(obj, ObjectFamily) else obj


# ----------------------------------------------------------------- verbs


def cmd_analyze(args) -> int:
    c = _load_code(args.file)
    if args.weights and c.r > args.limit:
        raise EnumerationLimitError(f"weight distribution needs 2^{c.r} codewords; limit is 2^{args.limit}")
    rec: dict = {"n": c.n, "k": c.k, "r": c.r}
    rec["d"] = min_distance(c, args.limit, method="auto")
    rec["strength"] = strength(c, method="auto", limit=args.limit)
    if c.r <= args.limit:
        rec["weight_distribution"] = weight_distribution(c, args.limit).nonzero()
    rec["f4_linear"] = is_f4_linear_literal(c)
    if c.n <= args.subset_limit:
        ok, witness = bb_linearity_test(c, args.subset_limit)
        rec["bb_linear"] = ok
        rec["bb_witness"] = list(witness) if witness is not None else None
    yes = {True: "yes", False: "no"}
    lines = [
        f"code      [{c.n},{c.k_str()},{rec['d']}]_4",
        f"n         {c.n}",
        f"k         {c.k_str()}",
        f"r         {c.r}",
        f"d         {rec['d']}",
        f"strength  {rec['strength']}",
    ]
    if "weight_distribution" in rec:
        lines.append("weights   " + ", ".join(f"A{i}={a}" for i, a in rec["weight_distribution"].items()))
    else:
        lines.append(f"weights   not enumerated (r = {c.r} exceeds limit {args.limit})")
    lines.append(f"linear    {yes[rec['f4_linear']]} (closure under w)")
    if "bb_linear" in rec:
        extra = "" if rec["bb_linear"] else f", odd-dimensional subfamily {tuple(rec['bb_witness'])}"
        lines.append(f"bb test   {yes[rec['bb_linear']]}{extra}")
    else:
        lines.append(f"bb test   skipped (n = {c.n} exceeds subset limit {args.subset_limit})")
    _emit(args, rec, "\n".join(lines))
    return EXIT_OK


def cmd_dual(args) -> int:
    d = symplectic_dual(_load_code(args.file))
    _write(format_code(d, args.format), args.output)
    return EXIT_OK


def _load_problem(args) -> Problem:
    if args.catalog:
        entry = catalog.ENTRIES.get(args.catalog)
        if entry is None or entry.kind != "search problem":
            raise UsageError(f"{args.catalog!r} is not a catalog search problem")
        return entry.build()
    if not args.file:
        raise UsageError("give a problem file or --catalog NAME")
    return parse_problem(_read(args.file))


def cmd_search(args) -> int:
    p = _load_problem(args)
    rep = run_problem(p, args.mode, args.workers)
    if args.json:
        print(json.dumps({"count": rep.count, "nodes": rep.nodes_visited, "elapsed": rep.elapsed,
                          "exhausted": rep.exhausted, "note": rep.note}))
        for rec in rep.records():
            print(json.dumps(rec))
    else:
        sys.stdout.write(format_report(rep))
    return EXIT_OK


def _render_entry(name: str, fmt: str | None) -> str:
    value = catalog.build(name)
    if isinstance(value, AdditiveCode):
        if fmt == "family":
            return format_family(family_from_code(value))
        return format_code(value, fmt or "binary")
    if fmt not in (None, "family") and isinstance(value, ObjectFamily):
        return format_code(code_from_family(value), fmt)
    if isinstance(value, ObjectFamily):
        return format_family(value)
    if isinstance(value, tuple) and all(isinstance(r, str) for r in value):
        return "\n".join(value) + "\n"
    return format_problem(value)


def cmd_catalog(args) -> int:
    if args.action == "list":
        for e in catalog.ENTRIES.values():
            if args.json:
                print(json.dumps({"name": e.name, "kind": e.kind, "description": e.description}))
            else:
                print(f"{e.name:<26} {e.kind:<17} {e.description}")
        return EXIT_OK
    if not args.name:
        raise UsageError("catalog emit needs an entry name")
    if args.name not in catalog.ENTRIES:
        raise UsageError(f"unknown catalog entry {args.name!r}")
    _write(_render_entry(args.name, args.format), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    def report(o: verify.Outcome) -> None:
        if args.json:
            print(json.dumps({"criterion": o.number, "title": o.title, "passed": o.passed,
                              "detail": o.detail, "elapsed": o.elapsed}), flush=True)
        else:
            print(o.line(), flush=True)

    outcomes = verify.run_tier(args.tier, args.workers, report)
    failed = [o.number for o in outcomes if not o.passed]
    if not args.json:
        print(f"{len(outcomes) - len(failed)}/{len(outcomes)} criteria passed"
              + (f"; failed: {', '.join(map(str, failed))}" if failed else ""))
    return EXIT_FAIL if failed else EXIT_OK


def cmd_convert(args) -> int:
    obj, _ = load_code_or_family(_read(args.file))
    if args.to == "family":
        fam = obj if isinstance(obj, ObjectFamily) else family_from_code(obj)
        out = format_family(fam)
    else:
        c = code_from_family(obj) if isinstance(obj, ObjectFamily) else obj
        out = format_code(c, args.to)
    _write(out, args.output)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable JSON lines output")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    ap = argparse.ArgumentParser(prog="addcodes", description="Additive quaternary codes and line families.")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("analyze", parents=[common], help="parameters, weights and linearity of a code")
    p.add_argument("file", help="code or family file ('-' for stdin)")
    p.add_argument("--limit", type=int, default=DEFAULT_ENUM_LIMIT, help="max binary dimension to enumerate")
    p.add_argument("--subset-limit", type=int, default=DEFAULT_SUBSET_LIMIT,
                   help="max length for the subset linearity test")
    p.add_argument("--weights", action="store_true", help="require the weight distribution (refuse over the limit)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("dual", parents=[common], help="symplectic dual of a code")
    p.add_argument("file")
    p.add_argument("--format", choices=("binary", "f4"), default="binary")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("search", parents=[common], help="run a search problem")
    p.add_argument("file", nargs="?", help="problem file ('-' for stdin)")
    p.add_argument("--catalog", metavar="NAME", help="use a named catalog problem instead of a file")
    p.add_argument("--mode", choices=MODES, default="count")
    p.add_argument("--workers", type=int, default=default_workers())
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("catalog", parents=[common], help="list or emit catalog entries")
    p.add_argument("action", choices=("list", "emit"))
    p.add_argument("name", nargs="?")
    p.add_argument("--format", choices=("binary", "f4", "family"))
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("--tier", choices=verify.TIERS, default="quick",
                   help="quick (seconds), standard (minutes) or long (hours)")
    p.add_argument("--workers", type=int, default=default_workers())
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("convert", parents=[common], help="convert between code and family formats")
    p.add_argument("file")
    p.add_argument("--to", choices=("binary", "f4", "family"), required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_convert)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(levelname)s %(message)s", stream=sys.stderr)
    if getattr(args, "workers", 1) < 1:
        ap.error("--workers must be at least 1")
    try:
        return args.func(args)
    except EnumerationLimitError as exc:
        print(f"addcodes: refused: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (UsageError, ValueError, KeyError) as exc:
        print(f"addcodes: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
