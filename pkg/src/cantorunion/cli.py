"""Command-line interface.

Digit strings are given lowest index first, e.g. ``-t 1,0,1`` is
``((1-beta)/N) (beta^-1 + beta^-3)``.  ``t_0 = 0`` is implicit with ``-t``;
``--json`` files list it explicitly.

Exit codes: 0 SelfSimilar, 1 NotSelfSimilar (or a failed verification),
2 SufficientOnly, 3 bad input, 4 budget or memory guard, 5 precondition.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from cantorunion.admissibility import OracleDisagreement, build_graph, decide_self_similar
from cantorunion.constructors import (
    BudgetExceeded,
    EnumerationConfig,
    construct_admissible,
    count_self_similar,
    enumerate_admissible,
)
from cantorunion.digits import DigitString, InvalidVector, TranslationVector, conjugate
from cantorunion.ifs import NotAdmissible, VerifyConfig, extract_ifs, prune_ifs, verify_numeric
from cantorunion.words import UniverseTooLarge

EXIT_INPUT = 3
EXIT_BUDGET = 4
EXIT_PRECONDITION = 5

CSV_SCHEMA_VERSION = 1
CSV_HEADER = ["m", "N", "tau", "entries", "verdict"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would read as SufficientOnly
    def error(self, message):
        raise UsageError(message)


def _add_vector_args(p: argparse.ArgumentParser):
    p.add_argument("-N", type=int, help="alphabet parameter (digits 0..N)")
    p.add_argument("-t", action="append", default=[], metavar="DIGITS", help="translate t_j as comma-separated digits, lowest index first; repeat for each j >= 1")
    p.add_argument("--json", dest="json_path", metavar="PATH", help="read the vector from a JSON file ('-' for stdin)")


def _read_vector(args) -> TranslationVector:
    if args.json_path:
        text = sys.stdin.read() if args.json_path == "-" else open(args.json_path).read()
        return TranslationVector.from_json(text)
    if args.N is None:
        raise UsageError("give -N with -t, or --json")
    entries = [DigitString((), args.N)] + [DigitString.parse(s, args.N) for s in args.t]
    return TranslationVector(args.N, tuple(entries))


def _emit(obj, out):
    json.dump(obj, out, indent=2)
    out.write("\n")


def cmd_check(args, out) -> int:
    t = _read_vector(args)
    verdict = decide_self_similar(t, regime=args.regime, cross_check=args.cross_check)
    payload = {"vector": t.to_json(), **verdict.to_json()}
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(build_graph(t).to_dot())
    if args.ifs and verdict.admissible_side is not None:
        side = t if verdict.admissible_side == "t" else conjugate(t)
        payload["ifs_vector"] = side.to_json()
        payload["ifs"] = [f.to_json() for f in extract_ifs(side)]
    _emit(payload, out)
    return verdict.exit_code


def cmd_construct(args, out) -> int:
    t = construct_admissible(args.m, args.N)
    _emit(t.to_json(), out)
    return 0


def cmd_enumerate(args, out) -> int:
    config = EnumerationConfig(budget=args.budget, jobs=args.jobs)
    if args.count:
        _emit({"m": args.m, "N": args.N, "tau_max": args.tau_max, "self_similar": count_self_similar(args.m, args.N, args.tau_max, config)}, out)
        return 0
    found = enumerate_admissible(args.m, args.N, args.tau_max, config)
    if args.format == "csv":
        out.write(f"# cantorunion enumerate csv schema v{CSV_SCHEMA_VERSION}\n")
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for t in found:
            entries = " ".join(e.text() for e in t.entries[1:])
            writer.writerow([t.m, t.N, t.tau, entries, "admissible"])
    else:
        _emit([t.to_json() for t in found], out)
    return 0


def cmd_ifs(args, out) -> int:
    t = _read_vector(args)
    maps = extract_ifs(t, args.length)
    payload = {"vector": t.to_json(), "maps": [f.to_json() for f in maps]}
    if args.prune:
        kept, removed = prune_ifs(t, maps)
        payload["pruned"] = {"heuristic": True, "kept": [f.to_json() for f in kept], "removed": len(removed)}
    _emit(payload, out)
    return 0


def cmd_verify(args, out) -> int:
    t = _read_vector(args)
    try:
        beta = Fraction(args.beta)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse beta {args.beta!r}") from exc
    config = VerifyConfig(
        samples=args.samples,
        depth=args.depth,
        seed=args.seed,
        mode="float" if args.float else "exact",
        tolerance=args.tolerance,
    )
    report = verify_numeric(t, None, beta, config)
    _emit(report.to_json(), out)
    return 0 if report.ok else 1


def cmd_graph(args, out) -> int:
    t = _read_vector(args)
    g = build_graph(t)
    if args.format == "dot":
        out.write(g.to_dot())
    else:
        _emit(
            {
                "tau": g.tau,
                "vertices": [g.label(c) for c in g.codes()],
                "edges": [[g.label(u), g.label(v)] for u, v in g.edges()],
            },
            out,
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cantorunion", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="decide self-similarity of the union")
    _add_vector_args(p)
    p.add_argument("--regime", choices=["below", "between"], default="below", help="below: beta < 1/(2N+1); between: 1/(2N+1) <= beta < 1/(N+1)")
    p.add_argument("--cross-check", action="store_true", help="also run nilpotency and covering and require agreement")
    p.add_argument("--dot", metavar="PATH", help="write the shift graph in DOT format")
    p.add_argument("--ifs", action="store_true", help="append a generating IFS on positive verdicts")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", help="build an admissible vector with m+1 entries")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-N", type=int, required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("enumerate", help="list all admissible vectors up to a depth")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-N", type=int, required=True)
    p.add_argument("--tau-max", type=int, required=True)
    p.add_argument("--budget", type=int, default=EnumerationConfig.budget)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--count", action="store_true", help="count SelfSimilar verdicts instead of listing")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("ifs", help="extract a generating IFS")
    _add_vector_args(p)
    p.add_argument("--length", type=int, help="covering length (default: minimal)")
    p.add_argument("--prune", action="store_true", help="also report a greedily pruned IFS")
    p.set_defaults(func=cmd_ifs)

    p = sub.add_parser("verify", help="numeric check of the extracted IFS at a rational beta")
    _add_vector_args(p)
    p.add_argument("--beta", required=True, help="rational beta, e.g. 1/4")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--float", action="store_true", help="float arithmetic instead of exact rationals")
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("graph", help="print the shift graph")
    _add_vector_args(p)
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.set_defaults(func=cmd_graph)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out)
    except (UsageError, InvalidVector, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (BudgetExceeded, UniverseTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (NotAdmissible, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OracleDisagreement as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 6


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run the CLI in-process and capture stdout; handy in tests and notebooks."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
