"""Command-line front end.

Subcommands: ``decompose``, ``verify``, ``sweep``, ``oracle``, ``analyze-n2``
and ``gen``. Exit status: 0 on success, 2 when the target is not
representable or a pair fails verification, 3 when the search budget runs
out, 1 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence, TextIO

from .field import FieldError, make_field
from .hyperplane import Hyperplane
from .oracle import (
    EXHAUSTIVE_LIMIT,
    enumerate_bracket_set,
    oracle_decompose,
    random_instance,
    sweep,
    verify_decomposition,
)
from .solver import DEFAULT_BUDGET, EXHAUSTED, NOT_REPRESENTABLE, analyze_n2, decompose
from .textio import ParseError, format_instance, format_pair, format_rows, parse_instance, parse_matrix, parse_pair

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_REPRESENTABLE = 2
EXIT_EXHAUSTED = 3

DEFAULT_FIELD = "gf 5"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _read(path: str, stdin: TextIO) -> str:
    if path == "-":
        return stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _matrix_json(M) -> list:
    fmt = M.field.format_element
    return [[fmt(v) for v in row] for row in M.rows]


# -- subcommands -------------------------------------------------------------------------


def _cmd_decompose(args, out, stdin) -> int:
    inst = parse_instance(_read(args.instance, stdin))
    H = Hyperplane(inst.B)
    result = decompose(inst.A, H, budget=args.budget, seed=args.seed)
    dec = result.decomposition
    if args.json:
        doc = {
            "status": result.status,
            "field": inst.field.descriptor(),
            "n": inst.n,
            "seed": args.seed,
            "budget": args.budget,
            "attempts": result.attempts,
            "strategy": dec.strategy if dec else None,
            "A1": _matrix_json(dec.A1) if dec else None,
            "A2": _matrix_json(dec.A2) if dec else None,
            "obstruction": _matrix_json(result.obstruction) if result.obstruction is not None else None,
            "log": result.log,
        }
        print(json.dumps(doc, sort_keys=True), file=out)
    else:
        print(f"# status: {result.status}", file=out)
        print(f"# seed: {args.seed}", file=out)
        print(f"# attempts: {result.attempts}", file=out)
        for line in result.log:
            print(f"# {line}", file=out)
        if dec is not None:
            print(f"# strategy: {dec.strategy}", file=out)
            out.write(format_pair(dec.A1, dec.A2))
        elif result.obstruction is not None:
            print("# bracket line of H is spanned by:", file=out)
            for row in format_rows(result.obstruction).splitlines():
                print(f"#   {row}", file=out)
    if result.ok:
        return EXIT_OK
    return EXIT_NOT_REPRESENTABLE if result.status == NOT_REPRESENTABLE else EXIT_EXHAUSTED


def _cmd_verify(args, out, stdin) -> int:
    if args.instance == "-" and args.pair == "-":
        raise UsageError("only one of --instance and --pair may read standard input")
    inst = parse_instance(_read(args.instance, stdin))
    pair = parse_pair(_read(args.pair, stdin), inst.field, inst.n)
    verdict = verify_decomposition(inst.A, Hyperplane(inst.B), pair)
    if verdict.ok:
        print("verified: [A1,A2] = A, tr(B*A1) = 0, tr(B*A2) = 0", file=out)
        return EXIT_OK
    print("verification failed", file=out)
    for d in verdict.diagnostics:
        print(f"  {d}", file=out)
    return EXIT_NOT_REPRESENTABLE


def _cmd_sweep(args, out, stdin) -> int:
    report = sweep(make_field(args.field), args.n, args.count, seed=args.seed,
                   force_identity_in_h=args.force_identity_in_h, budget=args.budget,
                   workers=args.workers)
    if args.json:
        print(report.to_json(), file=out)
    else:
        print(f"field: {report.field}", file=out)
        print(f"n: {report.n}", file=out)
        print(f"seed: {report.seed}", file=out)
        print(f"successes: {report.successes}/{report.count}", file=out)
        for name, hits in report.strategy_histogram.items():
            print(f"  {name}: {hits}", file=out)
        for f in report.failures:
            print(f"failure #{f['index']}: {f['status']} (oracle: {f['oracle']})", file=out)
        print(f"elapsed_ms: {report.elapsed_ms}", file=out)
    return EXIT_OK if not report.failures else EXIT_EXHAUSTED


def _cmd_oracle(args, out, stdin) -> int:
    inst = parse_instance(_read(args.instance, stdin))
    F, n = inst.field, inst.n
    if args.exhaustive and (not F.is_finite or F.q ** (n * n - 1) > EXHAUSTIVE_LIMIT):
        raise UsageError("hyperplane too large for exhaustive enumeration")
    mode = "exhaustive" if args.exhaustive else "sampled"
    dec = oracle_decompose(inst.A, Hyperplane(inst.B), mode, budget=args.budget, seed=args.seed)
    print(f"# oracle mode: {mode}", file=out)
    print(f"# seed: {args.seed}", file=out)
    if dec is None:
        print("# no pair found", file=out)
        return EXIT_NOT_REPRESENTABLE if args.exhaustive and args.budget is None else EXIT_EXHAUSTED
    out.write(format_pair(dec.A1, dec.A2))
    return EXIT_OK


def _cmd_analyze_n2(args, out, stdin) -> int:
    B = parse_matrix(_read(args.B, stdin))
    if args.field is not None and make_field(args.field) != B.field:
        raise UsageError("--field does not match the field of the normal matrix")
    if B.is_zero():
        raise UsageError("the normal matrix must be nonzero")
    H = Hyperplane(B)
    report = analyze_n2(H)
    if report.case == "b":
        print("case b: identity not in H; [H,H] = sl_2", file=out)
    else:
        print("case a: identity in H; [H,H] is the line spanned by", file=out)
        print(format_rows(report.generator), file=out)
    if args.enumerate:
        bs = enumerate_bracket_set(H)
        print(f"enumerated: {bs.size} brackets, span dimension {bs.dimension}, "
              f"subspace: {bs.is_subspace}", file=out)
    return EXIT_OK


def _cmd_gen(args, out, stdin) -> int:
    F = make_field(args.field)
    A, B = random_instance(F, args.n, random.Random(args.seed), not args.free_normal)
    print(f"# seed: {args.seed}", file=out)
    out.write(format_instance(A, B))
    return EXIT_OK


# -- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hypercomm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decompose", help="decompose A as a commutator inside H = {B}^perp")
    p.add_argument("--instance", required=True, help="instance file, or - for stdin")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("verify", help="check a pair against an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--pair", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sweep", help="decompose many seeded random instances")
    p.add_argument("--field", default=DEFAULT_FIELD)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--force-identity-in-h", action="store_true",
                   help="draw trace-zero normals so that I_n lies in H")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("oracle", help="brute-force decomposition")
    p.add_argument("--instance", required=True)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("analyze-n2", help="structure of [H,H] for 2x2 matrices")
    p.add_argument("--field", default=None)
    p.add_argument("--B", required=True, help="matrix file holding the normal")
    p.add_argument("--enumerate", action="store_true", help="also enumerate [H,H] exhaustively")
    p.set_defaults(func=_cmd_analyze_n2)

    p = sub.add_parser("gen", help="print a random instance with trace-zero A and B")
    p.add_argument("--field", default=DEFAULT_FIELD)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--free-normal", action="store_true", help="do not force tr(B) = 0")
    p.set_defaults(func=_cmd_gen)
    return parser


def run(argv: Sequence[str] | None = None, out: TextIO | None = None,
        err: TextIO | None = None, stdin: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    stdin = stdin or sys.stdin
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "n", 1) is not None and getattr(args, "n", 1) < 1:
            raise UsageError("--n must be positive")
        return args.func(args, out, stdin)
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_USAGE
    except (FieldError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
