"""Command-line entry point: ``galoisdct <subcommand> ...``.

Exit codes: 0 success, 1 usage or input error, 2 verification mismatch.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import codegen, executor, galois
from .chebyshev import factor_tower, format_factor_tower
from .field import DyadicRational, FieldElement, FieldError, parse_rational
from .planner import make_plan

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _skew(text: str) -> DyadicRational:
    try:
        return DyadicRational.parse(text)
    except FieldError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _load_plan(path: str):
    try:
        return codegen.from_json(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read plan {path}: {exc.strerror}") from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"malformed plan file {path}: {exc}") from exc


def _read_vector(path: str, exact: bool) -> list:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read input {path}: {exc.strerror}") from exc
    values = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            q = parse_rational(line)
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: {exc}") from exc
        values.append(q if exact else float(q))
    return values


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_plan(args) -> int:
    if args.skew is not None and args.transform != "dct4-poly":
        raise UsageError("--skew only applies to --transform dct4-poly")
    try:
        plan = make_plan(args.transform, args.n, args.skew)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _write(codegen.to_json(plan, coeffs=not args.compact) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    plan = _load_plan(args.plan)
    mode = "exact" if args.exact else "float"
    try:
        report = executor.verify(plan, mode, args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(report.to_json() if args.json else report.to_text())
    return EXIT_OK if report.passed else EXIT_MISMATCH


def _closed_form(transform: str) -> str:
    return {
        "dct4_poly": "mults (n/2)·log2 n, adds (3n/2)·log2 n",
        "dct4": "mults (n/2)·log2 n + n, adds (3n/2)·log2 n",
        "dct2_poly": "mults (k-2)·2^(k-1) + 1, adds 3·mults + 2(n-1), n = 2^k",
        "dct2": "mults (k-2)·2^(k-1) + n, adds 3·((k-2)·2^(k-1) + 1) + 2(n-1), n = 2^k",
    }[transform]


def cmd_count(args) -> int:
    plan = _load_plan(args.plan)
    ops = executor.count_ops(plan)
    want = executor.expected_ops(plan.transform, plan.size)
    print(f"transform: {plan.transform}")
    print(f"size: {plan.size}")
    print(f"mults: {ops.mults}")
    print(f"adds: {ops.adds}")
    print(f"expected mults: {want.mults}")
    print(f"expected adds: {want.adds}")
    print(f"closed form: {_closed_form(plan.transform)}")
    return EXIT_OK


def _format_value(v) -> str:
    if isinstance(v, FieldElement):
        q = v.to_rational()
        return str(q) if q is not None else v.surd()
    return str(v)


def cmd_apply(args) -> int:
    plan = _load_plan(args.plan)
    x = _read_vector(args.input, args.exact)
    if len(x) != plan.size:
        raise UsageError(f"input has {len(x)} values, plan expects {plan.size}")
    if args.exact:
        for v in executor.apply(plan, x, "exact"):
            print(_format_value(v))
    else:
        for v in executor.apply(plan, x, "float"):
            print(repr(float(v)))
    return EXIT_OK


def cmd_factor(args) -> int:
    r = args.skew or DyadicRational(1, 1)
    if args.k < 0:
        raise UsageError("--k must be non-negative")
    try:
        print(format_factor_tower(args.k, r))
        if args.expand:
            print()
            for stage in factor_tower(args.k, r):
                for f in stage:
                    print(f"{f.symbolic()} = {f.poly()}")
    except FieldError as exc:
        raise UsageError(str(exc)) from exc
    return EXIT_OK


def cmd_galois(args) -> int:
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    try:
        print(galois.format_group(galois.galois_group(args.k)))
    except FieldError as exc:
        raise UsageError(str(exc)) from exc
    return EXIT_OK


def cmd_emit(args) -> int:
    plan = _load_plan(args.plan)
    text = codegen.emit_graph(plan) if args.format == "graph" else codegen.emit_kernel(plan)
    _write(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="galoisdct", description="Fast DCT-2/DCT-4 algorithms over exact tower fields.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("plan", help="build a factored plan and print it as JSON")
    sp.add_argument("--transform", required=True, choices=["dct4", "dct4-poly", "dct2", "dct2-poly"])
    sp.add_argument("--n", required=True, type=int)
    sp.add_argument("--skew", type=_skew, help="dyadic skew m/2^j (dct4-poly only)")
    sp.add_argument("--out")
    sp.add_argument("--compact", action="store_true",
                    help="omit power-basis coefficients (sparse terms only)")
    sp.set_defaults(func=cmd_plan)

    sp = sub.add_parser("verify", help="check a plan against its reference matrix")
    sp.add_argument("--plan", required=True)
    sp.add_argument("--exact", action="store_true")
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("count", help="count multiplications and additions")
    sp.add_argument("--plan", required=True)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("apply", help="run a plan on an input vector file")
    sp.add_argument("--plan", required=True)
    sp.add_argument("--input", required=True)
    sp.add_argument("--exact", action="store_true")
    sp.set_defaults(func=cmd_apply)

    sp = sub.add_parser("factor", help="stepwise factorization of 2T_{2^k} - 2cos(rπ)")
    sp.add_argument("--k", required=True, type=int)
    sp.add_argument("--skew", type=_skew)
    sp.add_argument("--expand", action="store_true", help="also print coefficient forms")
    sp.set_defaults(func=cmd_factor)

    sp = sub.add_parser("galois", help="Galois group, subgroup chain and field tower")
    sp.add_argument("--k", required=True, type=int)
    sp.set_defaults(func=cmd_galois)

    sp = sub.add_parser("emit", help="emit a dataflow graph or kernel listing")
    sp.add_argument("--plan", required=True)
    sp.add_argument("--format", required=True, choices=["graph", "kernel"])
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_emit)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
