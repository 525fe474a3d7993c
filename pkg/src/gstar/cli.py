"""gstar command line.

Exit status: 0 on success, 1 on a domain error (bad input, failed check),
2 when a computation runs out of budget.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import constructions, grid, search
from .core import BudgetExceeded, DomainError, format_rational
from .profile import (
    area_check,
    format_profile,
    parse_profile,
    unchecked_marginals,
    validate,
    weight_identity,
)

EXIT_OK, EXIT_DOMAIN, EXIT_BUDGET = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_DOMAIN, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {v}")
    return v


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_compute(args) -> int:
    cert = search.enumerate_gstar(args.r, budget=args.budget, jobs=args.jobs)
    print(cert.summary())
    if args.out:
        _emit(search.format_certificate(cert), args.out)
    if args.exact and cert.mode != "exact":
        print(f"r={args.r} could not be settled exactly within the budget", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_construct(args) -> int:
    _emit(format_profile(constructions.construct(args.r, args.family)), args.out)
    return EXIT_OK


def cmd_discretize(args) -> int:
    p = parse_profile(_read(args.profile))
    _emit(grid.format_square(grid.profile_to_square(p, args.t)), args.out)
    return EXIT_OK


def cmd_extend(args) -> int:
    sq = grid.parse_square(_read(args.square))
    _emit(grid.format_square(grid.extend_square(sq, args.n)), args.out)
    return EXIT_OK


def _profile_report(p) -> list[str]:
    report = validate(p)
    lines = [f"valid={'true' if report.ok else 'false'}"]
    lines += [f"violation {v}" for v in report]
    m = unchecked_marginals(p)
    for i, (x, y) in enumerate(zip(m.a_i, m.b_i), start=1):
        lines.append(f"color {i} a={format_rational(x)} b={format_rational(y)} total={format_rational(x + y)}")
    lines.append(f"objective={format_rational(m.objective)}")
    area, ok = area_check(p)
    lines.append(f"area={format_rational(area)} area_ge_1={'true' if ok else 'false'}")
    lines.append(f"weight_identity={'true' if weight_identity(p) else 'false'}")
    return lines


def cmd_verify(args) -> int:
    if args.profile:
        p = parse_profile(_read(args.profile))
        lines = _profile_report(p)
    else:
        sq = grid.parse_square(_read(args.square))
        rep = grid.touched_counts(sq)
        lines = [f"n={sq.n} r={sq.r}"]
        for i, (c, w) in enumerate(zip(rep.columns_containing, rep.rows_containing), start=1):
            lines.append(f"color {i} columns={c} rows={w} touched={c + w}")
        lines.append(f"max_touched={rep.max_touched}")
        p = grid.square_to_profile(sq)
        lines += _profile_report(p)
    print("\n".join(lines))
    return EXIT_OK if validate(p).ok else EXIT_DOMAIN


def cmd_oracle(args) -> int:
    print(grid.brute_force_g(args.n, args.r, budget=args.budget, prune=not args.no_prune))
    return EXIT_OK


def cmd_bounds(args) -> int:
    last = args.through if args.through is not None else args.r
    if last < args.r:
        raise DomainError(f"--through {last} is below --r {args.r}")
    lines = [constructions.BOUND_CSV_HEADER]
    lines += [constructions.bound_table(r).csv_row() for r in range(args.r, last + 1)]
    print("\n".join(lines))
    return EXIT_OK


def cmd_certify(args) -> int:
    try:
        cert = search.parse_certificate(_read(args.certificate))
    except DomainError as exc:
        print("false")
        print(f"unreadable certificate: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    ok = search.certify(cert)
    print("true" if ok else "false")
    return EXIT_OK if ok else EXIT_DOMAIN


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gstar", description="Exact tools for the monochromatic coverage constant g*(r).")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="g*(r) with a certificate")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--exact", action="store_true", help="exit 2 unless the value is proven exact")
    p.add_argument("--out", help="write the certificate here ('-' for stdout)")
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--budget", type=_positive, help="max candidate pairs (default: GSTAR_BUDGET or 10^7)")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("construct", help="emit a construction profile")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--family", choices=constructions.FAMILIES, default="auto")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("discretize", help="blow a profile up to a coloring square")
    p.add_argument("--profile", required=True)
    p.add_argument("--t", type=_positive, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_discretize)

    p = sub.add_parser("extend", help="grow a square by copying its last column and row")
    p.add_argument("--square", required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("verify", help="check a profile or a square")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--profile")
    src.add_argument("--square")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force g(n, r)")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--budget", type=_positive, help="max r^(n^2) (default: GSTAR_BUDGET or 2^24)")
    p.add_argument("--no-prune", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bounds", help="bound table as CSV")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--through", type=_positive)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("certify", help="re-check a certificate file")
    p.add_argument("--certificate", required=True)
    p.set_defaults(func=cmd_certify)
    return parser


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
