"""Command-line front end.

Subcommands: `classify` for one instance, `search` for family sweeps,
`perfect-plus-one` for the even-perfect prime-power scan, and `verify` for
the formula-versus-oracle invariant suite.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 verification
failure, 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import numtheory, oracle, search, verify
from .families import GroupKind
from .search import SearchRecord, SweepConfig

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_VERIFY = 3
EXIT_RESOURCE = 4

_CLASS_ALIASES = {
    "leinster": GroupKind.LEINSTER,
    "quasi": GroupKind.QUASI_LEINSTER,
    "quasi-leinster": GroupKind.QUASI_LEINSTER,
    "almost": GroupKind.ALMOST_LEINSTER,
    "almost-leinster": GroupKind.ALMOST_LEINSTER,
    "abundant": GroupKind.ABUNDANT,
    "deficient": GroupKind.DEFICIENT,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - argparse hook
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="leinster", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    cls = sub.add_parser("classify", help="classify one family instance")
    cls.add_argument("--family", required=True, choices=search.FAMILIES)
    cls.add_argument(
        "--params", required=True, help="comma-separated integers, e.g. 7,6,3"
    )
    cls.add_argument(
        "--verify",
        action="store_true",
        help="cross-check D against the brute-force oracle when in scope",
    )
    cls.add_argument("--table", action="store_true", help="aligned columns instead of JSON")

    srch = sub.add_parser("search", help="sweep a family parameter space")
    srch.add_argument("family", choices=search.FAMILIES)
    srch.add_argument("--max-n", type=int)
    srch.add_argument("--min-n", type=int)
    srch.add_argument("--max-m", type=int)
    srch.add_argument("--max-q", type=int)
    srch.add_argument("--max-p", type=int)
    srch.add_argument("--max-a", type=int)
    srch.add_argument("--r", type=int, help="fix the zm conjugation parameter r")
    srch.add_argument(
        "--paper-mode",
        action="store_true",
        help="zm only: restrict to prime m with n = m - 1",
    )
    srch.add_argument(
        "--class",
        dest="classes",
        help="comma-separated class filter (leinster, quasi-leinster, "
        "almost-leinster, abundant, deficient)",
    )
    srch.add_argument(
        "--dedupe",
        action="store_true",
        help="zm only: keep one parameter triple per isomorphism orbit of r",
    )
    srch.add_argument(
        "--include-edge", action="store_true", help="keep order-1 edge instances"
    )
    srch.add_argument("--workers", type=int, default=1)
    srch.add_argument("--cache", help="append-only resume cache path")
    srch.add_argument("--budget", type=int, default=search.DEFAULT_BUDGET)
    srch.add_argument("--table", action="store_true")

    ppo = sub.add_parser(
        "perfect-plus-one", help="scan even perfect numbers P for P + 1 a prime power"
    )
    ppo.add_argument("--count", type=int, required=True)

    ver = sub.add_parser("verify", help="run the formula-versus-oracle invariant suite")
    ver.add_argument("--max-order", type=int, required=True)

    return parser


def _parse_classes(raw: str | None) -> frozenset[GroupKind] | None:
    if raw is None:
        return None
    kinds = set()
    for token in raw.split(","):
        token = token.strip().lower()
        if token not in _CLASS_ALIASES:
            raise UsageError(
                f"unknown class {token!r}; expected one of {sorted(_CLASS_ALIASES)}"
            )
        kinds.add(_CLASS_ALIASES[token])
    return frozenset(kinds)


def _print_records(records: list[SearchRecord], table: bool) -> None:
    if not table:
        for record in records:
            print(record.to_json())
        return
    headers = ("family", "params", "order", "D", "class", "notes")
    rows = [
        (
            record.family,
            ",".join(str(p) for p in record.params),
            str(record.order),
            str(record.D),
            record.kind.value,
            "; ".join(record.notes),
        )
        for record in records
    ]
    widths = [
        max(len(headers[col]), *(len(row[col]) for row in rows)) if rows else len(headers[col])
        for col in range(len(headers))
    ]
    print("  ".join(h.ljust(w) for h, w in zip(headers, widths)))
    for row in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)))


def _cmd_classify(args) -> int:
    try:
        params = [int(x) for x in args.params.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--params must be comma-separated integers, got {args.params!r}")
    record = search.run_classify(args.family, params)
    if args.verify:
        outcome = search.oracle_crosscheck(record)
        if outcome is None:
            print("oracle cross-check skipped: instance out of oracle scope", file=sys.stderr)
        else:
            print("oracle cross-check: D agrees", file=sys.stderr)
    _print_records([record], args.table)
    return EXIT_OK


def _sweep_bounds(args) -> dict[str, int]:
    bounds = {}
    for key, value in (
        ("max_n", args.max_n),
        ("min_n", args.min_n),
        ("max_m", args.max_m),
        ("max_q", args.max_q),
        ("max_p", args.max_p),
        ("max_a", args.max_a),
    ):
        if value is not None:
            bounds[key] = value
    return bounds


def _cmd_search(args) -> int:
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    cfg = SweepConfig(
        family=args.family,
        bounds=_sweep_bounds(args),
        paper_mode=args.paper_mode,
        fixed_r=args.r,
        classes=_parse_classes(args.classes),
        dedupe=args.dedupe,
        include_edge=args.include_edge,
        workers=args.workers,
        cache_path=args.cache,
        budget=args.budget,
    )
    records = list(search.run_sweep(cfg))
    _print_records(records, args.table)
    return EXIT_OK


def _cmd_perfect_plus_one(args) -> int:
    report = search.run_perfect_plus_one(args.count)
    for i, perfect, plus_one, prime in report.rows:
        verdict = f"prime (p = {prime})" if prime is not None else "not a prime power"
        print(f"i={i}  P={perfect}  P+1={plus_one}  {verdict}")
    print("solutions: {" + ", ".join(str(i) for i in report.solutions) + "}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    start = time.perf_counter()
    results = verify.run_verify(args.max_order)
    failed = 0
    for result in results:
        if result.passed:
            print(f"PASS {result.name} ({result.checked} checked)")
        else:
            failed += 1
            print(f"FAIL {result.name} ({result.checked} checked): {result.detail}")
    elapsed = time.perf_counter() - start
    print(
        f"verify: {len(results) - failed}/{len(results)} invariants passed "
        f"in {elapsed:.1f}s"
    )
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "classify":
            return _cmd_classify(args)
        if args.command == "search":
            return _cmd_search(args)
        if args.command == "perfect-plus-one":
            return _cmd_perfect_plus_one(args)
        if args.command == "verify":
            return _cmd_verify(args)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (search.BudgetError, oracle.OrderCapError, numtheory.FactorizationError) as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except search.OracleMismatchError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ValueError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    raise SystemExit(main())
