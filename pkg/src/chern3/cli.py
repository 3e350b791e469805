"""Command-line surface for enumeration, table verification and series evaluation.

Exit codes follow one contract everywhere: 0 success, 1 verification
mismatch or empty result, 2 usage or input error.  Machine formats (csv,
jsonl) are byte-deterministic for a given query and never decimalize
fractions; the markdown format adds a decimal column that is explicitly
approximate.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from contextlib import nullcontext
from fractions import Fraction
from typing import Optional, Sequence

from . import enumeration, quotient, tables
from .enumeration import (
    ALL,
    C1C2_ZERO,
    INTEGRAL_L2,
    ChernRecord,
    EnumerationQuery,
    NoPositiveValueError,
    RecordFilter,
    c1c2_in_range,
)
from .quotient import (
    CoverType,
    check_scenario,
    derive_enriques,
    format_profile,
)
from .riemann_roch import (
    ChernContext,
    chi_minus_nk,
    format_basket,
    format_index_multiset,
    l_value,
    parse_basket,
    parse_rational,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

_FILTERS = {
    "all": ALL,
    "c1c2-zero": C1C2_ZERO,
    "l2-integral": INTEGRAL_L2,
}


def _factorization(n: int) -> str:
    """Prime factorization as '2^4 * 3^6 * 7'; '1' for n = 1."""
    if n < 1:
        raise ValueError(f"can only factor positive integers, got {n}")
    if n == 1:
        return "1"
    parts = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            parts.append(f"{p}^{e}" if e > 1 else str(p))
        p += 1
    if n > 1:
        parts.append(str(n))
    return " * ".join(parts)


def _open_output(path: Optional[str]):
    if path is None:
        return nullcontext(sys.stdout)
    return open(path, "w", encoding="utf-8", newline="")


def _record_fields(rec: ChernRecord) -> list[str]:
    return [
        format_index_multiset(rec.indices),
        str(rec.cartier_index),
        str(rec.c1c2),
        "true" if rec.has_integral_basket else "false",
        format_basket(rec.witness) if rec.witness is not None else "",
    ]


def _write_csv(rows: Sequence[Sequence[str]], stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerows(rows)


def _write_markdown(header: Sequence[str], rows: Sequence[Sequence[str]], stream) -> None:
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    def line(cells):
        return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |\n"
    stream.write(line(header))
    stream.write(line("-" * w for w in widths))
    for row in rows:
        stream.write(line(row))


def _emit_records(records: Sequence[ChernRecord], fmt: str, stream) -> None:
    if fmt == "csv":
        _write_csv([_record_fields(rec) for rec in records], stream)
    elif fmt == "jsonl":
        for rec in records:
            payload = {
                "indices": format_index_multiset(rec.indices),
                "cartier_index": rec.cartier_index,
                "c1c2": str(rec.c1c2),
                "has_integral_basket": rec.has_integral_basket,
                "witness": format_basket(rec.witness) if rec.witness is not None else None,
            }
            stream.write(json.dumps(payload, separators=(",", ":")) + "\n")
    else:
        header = ["indices", "r_X", "c1c2", "~c1c2 (approx.)", "integral", "witness"]
        rows = []
        for rec in records:
            fields = _record_fields(rec)
            fields.insert(3, f"{float(rec.c1c2):.6g}")
            rows.append(fields)
        _write_markdown(header, rows, stream)


def _build_filter(args) -> RecordFilter:
    if args.filter == "c1c2-range":
        if args.lo is None or args.hi is None:
            raise ValueError("--filter c1c2-range requires both --lo and --hi")
        return c1c2_in_range(args.lo, args.hi)
    if args.lo is not None or args.hi is not None:
        raise ValueError("--lo/--hi are only meaningful with --filter c1c2-range")
    return _FILTERS[args.filter]


def _cmd_enumerate(args) -> int:
    query = EnumerationQuery(
        chi0=args.chi,
        filter=_build_filter(args),
        include_empty=args.include_empty,
        integrality_depth=args.depth,
        allow_any_chi=args.unsafe_chi,
    )
    records = enumeration.enumerate_index_multisets(query, jobs=args.jobs)
    with _open_output(args.output) as stream:
        _emit_records(records, args.format, stream)
    return EXIT_OK


def _cmd_chi_series(args) -> int:
    basket = parse_basket(args.basket)
    ctx = ChernContext(chi0=args.chi, anticanonical_cube=args.kcube)
    rows = []
    for n in range(args.n_max + 1):
        rows.append((n, l_value(basket, n + 1), chi_minus_nk(basket, ctx, n)))
    with _open_output(args.output) as stream:
        if args.format == "csv":
            _write_csv([[str(n), str(l), str(chi)] for n, l, chi in rows], stream)
        elif args.format == "jsonl":
            for n, l, chi in rows:
                payload = {"n": n, "l": str(l), "chi": str(chi)}
                stream.write(json.dumps(payload, separators=(",", ":")) + "\n")
        else:
            _write_markdown(
                ["n", "l(n+1)", "chi(-nK)"],
                [[str(n), str(l), str(chi)] for n, l, chi in rows],
                stream,
            )
    return EXIT_OK


def _cmd_min(args) -> int:
    try:
        value, attaining = enumeration.min_positive_c1c2(
            args.chi, require_integral=args.not_big
        )
    except NoPositiveValueError:
        print(f"no positive value for chi={args.chi}", file=sys.stderr)
        return EXIT_MISMATCH
    print("\t".join([str(value), *(format_index_multiset(m) for m in attaining)]))
    return EXIT_OK


def _cmd_bound(args) -> int:
    value = enumeration.effective_bound(args.min_positive, args.max_cube)
    line = f"{args.max_cube} / ({args.min_positive}) = {value}"
    if value.denominator == 1:
        factors = _factorization(int(value))
        if factors != str(value):
            line += f" = {factors}"
    print(line)
    return EXIT_OK


def _load_table_fixture(path: Optional[str], table: int):
    if path is None:
        return tables.table_rows(table)
    with open(path, "r", encoding="utf-8") as fh:
        return tables.parse_enumeration_fixture(fh.read())


def _load_quotient_fixture(path: Optional[str], table: int):
    if path is None:
        return tables.quotient_scenarios(table)
    cover = CoverType.K3 if table == 4 else CoverType.ENRIQUES
    with open(path, "r", encoding="utf-8") as fh:
        return tables.parse_quotient_fixture(fh.read(), cover)


def _table_check_lines(check: enumeration.TableCheck) -> list[str]:
    lines = []
    for row in check.missing:
        lines.append(
            f"  missing from enumeration: {format_index_multiset(row.indices)} "
            f"(r_X={row.cartier_index}, c1c2={row.c1c2})"
        )
    for row in check.extra:
        lines.append(
            f"  not in fixture: {format_index_multiset(row.indices)} "
            f"(r_X={row.cartier_index}, c1c2={row.c1c2})"
        )
    return lines


def _scenario_lines(result) -> list[str]:
    lines = []
    for finding in result.findings:
        if not finding.passed:
            lines.append(
                f"  {result.scenario.group_label}: check {finding.check} "
                f"expected {finding.expected}, got {finding.actual}"
            )
    return lines


def _cmd_verify_tables(args) -> int:
    try:
        failures = 0

        def report(name: str, ok: bool, detail: list[str]) -> None:
            nonlocal failures
            print(f"{'ok  ' if ok else 'FAIL'} {name}")
            for line in detail:
                print(line)
            if not ok:
                failures += 1

        for table in (1, 2):
            fixture = _load_table_fixture(getattr(args, f"table{table}"), table)
            check = enumeration.reproduce_table(table, fixture=fixture)
            report(
                f"table {table}: {len(check.records)} records vs {len(fixture)} fixture rows",
                check.ok,
                _table_check_lines(check),
            )

        k3_rows = _load_quotient_fixture(args.table4, 4)
        enriques_rows = _load_quotient_fixture(args.table5, 5)
        for table, rows in ((4, k3_rows), (5, enriques_rows)):
            results = [check_scenario(row) for row in rows]
            detail = [line for res in results for line in _scenario_lines(res)]
            report(
                f"table {table}: {len(rows)} scenario rows",
                all(res.ok for res in results),
                detail,
            )

        derived = derive_enriques(k3_rows)
        derived_keys = {row.key() for row in derived}
        expected_keys = {row.key() for row in enriques_rows}
        detail = []
        for key in sorted(derived_keys - expected_keys, key=lambda k: k[0]):
            detail.append(f"  derived but not in fixture: order {key[0]}, {format_profile(key[1])}")
        for key in sorted(expected_keys - derived_keys, key=lambda k: k[0]):
            detail.append(f"  in fixture but not derived: order {key[0]}, {format_profile(key[1])}")
        report(
            f"derive-enriques: {len(derived)} derived rows vs {len(enriques_rows)} fixture rows",
            derived_keys == expected_keys and len(derived) == len(enriques_rows),
            detail,
        )

        minimum, _ = enumeration.min_positive_c1c2(1)
        bound = enumeration.effective_bound(minimum)
        bound_ok = (
            minimum == Fraction(1, 252)
            and bound == 81648
            and _factorization(81648) == "2^4 * 3^6 * 7"
        )
        report(
            f"effective bound: 324 / ({minimum}) = {bound} = {_factorization(int(bound))}",
            bound_ok,
            [],
        )

        gorenstein = enumeration.effective_bound(Fraction(24), Fraction(72))
        report(f"Gorenstein bound: 72 / 24 = {gorenstein}", gorenstein == 3, [])

        return EXIT_OK if failures == 0 else EXIT_MISMATCH
    except ValueError:
        raise
    except Exception as exc:  # pragma: no cover - defensive, per the exit contract
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _cmd_quotient_check(args) -> int:
    rows = _load_quotient_fixture(args.fixture, args.table)
    failures = 0
    for row in rows:
        result = check_scenario(row)
        status = "ok  " if result.ok else "FAIL"
        print(
            f"{status} {row.group_label} (order {row.group_order}, "
            f"{format_profile(row.profile)})"
        )
        for line in _scenario_lines(result):
            print(line)
        if not result.ok:
            failures += 1
    return EXIT_OK if failures == 0 else EXIT_MISMATCH


def _cmd_quotient_derive(args) -> int:
    k3_rows = _load_quotient_fixture(args.k3, 4)
    expected = _load_quotient_fixture(args.expected, 5)
    derived = derive_enriques(k3_rows)
    for row in derived:
        print(
            f"{row.group_label} {row.group_order} {format_profile(row.profile)} "
            f"{format_index_multiset(row.expected_indices)} {row.expected_c1c2}"
        )
    derived_keys = {row.key() for row in derived}
    expected_keys = {row.key() for row in expected}
    if derived_keys == expected_keys and len(derived) == len(expected):
        return EXIT_OK
    for key in sorted(derived_keys - expected_keys, key=lambda k: k[0]):
        print(f"derived but not expected: order {key[0]}, {format_profile(key[1])}", file=sys.stderr)
    for key in sorted(expected_keys - derived_keys, key=lambda k: k[0]):
        print(f"expected but not derived: order {key[0]}, {format_profile(key[1])}", file=sys.stderr)
    return EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chern3",
        description="Exact Chern-number bookkeeping for terminal 3-folds with nef -K",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="enumerate admissible index multisets")
    p.add_argument("--chi", type=int, required=True, help="chi(O_X), normally 0, 1 or 2")
    p.add_argument("--filter", choices=["all", "c1c2-zero", "l2-integral", "c1c2-range"],
                   default="all")
    p.add_argument("--lo", type=parse_rational, default=None, help="lower c1c2 bound (c1c2-range)")
    p.add_argument("--hi", type=parse_rational, default=None, help="upper c1c2 bound (c1c2-range)")
    p.add_argument("--depth", type=int, default=2,
                   help="require integral l(m) for all 2 <= m <= depth (default 2)")
    p.add_argument("--include-empty", action="store_true", help="also emit the empty multiset")
    p.add_argument("--format", choices=["csv", "jsonl", "md"], default="csv")
    p.add_argument("--output", default=None, help="write to a file instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers (output is identical)")
    p.add_argument("--unsafe-chi", action="store_true",
                   help="allow chi outside {0, 1, 2} for exploration")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("verify-tables", help="re-derive all embedded tables and diff them")
    for table in (1, 2, 4, 5):
        p.add_argument(f"--table{table}", default=None, metavar="PATH",
                       help=f"override the table {table} fixture")
    p.set_defaults(func=_cmd_verify_tables)

    p = sub.add_parser("chi-series", help="evaluate chi(-nK) for a basket")
    p.add_argument("--basket", required=True,
                   help="basket string such as '(1,2)^3,(2,7)'; empty string for none")
    p.add_argument("--chi", type=int, required=True, help="chi(O_X)")
    p.add_argument("--kcube", type=parse_rational, default=Fraction(0),
                   help="(-K)^3 as an exact fraction (default 0)")
    p.add_argument("--n-max", type=int, default=10, help="largest n to evaluate")
    p.add_argument("--format", choices=["csv", "jsonl", "md"], default="csv")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_chi_series)

    p = sub.add_parser("min", help="minimum positive c1c2 and attaining multisets")
    p.add_argument("--chi", type=int, required=True)
    p.add_argument("--not-big", action="store_true",
                   help="restrict to multisets admitting a basket with integral l(2)")
    p.set_defaults(func=_cmd_min)

    p = sub.add_parser("quotient", help="quotient-table checks")
    qsub = p.add_subparsers(dest="subcommand", required=True)
    q = qsub.add_parser("check", help="verify a quotient table row by row")
    q.add_argument("--table", type=int, choices=[4, 5], required=True)
    q.add_argument("--fixture", default=None, metavar="PATH", help="override the fixture")
    q.set_defaults(func=_cmd_quotient_check)
    q = qsub.add_parser("derive-enriques", help="derive the Enriques rows from the K3 rows")
    q.add_argument("--k3", default=None, metavar="PATH", help="override the K3 fixture")
    q.add_argument("--expected", default=None, metavar="PATH",
                   help="override the expected Enriques fixture")
    q.set_defaults(func=_cmd_quotient_derive)

    p = sub.add_parser("bound", help="effective Chern-ratio bound with factorization")
    p.add_argument("--max-cube", type=parse_rational, default=Fraction(324),
                   help="upper bound for (-K)^3 (default 324)")
    p.add_argument("--min-positive", type=parse_rational, default=Fraction(1, 252),
                   help="smallest positive c1c2 (default 1/252)")
    p.set_defaults(func=_cmd_bound)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
