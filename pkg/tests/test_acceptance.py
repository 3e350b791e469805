"""Acceptance suite: one test per criterion, one pass/fail line each.

Run as `pytest tests/test_acceptance.py -v -s` to see the lines; each test
also asserts, so a plain pytest run fails loudly on any criterion.
"""

import csv
import io
import random
import subprocess
import sys
import time
from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd

from chern3 import (
    ALL,
    Basket,
    BasketPoint,
    ChernContext,
    INTEGRAL_L2,
    chi_minus_nk,
    count_candidates,
    derive_enriques,
    check_scenario,
    effective_bound,
    feasible_index_multisets,
    format_index_multiset,
    l_value,
    min_positive_c1c2,
    parse_basket,
    parse_index_multiset,
    parse_rational,
    point_correction,
)
from chern3.cli import _factorization
from chern3.tables import quotient_scenarios, table_rows


def _report(criterion: int, ok: bool, detail: str) -> None:
    print(f"[acceptance] criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {criterion}: {detail}"


def _run_cli(*argv, timeout=600):
    return subprocess.run(
        [sys.executable, "-m", "chern3", *argv],
        capture_output=True,
        text=True,
        timeout=timeout,
    )


def test_criterion_1_table_one_reproduction():
    start = time.monotonic()
    result = _run_cli("enumerate", "--chi", "1", "--filter", "c1c2-zero")
    elapsed = time.monotonic() - start
    rows = list(csv.reader(io.StringIO(result.stdout)))
    produced = {(parse_index_multiset(r[0]), int(r[1])) for r in rows}
    expected = {(row.indices, row.cartier_index) for row in table_rows(1)}
    ok = (
        result.returncode == 0
        and len(rows) == 11
        and produced == expected
        and elapsed < 5.0
    )
    _report(1, ok, f"{len(rows)} rows, exact set equality, {elapsed:.2f}s")


def test_criterion_2_table_two_reproduction():
    start = time.monotonic()
    result = _run_cli("enumerate", "--chi", "1", "--filter", "l2-integral")
    elapsed = time.monotonic() - start
    rows = list(csv.reader(io.StringIO(result.stdout)))
    produced = {
        (parse_index_multiset(r[0]), int(r[1]), parse_rational(r[2])) for r in rows
    }
    expected = {(row.indices, row.cartier_index, row.c1c2) for row in table_rows(2)}
    ok = (
        result.returncode == 0
        and len(rows) == 40
        and produced == expected
        and elapsed < 60.0
    )
    _report(2, ok, f"{len(rows)} rows with exact c1c2 and r_X, {elapsed:.2f}s")


def test_criterion_3_extremal_values():
    value_all, attain_all = min_positive_c1c2(1, require_integral=False)
    value_int, attain_int = min_positive_c1c2(1, require_integral=True)
    ok = (
        value_all == Fraction(1, 252)
        and attain_all == [parse_index_multiset("2^3,4,7,9")]
        and value_int == Fraction(2, 5)
        and attain_int == [parse_index_multiset("2^4,3^3,5^2")]
    )
    _report(
        3,
        ok,
        f"min c1c2 = {value_all} at {format_index_multiset(attain_all[0])}; "
        f"integral min = {value_int} at {format_index_multiset(attain_int[0])}",
    )


def test_criterion_4_chi_two_census():
    start = time.monotonic()
    filtered = count_candidates(2, INTEGRAL_L2)
    unfiltered = count_candidates(2, ALL)
    elapsed = time.monotonic() - start
    ok = filtered > 1000 and elapsed < 600.0
    _report(
        4,
        ok,
        f"chi=2 candidates: {filtered} with integral l(2) (> 1000), "
        f"{unfiltered} unfiltered, {elapsed:.1f}s",
    )


def test_criterion_5_quotient_tables():
    k3 = quotient_scenarios(4)
    enriques = quotient_scenarios(5)
    checks = [check_scenario(row) for row in k3 + enriques]
    derived = derive_enriques(k3)
    derived_keys = {row.key() for row in derived}
    expected_keys = {row.key() for row in enriques}
    ok = (
        len(k3) == 15
        and len(enriques) == 8
        and all(c.ok for c in checks)
        and len(derived) == 8
        and derived_keys == expected_keys
    )
    _report(
        5,
        ok,
        f"{len(k3)} K3 rows and {len(enriques)} Enriques rows pass; "
        f"derivation yields exactly the Enriques fixture",
    )


def test_criterion_6_riemann_roch_properties():
    cases = 0
    period_ok = True
    for r in range(2, 51):
        for b in range(1, r // 2 + 1):
            if gcd(b, r) != 1:
                continue
            cases += 1
            if point_correction(BasketPoint(b, r), r + 1) != Fraction(r * r - 1, 12):
                period_ok = False

    rng = random.Random(20260810)
    chi_ok = True
    for _ in range(100):
        groups = []
        for _ in range(rng.randint(0, 6)):
            r = rng.randint(2, 40)
            choices = [b for b in range(1, r // 2 + 1) if gcd(b, r) == 1]
            groups.append((BasketPoint(rng.choice(choices), r), rng.randint(1, 5)))
        basket = Basket(tuple(groups))
        chi0 = rng.randint(-2, 3)
        cube = Fraction(rng.randint(-20, 20), rng.randint(1, 12))
        if chi_minus_nk(basket, ChernContext(chi0, cube), 0) != chi0:
            chi_ok = False

    l2 = l_value(parse_basket("(1,7),(2,7),(3,7)"), 2)
    ok = period_ok and chi_ok and l2 == 2
    _report(
        6,
        ok,
        f"period identity over {cases} (b, r) pairs with r <= 50; "
        f"chi(-0K) = chi0 on 100 random baskets; l(2) = {l2} on the 7^3 basket",
    )


def test_criterion_7_effective_bound():
    bound = effective_bound(Fraction(1, 252), Fraction(324))
    gorenstein = effective_bound(Fraction(24), Fraction(72))
    ok = (
        bound == 81648
        and bound == 2**4 * 3**6 * 7
        and _factorization(81648) == "2^4 * 3^6 * 7"
        and gorenstein == 3
    )
    _report(7, ok, f"324 / (1/252) = {bound} = {_factorization(81648)}; 72 / 24 = {gorenstein}")


def test_criterion_8_oracle_equivalence():
    start = time.monotonic()

    # one unpruned universe at the largest budget, then filter per budget
    def tuple_weight(combo):
        return sum((Fraction(r * r - 1, r) for r in combo), Fraction(0))

    universe = []
    for length in range(1, 9):  # 9 * (3/2) > 12
        for combo in combinations_with_replacement(range(2, 13), length):
            universe.append((combo, tuple_weight(combo)))

    budgets = [Fraction(n, 2) for n in range(2, 25)]  # 1, 3/2, ..., 12
    ok = True
    checked = 0
    for budget in budgets:
        naive = {combo for combo, w in universe if w <= budget}
        pruned = {m.indices() for m in feasible_index_multisets(budget)}
        checked += 1
        if naive != pruned:
            ok = False
    elapsed = time.monotonic() - start
    ok = ok and elapsed < 10.0
    _report(8, ok, f"pruned = naive on {checked} budgets up to 12, {elapsed:.2f}s")


def test_criterion_9_parallel_determinism(tmp_path):
    out1 = tmp_path / "chi2-jobs1.csv"
    out8 = tmp_path / "chi2-jobs8.csv"
    r1 = _run_cli("enumerate", "--chi", "2", "--jobs", "1", "--output", str(out1))
    r8 = _run_cli("enumerate", "--chi", "2", "--jobs", "8", "--output", str(out8))
    payload = out1.read_bytes()
    identical = payload == out8.read_bytes()
    records = payload.count(b"\n")
    ok = r1.returncode == 0 and r8.returncode == 0 and identical
    _report(
        9,
        ok,
        f"chi=2 outputs byte-identical across --jobs 1/8 "
        f"({len(payload)} bytes, {records} records)",
    )
