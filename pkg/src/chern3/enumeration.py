"""Pruned exact enumeration of index multisets under the bound sum(r - 1/r) <= 24*chi.

Since every local index r >= 2 contributes weight r - 1/r >= 3/2, the bound
leaves finitely many multisets; for chi <= 2 the search space is small
enough to exhaust on a desk machine.  The enumerator walks non-decreasing
index sequences depth-first, cutting a branch as soon as the remaining
weight budget cannot absorb another index.  All budget arithmetic is done
in integers scaled by lcm(1..r_max) times the budget denominator, so no
comparison ever involves a float or an unreduced fraction.

Alongside the multisets themselves, the walk tracks which values the
fractional part of l(2) can take over all admissible b-assignments; this
is the same dynamic program `exists_integral_basket` runs for a single
multiset, factored along the search tree.  A multiset admits a basket with
integral l(2) exactly when 0 is reachable.
"""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Optional, Sequence

from . import tables
from .riemann_roch import (
    Basket,
    BasketPoint,
    IndexMultiset,
    c1c2_from_indices,
    cartier_index,
    format_index_multiset,
    l_value,
    point_correction,
)

DEFAULT_CHI_DOMAIN = (0, 1, 2)

# run-length multiset as used in tree nodes and worker results
_Groups = tuple[tuple[int, int], ...]


class NoPositiveValueError(ValueError):
    """Raised when a minimum over positive c1.c2 values is requested but none exist."""


@dataclass(frozen=True, slots=True)
class RecordFilter:
    """Predicate selecting which enumerated records are emitted."""

    kind: str
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.kind not in ("all", "c1c2-zero", "l2-integral", "c1c2-range"):
            raise ValueError(f"unknown filter kind {self.kind!r}")
        if self.kind == "c1c2-range":
            if self.lo is None or self.hi is None:
                raise ValueError("c1c2-range filter needs both bounds")
            if self.lo > self.hi:
                raise ValueError(f"empty range: {self.lo} > {self.hi}")
        elif self.lo is not None or self.hi is not None:
            raise ValueError(f"bounds are only meaningful for c1c2-range, not {self.kind!r}")


ALL = RecordFilter("all")
C1C2_ZERO = RecordFilter("c1c2-zero")
INTEGRAL_L2 = RecordFilter("l2-integral")


def c1c2_in_range(lo: Fraction, hi: Fraction) -> RecordFilter:
    return RecordFilter("c1c2-range", Fraction(lo), Fraction(hi))


@dataclass(frozen=True, slots=True)
class EnumerationQuery:
    chi0: int
    filter: RecordFilter = ALL
    include_empty: bool = False
    integrality_depth: int = 2
    allow_any_chi: bool = False

    def __post_init__(self) -> None:
        if self.chi0 < 0:
            raise ValueError(f"chi0 must be non-negative, got {self.chi0}")
        if not self.allow_any_chi and self.chi0 not in DEFAULT_CHI_DOMAIN:
            raise ValueError(
                f"chi0={self.chi0} is outside {{0, 1, 2}}; "
                "set allow_any_chi to explore anyway"
            )
        if self.integrality_depth < 2:
            raise ValueError(f"integrality depth must be >= 2, got {self.integrality_depth}")


@dataclass(frozen=True, slots=True)
class ChernRecord:
    """One admissible index multiset together with its exact Chern data.

    Construction re-derives c1.c2 and the Cartier index from the multiset
    and re-checks the witness, so a record that exists is consistent.
    """

    indices: IndexMultiset
    chi0: int
    c1c2: Fraction
    cartier_index: int
    has_integral_basket: bool
    witness: Optional[Basket] = None
    integrality_depth: int = 2

    def __post_init__(self) -> None:
        expected = c1c2_from_indices(self.indices, self.chi0)
        if self.c1c2 != expected:
            raise ValueError(
                f"c1c2 mismatch for {format_index_multiset(self.indices)}: "
                f"stated {self.c1c2}, derived {expected}"
            )
        if self.c1c2 < 0:
            raise ValueError(
                f"{format_index_multiset(self.indices)} has negative c1c2 {self.c1c2}"
            )
        if self.cartier_index != cartier_index(self.indices):
            raise ValueError(
                f"Cartier index mismatch for {format_index_multiset(self.indices)}"
            )
        if self.has_integral_basket:
            if self.witness is None:
                raise ValueError("integral record lacks a witness basket")
            if self.witness.index_multiset() != self.indices:
                raise ValueError("witness does not project onto the index multiset")
            for m in range(2, self.integrality_depth + 1):
                value = l_value(self.witness, m)
                if value.denominator != 1:
                    raise ValueError(f"witness has non-integral l({m}) = {value}")
        elif self.witness is not None:
            raise ValueError("witness present although has_integral_basket is false")


@lru_cache(maxsize=None)
def _admissible_b(r: int) -> tuple[int, ...]:
    """The b values allowed at index r: coprime to r with 0 < 2b <= r."""
    return tuple(b for b in range(1, r // 2 + 1) if math.gcd(b, r) == 1)


@lru_cache(maxsize=None)
def _l2_contributions(r: int) -> tuple[int, ...]:
    """Distinct fractional parts of b(r-b)/(2r), as numerators over 2r."""
    return tuple(sorted({(b * (r - b)) % (2 * r) for b in _admissible_b(r)}))


def max_index(budget: Fraction) -> int:
    """Largest r with r - 1/r <= budget; 1 when no index fits."""
    if budget < Fraction(3, 2):
        return 1
    r = int(budget) + 1
    while Fraction(r * r - 1, r) > budget:
        r -= 1
    return r


@lru_cache(maxsize=None)
def _weight_table(rmax: int, den: int) -> tuple[int, ...]:
    """weights[r] = (r - 1/r) * lcm(1..rmax) * den, an exact integer."""
    lcm_all = math.lcm(*range(1, rmax + 1))
    weights = [0] * (rmax + 1)
    for r in range(2, rmax + 1):
        weights[r] = (r * lcm_all - lcm_all // r) * den
    return tuple(weights)


def _l2_step(aset: set[int], den: int, r: int) -> tuple[int, set[int]]:
    """Reachable l(2) fractional parts after one more point of index r."""
    d2 = 2 * r
    nd = den * d2 // math.gcd(den, d2)
    if nd != den:
        scale = nd // den
        aset = {a * scale % nd for a in aset}
    steps = [c * (nd // d2) for c in _l2_contributions(r)]
    return nd, {(a + c) % nd for a in aset for c in steps}


def _scan(
    rmin: int,
    rmax: int,
    rem: int,
    prefix: _Groups,
    den: int,
    aset: set[int],
    weights: Sequence[int],
    out: list,
) -> None:
    """Extend a non-decreasing run-length prefix within the remaining budget."""
    for r in range(rmin, rmax + 1):
        w = weights[r]
        if w > rem:
            break
        cur_den, cur = den, aset
        rem_k = rem
        k = 1
        while True:
            rem_k -= w
            cur_den, cur = _l2_step(cur, cur_den, r)
            node = prefix + ((r, k),)
            out.append((node, rem_k, 0 in cur))
            _scan(r + 1, rmax, rem_k, node, cur_den, cur, weights, out)
            if rem_k < w:
                break
            k += 1


def _resolve_integral(
    groups: _Groups, l2_reachable: bool, depth: int
) -> tuple[bool, Optional[tuple[tuple[int, int, int], ...]]]:
    """Integral-basket flag and witness runs (b, r, mult) for one multiset."""
    if not l2_reachable:
        return False, None
    ok, witness = exists_integral_basket(IndexMultiset(groups), depth)
    if not ok:
        return False, None
    assert witness is not None
    return True, tuple((p.b, p.r, mult) for p, mult in witness.groups)


def _finish_node(
    groups: _Groups,
    rem: int,
    l2_reachable: bool,
    scale: int,
    depth: int,
    kind: str,
    lo: Optional[Fraction],
    hi: Optional[Fraction],
):
    """Apply the record filter; rem is c1c2 in units of 1/scale."""
    if kind == "c1c2-zero" and rem != 0:
        return None
    if kind == "c1c2-range" and not lo <= Fraction(rem, scale) <= hi:
        return None
    has_int, witness = _resolve_integral(groups, l2_reachable, depth)
    if kind == "l2-integral" and not has_int:
        return None
    return (groups, rem, has_int, witness)


def _run_task(args) -> list:
    """Enumerate the subtree of multisets whose smallest run is (r0, k0)."""
    budget_scaled, rmax, weight_den, scale, depth, kind, lo, hi, r0, k0 = args
    weights = _weight_table(rmax, weight_den)
    den, aset = 1, {0}
    rem = budget_scaled
    for _ in range(k0):
        rem -= weights[r0]
        den, aset = _l2_step(aset, den, r0)
    raw = [(((r0, k0),), rem, 0 in aset)]
    _scan(r0 + 1, rmax, rem, ((r0, k0),), den, aset, weights, raw)
    finished = []
    for groups, node_rem, l2_ok in raw:
        item = _finish_node(groups, node_rem, l2_ok, scale, depth, kind, lo, hi)
        if item is not None:
            finished.append(item)
    return finished


def _expanded(groups: _Groups) -> tuple[int, ...]:
    return tuple(r for r, mult in groups for _ in range(mult))


def _enumerate_raw(
    max_weight: Fraction,
    depth: int,
    kind: str,
    lo: Optional[Fraction],
    hi: Optional[Fraction],
    jobs: int,
) -> tuple[list, int]:
    """Filtered raw nodes in canonical order plus the budget scale."""
    rmax = max_index(max_weight)
    if rmax < 2:
        return [], 1
    lcm_all = math.lcm(*range(1, rmax + 1))
    den = max_weight.denominator
    scale = lcm_all * den
    budget_scaled = max_weight.numerator * lcm_all
    weights = _weight_table(rmax, den)

    tasks = []
    for r in range(2, rmax + 1):
        w = weights[r]
        if w > budget_scaled:
            break
        rem, k = budget_scaled, 1
        while w <= rem:
            tasks.append((budget_scaled, rmax, den, scale, depth, kind, lo, hi, r, k))
            rem -= w
            k += 1

    if jobs > 1 and len(tasks) > 1:
        with multiprocessing.Pool(processes=min(jobs, len(tasks))) as pool:
            chunks = pool.map(_run_task, tasks)
    else:
        chunks = [_run_task(task) for task in tasks]

    raw = [item for chunk in chunks for item in chunk]
    # canonical total order: weight ascending, then lexicographic on the
    # expanded index sequence; independent of task scheduling
    raw.sort(key=lambda item: (budget_scaled - item[1], _expanded(item[0])))
    return raw, scale


def enumerate_index_multisets(
    query: EnumerationQuery, jobs: int = 1
) -> list[ChernRecord]:
    """All index multisets with weight <= 24*chi0 passing the query filter.

    Records come in canonical order (weight ascending, then lexicographic
    on the expanded index sequence) regardless of `jobs`.
    """
    flt = query.filter
    raw, scale = _enumerate_raw(
        Fraction(24 * query.chi0), query.integrality_depth, flt.kind, flt.lo, flt.hi, jobs
    )

    records = []
    if query.include_empty:
        empty_c1c2 = Fraction(24 * query.chi0)
        keep = True
        if flt.kind == "c1c2-zero":
            keep = empty_c1c2 == 0
        elif flt.kind == "c1c2-range":
            keep = flt.lo <= empty_c1c2 <= flt.hi
        # the empty basket has l(m) = 0 for all m, so it always passes l2-integral
        if keep:
            records.append(
                ChernRecord(
                    indices=IndexMultiset(),
                    chi0=query.chi0,
                    c1c2=empty_c1c2,
                    cartier_index=1,
                    has_integral_basket=True,
                    witness=Basket(),
                    integrality_depth=query.integrality_depth,
                )
            )

    for groups, rem, has_int, witness_runs in raw:
        indices = IndexMultiset(groups)
        witness = None
        if witness_runs is not None:
            witness = Basket(
                tuple((BasketPoint(b, r), mult) for b, r, mult in witness_runs)
            )
        records.append(
            ChernRecord(
                indices=indices,
                chi0=query.chi0,
                c1c2=Fraction(rem, scale),
                cartier_index=cartier_index(indices),
                has_integral_basket=has_int,
                witness=witness,
                integrality_depth=query.integrality_depth,
            )
        )
    return records


def feasible_index_multisets(max_weight: Fraction) -> list[IndexMultiset]:
    """All non-empty index multisets of weight <= max_weight, canonically ordered.

    This is the bare pruned generator, exposed so it can be diffed against
    an unpruned oracle over arbitrary rational budgets.
    """
    raw, _ = _enumerate_raw(Fraction(max_weight), 2, "all", None, None, jobs=1)
    return [IndexMultiset(groups) for groups, _, _, _ in raw]


def _vadd(u: tuple, v: tuple) -> tuple:
    return tuple((x + y) % 1 for x, y in zip(u, v))


def _run_lengths(values: Iterable) -> list[tuple[object, int]]:
    runs: list[tuple[object, int]] = []
    for value in values:
        if runs and runs[-1][0] == value:
            runs[-1] = (value, runs[-1][1] + 1)
        else:
            runs.append((value, 1))
    return runs


def exists_integral_basket(
    indices: IndexMultiset, depth: int = 2
) -> tuple[bool, Optional[Basket]]:
    """Does some b-assignment over the multiset make l(m) integral for 2 <= m <= depth?

    A single basket must satisfy every level simultaneously.  On success the
    lexicographically smallest witness is returned, ordering baskets by their
    canonical (r, b) point sequence.  Decided by dynamic programming over the
    reachable fractional parts (one coordinate per level), with suffix sets
    guiding a greedy lexicographic reconstruction.
    """
    if depth < 2:
        raise ValueError(f"integrality depth must be >= 2, got {depth}")
    zero = (Fraction(0),) * (depth - 1)

    choice_vectors = []
    for r, mult in indices.groups:
        options = []
        for b in _admissible_b(r):
            point = BasketPoint(b, r)
            vec = tuple(point_correction(point, m) % 1 for m in range(2, depth + 1))
            options.append((b, vec))
        choice_vectors.append((r, mult, options))

    # suffix[i] = fractional-part vectors reachable using groups i..end
    suffix = [frozenset([zero])]
    for r, mult, options in reversed(choice_vectors):
        layer = {zero}
        for _ in range(mult):
            layer = {_vadd(s, vec) for s in layer for _, vec in options}
        suffix.append(frozenset(_vadd(s, t) for s in layer for t in suffix[-1]))
    suffix.reverse()

    if zero not in suffix[0]:
        return False, None

    chosen: list[tuple[BasketPoint, int]] = []
    prefix = zero
    for i, (r, mult, options) in enumerate(choice_vectors):
        vec_by_b = dict(options)
        for combo in combinations_with_replacement([b for b, _ in options], mult):
            total = zero
            for b in combo:
                total = _vadd(total, vec_by_b[b])
            need = tuple((-x - y) % 1 for x, y in zip(prefix, total))
            if need in suffix[i + 1]:
                prefix = _vadd(prefix, total)
                chosen.extend(
                    (BasketPoint(b, r), reps) for b, reps in _run_lengths(combo)
                )
                break
        else:
            raise RuntimeError(
                "reachability and reconstruction disagree; this is a bug"
            )
    return True, Basket(tuple(chosen))


@dataclass(frozen=True, slots=True)
class TableCheck:
    """Outcome of re-deriving a classification table from scratch."""

    table: int
    records: tuple[ChernRecord, ...]
    missing: tuple[tables.TableRow, ...]  # in the fixture, not reproduced
    extra: tuple[tables.TableRow, ...]  # reproduced, not in the fixture

    @property
    def ok(self) -> bool:
        return not self.missing and not self.extra


def _row_key(row: tables.TableRow):
    return (row.indices.weight, row.indices.indices())


def reproduce_table(
    table: int,
    fixture: Optional[Sequence[tables.TableRow]] = None,
    jobs: int = 1,
) -> TableCheck:
    """Re-enumerate table 1 or 2 and diff the result against the fixture."""
    if table == 1:
        flt = C1C2_ZERO
    elif table == 2:
        flt = INTEGRAL_L2
    else:
        raise ValueError(f"reproduce_table supports tables 1 and 2, got {table}")
    if fixture is None:
        fixture = tables.table_rows(table)

    records = enumerate_index_multisets(EnumerationQuery(chi0=1, filter=flt), jobs=jobs)
    produced = {
        tables.TableRow(rec.indices, rec.cartier_index, rec.c1c2) for rec in records
    }
    expected = set(fixture)
    missing = tuple(sorted(expected - produced, key=_row_key))
    extra = tuple(sorted(produced - expected, key=_row_key))
    return TableCheck(table=table, records=tuple(records), missing=missing, extra=extra)


def min_positive_c1c2(
    chi0: int, require_integral: bool = False, jobs: int = 1
) -> tuple[Fraction, list[IndexMultiset]]:
    """Smallest positive c1.c2 over the enumerated records, with every attaining multiset."""
    flt = INTEGRAL_L2 if require_integral else ALL
    records = enumerate_index_multisets(EnumerationQuery(chi0=chi0, filter=flt), jobs=jobs)
    positive = [rec for rec in records if rec.c1c2 > 0]
    if not positive:
        raise NoPositiveValueError(
            f"no positive c1c2 value for chi0={chi0}"
            + (" under the integral-basket filter" if require_integral else "")
        )
    best = min(rec.c1c2 for rec in positive)
    return best, [rec.indices for rec in positive if rec.c1c2 == best]


def count_candidates(
    chi0: int,
    flt: RecordFilter = ALL,
    depth: int = 2,
    include_empty: bool = False,
    jobs: int = 1,
) -> int:
    """Number of records the corresponding enumeration emits."""
    query = EnumerationQuery(
        chi0=chi0, filter=flt, include_empty=include_empty, integrality_depth=depth
    )
    return len(enumerate_index_multisets(query, jobs=jobs))


def effective_bound(
    min_positive: Fraction, max_cube: Fraction = Fraction(324)
) -> Fraction:
    """max_cube / min_positive, the uniform constant in c1^3 <= b * c1.c2."""
    min_positive = Fraction(min_positive)
    if min_positive <= 0:
        raise ValueError(f"division by non-positive value {min_positive}")
    return Fraction(max_cube) / min_positive
