"""Exact arithmetic for baskets of virtual quotient points on terminal 3-folds.

Every quantity is a `fractions.Fraction`; nothing in this package touches
floating point.  A terminal projective 3-fold carries a basket of virtual
orbifold points (b, r) with gcd(b, r) = 1 and 0 < 2b <= r, each standing for
a cyclic quotient singularity of type 1/r(1, -1, b).  Two classical facts
drive everything downstream:

* Reid's orbifold Riemann-Roch for multiples of the anticanonical class,

      chi(-nK) = n(n+1)(2n+1)/12 * (-K)^3 + (2n+1) * chi(O) - l(n+1),

  where the periodic correction l(n+1) sums jb(r - jb)/(2r) over the basket
  and over j = 1..n, with jb taken as its smallest non-negative residue
  mod r.

* The Euler-characteristic identity

      24 * chi(O) = c1.c2 + sum over local indices of (r - 1/r),

  which lets c1.c2 be read off from the index multiset alone.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

EMPTY_SYMBOL = "∅"


@dataclass(frozen=True, slots=True)
class BasketPoint:
    """A virtual orbifold point of type 1/r(1, -1, b)."""

    b: int
    r: int

    def __post_init__(self) -> None:
        if self.r < 2:
            raise ValueError(f"local index must be >= 2, got r={self.r}")
        if self.b < 1:
            raise ValueError(f"local invariant must be positive, got b={self.b}")
        if 2 * self.b > self.r:
            raise ValueError(
                f"point ({self.b},{self.r}) violates 2b <= r; "
                "use BasketPoint.normalized to fold b into range"
            )
        if math.gcd(self.b, self.r) != 1:
            raise ValueError(f"b and r must be coprime, got ({self.b},{self.r})")

    @classmethod
    def normalized(cls, b: int, r: int) -> "BasketPoint":
        """Build a point from any b coprime to r, folding b -> r - b if needed."""
        if r < 2:
            raise ValueError(f"local index must be >= 2, got r={r}")
        b %= r
        if 2 * b > r:
            b = r - b
        return cls(b, r)


@dataclass(frozen=True, slots=True)
class Basket:
    """Multiset of basket points, stored as (point, multiplicity) runs.

    Constructors merge duplicate points and keep the runs in ascending
    (r, b) order, so equal multisets compare equal.
    """

    groups: tuple[tuple[BasketPoint, int], ...] = ()

    def __post_init__(self) -> None:
        merged: dict[BasketPoint, int] = {}
        for point, mult in self.groups:
            if mult < 1:
                raise ValueError(f"multiplicity must be >= 1, got {mult}")
            merged[point] = merged.get(point, 0) + mult
        canonical = tuple(sorted(merged.items(), key=lambda it: (it[0].r, it[0].b)))
        object.__setattr__(self, "groups", canonical)

    @classmethod
    def from_points(cls, points: Iterable[BasketPoint]) -> "Basket":
        return cls(tuple((p, 1) for p in points))

    @property
    def size(self) -> int:
        return sum(mult for _, mult in self.groups)

    def points(self) -> Iterator[BasketPoint]:
        """Iterate the points with multiplicity expanded."""
        for point, mult in self.groups:
            for _ in range(mult):
                yield point

    def index_multiset(self) -> "IndexMultiset":
        """Forget the b's, keeping the multiset of local indices."""
        return IndexMultiset(tuple((p.r, mult) for p, mult in self.groups))


@dataclass(frozen=True, slots=True)
class IndexMultiset:
    """Multiset of local indices r >= 2, stored as (r, multiplicity) runs."""

    groups: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        merged: dict[int, int] = {}
        for r, mult in self.groups:
            if r < 2:
                raise ValueError(f"local index must be >= 2, got {r}")
            if mult < 1:
                raise ValueError(f"multiplicity must be >= 1, got {mult}")
            merged[r] = merged.get(r, 0) + mult
        object.__setattr__(self, "groups", tuple(sorted(merged.items())))

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> "IndexMultiset":
        return cls(tuple((r, 1) for r in indices))

    @property
    def size(self) -> int:
        return sum(mult for _, mult in self.groups)

    @property
    def weight(self) -> Fraction:
        """Sum of (r - 1/r) over the multiset, exactly."""
        return sum(
            (mult * Fraction(r * r - 1, r) for r, mult in self.groups), Fraction(0)
        )

    def indices(self) -> tuple[int, ...]:
        """The indices expanded with multiplicity, ascending."""
        return tuple(r for r, mult in self.groups for _ in range(mult))


@dataclass(frozen=True, slots=True)
class ChernContext:
    """chi(O_X) together with the anticanonical self-intersection (-K)^3.

    Neither value is checked for geometric realizability; the context is
    just the pair of inputs Riemann-Roch needs besides the basket.
    """

    chi0: int
    anticanonical_cube: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "anticanonical_cube", Fraction(self.anticanonical_cube)
        )


def residue(j: int, b: int, r: int) -> int:
    """Smallest non-negative residue of j*b mod r."""
    return (j * b) % r


def point_correction(point: BasketPoint, m: int) -> Fraction:
    """Single-point correction sum_{j=1}^{m-1} jb(r - jb) / (2r).

    The empty sum (m = 1) is 0.  Each summand lies in [0, r/8].
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    b, r = point.b, point.r
    total = 0
    for j in range(1, m):
        t = (j * b) % r
        total += t * (r - t)
    return Fraction(total, 2 * r)


def l_value(basket: Basket, m: int) -> Fraction:
    """Reid's correction term l(m), summed over the basket with multiplicity."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return sum(
        (mult * point_correction(point, m) for point, mult in basket.groups),
        Fraction(0),
    )


def chi_minus_nk(basket: Basket, ctx: ChernContext, n: int) -> Fraction:
    """chi(-nK) by orbifold Riemann-Roch; n = 0 returns chi(O) exactly."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    polynomial = Fraction(n * (n + 1) * (2 * n + 1), 12) * ctx.anticanonical_cube
    return polynomial + (2 * n + 1) * ctx.chi0 - l_value(basket, n + 1)


def c1c2_from_indices(indices: IndexMultiset, chi0: int) -> Fraction:
    """c1.c2 = 24*chi(O) - weight; negative values mean inconsistent inputs."""
    return 24 * chi0 - indices.weight


def cartier_index(indices: IndexMultiset) -> int:
    """lcm of the local indices; 1 for the empty multiset."""
    return math.lcm(*(r for r, _ in indices.groups))


# ---------------------------------------------------------------------------
# Canonical text forms, shared with the CLI.
#
#   rational:       p or p/q, reduced, q > 0 (str() of a Fraction)
#   index multiset: r or r^k terms, ascending, e.g. 2^3,4,7,9
#   basket:         (b,r) or (b,r)^k terms, ascending by (r, b)
#
# The empty multiset and the empty basket both print as the empty-set sign.
# ---------------------------------------------------------------------------

_RATIONAL_RE = re.compile(r"([+-]?\d+)(?:/(\d+))?")
_INDEX_TERM_RE = re.compile(r"(\d+)(?:\^(\d+))?")
_BASKET_TERM_RE = re.compile(r"\((\d+),(\d+)\)(?:\^(\d+))?")


def parse_rational(text: str) -> Fraction:
    """Parse 'p' or 'p/q'; inverse of str() on a Fraction."""
    m = _RATIONAL_RE.fullmatch(text.strip())
    if m is None:
        raise ValueError(f"malformed rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def _parse_exponent(raw: str | None, term: str) -> int:
    if raw is None:
        return 1
    mult = int(raw)
    if mult < 2:
        raise ValueError(f"exponent must be >= 2 in term {term!r}")
    return mult


def parse_index_multiset(text: str) -> IndexMultiset:
    """Parse 'r' / 'r^k' terms, e.g. '2^3,4,7,9'; '' and the empty sign parse empty."""
    s = text.replace(" ", "")
    if s in ("", EMPTY_SYMBOL):
        return IndexMultiset()
    groups = []
    for term in s.split(","):
        m = _INDEX_TERM_RE.fullmatch(term)
        if m is None:
            raise ValueError(f"malformed index term {term!r} in {text!r}")
        groups.append((int(m.group(1)), _parse_exponent(m.group(2), term)))
    return IndexMultiset(tuple(groups))


def format_index_multiset(indices: IndexMultiset) -> str:
    if not indices.groups:
        return EMPTY_SYMBOL
    return ",".join(f"{r}^{k}" if k > 1 else str(r) for r, k in indices.groups)


def parse_basket(text: str) -> Basket:
    """Parse '(b,r)' / '(b,r)^k' terms; point invariants are enforced."""
    s = text.replace(" ", "")
    if s in ("", EMPTY_SYMBOL):
        return Basket()
    groups = []
    pos = 0
    while True:
        m = _BASKET_TERM_RE.match(s, pos)
        if m is None:
            raise ValueError(f"malformed basket term at {s[pos:]!r} in {text!r}")
        point = BasketPoint(int(m.group(1)), int(m.group(2)))
        groups.append((point, _parse_exponent(m.group(3), m.group(0))))
        pos = m.end()
        if pos == len(s):
            break
        if s[pos] != ",":
            raise ValueError(f"expected ',' at {s[pos:]!r} in {text!r}")
        pos += 1
    return Basket(tuple(groups))


def format_basket(basket: Basket) -> str:
    if not basket.groups:
        return EMPTY_SYMBOL
    return ",".join(
        f"({p.b},{p.r})^{k}" if k > 1 else f"({p.b},{p.r})"
        for p, k in basket.groups
    )
