"""Embedded classification-table fixtures.

Four tables are shipped as structured text, one record per line:

* table 1: index multisets with chi = 1 and c1.c2 = 0
  (columns: multiset, Cartier index, c1.c2)
* table 2: index multisets with chi = 1 admitting a basket with integral
  l(2), the "-K not big" configurations (same columns)
* table 4: groups acting on P^1 x K3 with K3-type quotient
  (columns: label, order, Du Val profile of the quotient surface,
  induced index multiset, c1.c2)
* table 5: the Enriques-type rows derived from table 4 (same columns;
  the order column is the full group, twice the symplectic part)

The texts are the comparison targets for the enumeration and quotient
checks; `verify-tables` reproduces every line from first principles.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .quotient import CoverType, QuotientScenario, parse_profile
from .riemann_roch import IndexMultiset, parse_index_multiset, parse_rational


class TableRow(NamedTuple):
    indices: IndexMultiset
    cartier_index: int
    c1c2: Fraction


CHI1_C1C2_ZERO = """\
5^5 5 0
2^3,4,8^2 8 0
2^3,5^2,10 10 0
2^2,3^2,4,12 12 0
2,4^6 4 0
3^4,4^2,6 12 0
3^9 3 0
2^6,4^4 4 0
2^5,3^4,6 6 0
2^11,4^2 4 0
2^16 2 0
"""

CHI1_L2_INTEGRAL = """\
5^2 5 72/5
2,3,6 6 14
2,4^2 4 15
3^3 3 16
7^3 7 24/7
2^4 2 18
2^2,10^2 10 6/5
2,4,8^2 8 3
5^4 5 24/5
2,3,5^2,6 30 22/5
2,4^2,5^2 20 27/5
3^3,5^2 15 32/5
5^5 5 0
2^4,5^2 10 42/5
2^3,4,8^2 8 0
2^3,5^2,10 10 0
2^3,6^3 6 2
2^2,3^2,4,12 12 0
2^2,3^2,6^2 6 4
2^2,3,4^2,6 12 5
2^2,4^4 4 6
2,3^4,6 6 6
2,3^3,4^2 12 7
3^6 3 8
2^5,3,6 6 8
2^5,4^2 4 9
2^4,3^3 6 10
2^8 2 12
2^4,3^3,5^2 30 2/5
3^9 3 0
2^8,5^2 10 12/5
2^6,4^4 4 0
2^5,3^4,6 6 0
2^5,3^3,4^2 12 1
2^4,3^6 6 2
2^9,3,6 6 2
2^9,4^2 4 3
2^8,3^3 6 4
2^12 2 6
2^16 2 0
"""

K3_QUOTIENTS = """\
C_2 2 8A_1 2^16 24
C_3 3 6A_2 3^12 16
D_4 4 12A_1 2^24 12
C_4 4 4A_3,2A_1 2^4,4^8 12
C_5 5 4A_4 5^8 48/5
D_6 6 3A_2,8A_1 2^16,3^6 8
C_6 6 2A_5,2A_2,2A_1 2^4,3^4,6^4 8
C_7 7 3A_6 7^6 48/7
D_8 8 2A_3,9A_1 2^18,4^4 6
C_8 8 2A_7,A_3,A_1 2^2,4^2,8^4 6
D_10 10 2A_4,8A_1 2^16,5^4 24/5
A_4 12 6A_2,4A_1 2^8,3^12 4
D_12 12 A_5,A_2,9A_1 2^18,3^2,6^2 4
S_4 24 2A_3,3A_2,5A_1 2^10,3^6,4^4 2
A_5 60 2A_4,3A_2,4A_1 2^8,3^6,5^4 4/5
"""

ENRIQUES_QUOTIENTS = """\
C_2 4 4A_1 2^8 12
C_3 6 3A_2 3^6 8
D_4 8 6A_1 2^12 6
C_4 8 2A_3,A_1 2^2,4^4 6
C_5 10 2A_4 5^4 24/5
C_6 12 A_5,A_2,A_1 2^2,3^2,6^2 4
D_10 20 A_4,4A_1 2^8,5^2 12/5
A_4 24 3A_2,2A_1 2^4,3^6 2
"""


def parse_enumeration_fixture(text: str) -> tuple[TableRow, ...]:
    rows = []
    for line in text.strip().splitlines():
        fields = line.split()
        if len(fields) != 3:
            raise ValueError(f"expected 3 columns, got {line!r}")
        rows.append(
            TableRow(
                indices=parse_index_multiset(fields[0]),
                cartier_index=int(fields[1]),
                c1c2=parse_rational(fields[2]),
            )
        )
    return tuple(rows)


def parse_quotient_fixture(text: str, cover: CoverType) -> tuple[QuotientScenario, ...]:
    rows = []
    for line in text.strip().splitlines():
        fields = line.split()
        if len(fields) != 5:
            raise ValueError(f"expected 5 columns, got {line!r}")
        rows.append(
            QuotientScenario(
                group_label=fields[0],
                group_order=int(fields[1]),
                profile=parse_profile(fields[2]),
                cover=cover,
                expected_indices=parse_index_multiset(fields[3]),
                expected_c1c2=parse_rational(fields[4]),
            )
        )
    return tuple(rows)


def table_rows(table: int) -> tuple[TableRow, ...]:
    """Fixture rows for the enumeration tables (1 or 2)."""
    if table == 1:
        return parse_enumeration_fixture(CHI1_C1C2_ZERO)
    if table == 2:
        return parse_enumeration_fixture(CHI1_L2_INTEGRAL)
    raise ValueError(f"no enumeration fixture for table {table}")


def quotient_scenarios(table: int) -> tuple[QuotientScenario, ...]:
    """Fixture rows for the quotient tables (4 or 5)."""
    if table == 4:
        return parse_quotient_fixture(K3_QUOTIENTS, CoverType.K3)
    if table == 5:
        return parse_quotient_fixture(ENRIQUES_QUOTIENTS, CoverType.ENRIQUES)
    raise ValueError(f"no quotient fixture for table {table}")
