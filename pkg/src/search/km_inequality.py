"""
Kawamata-Miyaoka type slope bounds c1^3 <= coeff * c2.c1

The coefficient depends on the Harder-Narasimhan shape (l, r1) of the tangent
sheaf and, for l > 1, on p where c1(E_{l-1}) = (p/q) c1(X).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from src.exceptions import InvalidContextError

LOGGER = logging.getLogger(__name__)

KmCase = Tuple[int, int]

KM_CASES: Tuple[KmCase, ...] = ((1, 3), (2, 1), (2, 2), (3, 1))
WORST_CASE: KmCase = (3, 1)
# shapes whose coefficient depends on p
P_DEPENDENT_CASES: Tuple[KmCase, ...] = ((2, 2), (3, 1))


@dataclass(frozen=True)
class KmContext:
    l: int
    r1: int
    p: int
    q: int

    @property
    def case(self) -> KmCase:
        return (self.l, self.r1)

    def validate(self) -> None:
        if self.case not in KM_CASES:
            raise InvalidContextError(f"(l, r1)={self.case} is not one of {list(KM_CASES)}")
        if self.q < 1:
            raise InvalidContextError(f"q must be positive, got {self.q}")
        if self.case in P_DEPENDENT_CASES and not (3 * self.p > 2 * self.q and self.p <= self.q - 1):
            raise InvalidContextError(
                f"(l, r1)={self.case} needs 2q/3 < p <= q-1, got p={self.p}, q={self.q}"
            )

    def decomposition(self) -> Optional[Tuple[int, int]]:
        """For (3,1): some (q1, q2) with p = q1 + q2 and 2 <= q2 <= q1 - 1 <= q/2 - 1"""
        if self.case != (3, 1):
            return None
        for q1 in range(self.q // 2, 2, -1):
            q2 = self.p - q1
            if 2 <= q2 <= q1 - 1 and 2 * q1 <= self.q:
                return (q1, q2)
        return None


def km_bound(ctx: KmContext) -> Fraction:
    ctx.validate()
    q, p = ctx.q, ctx.p
    if ctx.case == (1, 3):
        return Fraction(3)
    if ctx.case == (2, 1):
        return Fraction(16, 5)
    if ctx.case == (2, 2):
        return Fraction(4 * q * q, p * (4 * q - 3 * p))
    return Fraction(4 * q * q, -4 * p * p + 6 * p * q - q * q)


def km_bound_ceiling(case: KmCase, q: int) -> Fraction:
    """The p-free coefficient, i.e. the bound at p = q - 1 for l > 1; needs q >= 2"""
    if case not in KM_CASES:
        raise InvalidContextError(f"(l, r1)={case} is not one of {list(KM_CASES)}")
    if case == (1, 3):
        return Fraction(3)
    if case == (2, 1):
        return Fraction(16, 5)
    if q < 2:
        raise InvalidContextError(f"the ceiling for {case} needs q >= 2, got q={q}")
    if case == (2, 2):
        return Fraction(4 * q * q, q * q + 2 * q - 3)
    return Fraction(4 * q * q, q * q + 2 * q - 4)


def km_postfilter(records: Sequence, case: KmCase = WORST_CASE) -> List:
    """Keep records with c1^3 / c2c1 within the ceiling coefficient of their q"""
    kept = [
        record for record in records
        if record.c1_cubed <= km_bound_ceiling(case, record.q) * record.c2c1
    ]
    LOGGER.info("post-filter %s: kept %d of %d records", case, len(kept), len(records))
    return kept
