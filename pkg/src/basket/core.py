"""
Orbifold points, Reid baskets and the closed-form basket sums

Every quantity is an exact Fraction; nothing here touches floating point.
"""

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Tuple

from src.exceptions import InvalidModulusError, InvalidPointError

Rational = Fraction


def residue(x: int, r: int) -> int:
    """Smallest nonnegative residue of x mod r"""
    if r <= 0:
        raise InvalidModulusError(f"modulus must be positive, got r={r}")
    return x % r


@dataclass(frozen=True, order=True)
class OrbifoldPoint:
    """A pair (r, b): an orbifold point of type 1/r(1, -1, b)"""
    r: int
    b: int

    def __post_init__(self) -> None:
        if self.r < 2:
            raise InvalidPointError(f"({self.r},{self.b}): orbifold order r must be >= 2")
        if self.b < 1:
            raise InvalidPointError(f"({self.r},{self.b}): weight b must be >= 1")
        if 2 * self.b > self.r:
            raise InvalidPointError(f"({self.r},{self.b}): weight must satisfy 2b <= r")
        if math.gcd(self.r, self.b) != 1:
            raise InvalidPointError(f"({self.r},{self.b}): gcd(r, b) must be 1")

    def __str__(self) -> str:
        return f"({self.r},{self.b})"


@dataclass(frozen=True, order=True)
class RMultiset:
    """The orders r of a basket, with multiplicity, kept sorted ascending"""
    entries: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.entries))
        if ordered and ordered[0] < 2:
            raise InvalidPointError(f"r-multiset entries must be >= 2, got {ordered[0]}")
        object.__setattr__(self, 'entries', ordered)

    @classmethod
    def of(cls, entries: Iterable[int]) -> "RMultiset":
        return cls(tuple(entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def contains(self, other: "RMultiset") -> bool:
        """Multiplicity-aware sub-multiset test: {2,2,2,2} needs four 2's"""
        ours = Counter(self.entries)
        return all(ours[r] >= count for r, count in Counter(other.entries).items())

    def __str__(self) -> str:
        return "[" + ",".join(str(r) for r in self.entries) + "]"


@dataclass(frozen=True, order=True)
class Basket:
    """Reid's basket: a multiset of orbifold points sorted by (r, b)"""
    points: Tuple[OrbifoldPoint, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'points', tuple(sorted(self.points)))

    @classmethod
    def of(cls, pairs: Iterable[Tuple[int, int]]) -> "Basket":
        return cls(tuple(OrbifoldPoint(r, b) for r, b in pairs))

    @property
    def r_multiset(self) -> RMultiset:
        return RMultiset(tuple(point.r for point in self.points))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __str__(self) -> str:
        return "[" + ",".join(str(point) for point in self.points) + "]"


def gorenstein_index(multiset: RMultiset) -> int:
    """r_X = lcm of the orders; 1 for the empty multiset"""
    return math.lcm(1, *multiset.entries)


def point_defect(r: int) -> Fraction:
    """r - 1/r, the share of one point in 24*chi - c2.c1"""
    return Fraction(r * r - 1, r)


def defect_sum(multiset: RMultiset) -> Fraction:
    return sum((point_defect(r) for r in multiset.entries), Fraction(0))


def point_half_term(r: int, b: int) -> Fraction:
    """b(r - b)/(2r); also used with a residue in place of b"""
    return Fraction(b * (r - b), 2 * r)


def half_point_sum(basket: Basket) -> Fraction:
    return sum((point_half_term(p.r, p.b) for p in basket.points), Fraction(0))


def c2c1_from_multiset(multiset: RMultiset, chi: int = 1) -> Fraction:
    """c2(X).c1(X) = 24 chi - sum(r - 1/r)"""
    return 24 * chi - defect_sum(multiset)


def euler_characteristic_minus_k(basket: Basket, c1_cubed: Fraction, chi: int = 1) -> Fraction:
    """chi(-K) = c1^3/2 + 3 chi - sum b(r-b)/(2r); a nonnegative integer on any actual X"""
    return c1_cubed / 2 + 3 * chi - half_point_sum(basket)


def admissible_weights(r: int) -> Tuple[int, ...]:
    """All b with 1 <= b <= r/2 and gcd(r, b) = 1"""
    return tuple(b for b in range(1, r // 2 + 1) if math.gcd(r, b) == 1)
