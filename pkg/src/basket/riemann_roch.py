"""
Reid's orbifold contributions and the h0 / torsion formulas derived from them

A LocalIndexAssignment holds, for each basket point in canonical order, the
residue x = (i_1 * b mod r) of the local index of A at that point. When X is
Gorenstein along its crepant centers the local index of sA is s * i_1, so the
residue of i_s * b is (s * x mod r).
"""

import itertools
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from src.basket.core import Basket, OrbifoldPoint, point_half_term, residue
from src.exceptions import InvalidConfigError, InvalidIndexError, OutOfRangeError

LOGGER = logging.getLogger(__name__)

LocalIndexAssignment = Tuple[int, ...]
H0Table = Dict[int, int]


def _residue_term(r: int, y: int) -> Fraction:
    return point_half_term(r, residue(y, r))


def orbifold_contribution(r: int, b: int, i: int) -> Fraction:
    """c_Q = -i(r^2-1)/(12r) + sum_{j<i} jb(r - jb)/(2r), residues mod r"""
    OrbifoldPoint(r, b)  # validates (r, b)
    if i < 0:
        raise InvalidIndexError(f"local index must be >= 0, got i={i}")
    total = Fraction(-i * (r * r - 1), 12 * r)
    for j in range(i):
        total += _residue_term(r, j * b)
    return total


def contribution_difference(r: int, b: int, i: int) -> Fraction:
    """c_Q(S) - c_Q(S + K) at a point where S has local index i"""
    OrbifoldPoint(r, b)  # validates (r, b)
    if i < 0:
        raise InvalidIndexError(f"local index must be >= 0, got i={i}")
    return Fraction(r * r - 1, 12 * r) - _residue_term(r, i * b)


def _check_assignment(basket: Basket, x: Sequence[int]) -> None:
    if len(x) != len(basket):
        raise InvalidConfigError(
            f"assignment has {len(x)} residues but the basket has {len(basket)} points"
        )
    for point, value in zip(basket.points, x):
        if not 0 <= value < point.r:
            raise InvalidConfigError(f"residue {value} outside [0, {point.r}) at point {point}")


def h0_sA(
    q: int,
    c1_cubed: Fraction,
    basket: Basket,
    x: Sequence[int],
    s: int,
    gorenstein_along_crepant_centers: bool = True,
) -> Fraction:
    """
    h0(X, O(sA)) = s^2 c1^3 / (2 q^2) + 2 - sum over points of y(r - y)/(2r), y = s*x mod r

    Returned raw: a non-integral or negative value means the assignment is
    impossible and is left for the caller to judge.

    The caller asserts X is Gorenstein along all crepant centers; without it
    the local index of sA is not s times that of A and the formula does not apply.
    """
    if not gorenstein_along_crepant_centers:
        raise InvalidConfigError(
            "h0(sA) needs local indices i_s = s * i_1, which requires X Gorenstein along crepant centers"
        )
    if not 0 < s < q:
        raise OutOfRangeError(f"s must satisfy 0 < s < q={q}, got s={s}")
    _check_assignment(basket, x)

    value = Fraction(s * s) * Fraction(c1_cubed) / (2 * q * q) + 2
    for point, x_r in zip(basket.points, x):
        value -= _residue_term(point.r, s * x_r)
    return value


def _is_dimension(value: Fraction) -> bool:
    return value.denominator == 1 and value >= 0


def feasible_assignments(
    q: int,
    c1_cubed: Fraction,
    basket: Basket,
    s_range: Iterable[int],
) -> List[LocalIndexAssignment]:
    """Every x in prod [0, r) whose h0(sA) is a nonnegative integer for all s in s_range"""
    s_values = sorted(set(s_range))
    if not s_values:
        raise InvalidConfigError("s_range must not be empty")
    for s in s_values:
        if not 0 < s < q:
            raise OutOfRangeError(f"s must satisfy 0 < s < q={q}, got s={s}")

    feasible: List[LocalIndexAssignment] = []
    for x in itertools.product(*(range(point.r) for point in basket.points)):
        if all(_is_dimension(h0_sA(q, c1_cubed, basket, x, s)) for s in s_values):
            feasible.append(tuple(x))

    LOGGER.debug("basket %s, q=%d: %d feasible assignments over %d values of s",
                 basket, q, len(feasible), len(s_values))
    return sorted(feasible)


def h0_table(
    q: int,
    c1_cubed: Fraction,
    basket: Basket,
    x: Sequence[int],
    s_values: Iterable[int],
) -> Optional[H0Table]:
    """s -> h0(sA), or None as soon as one value is not a nonnegative integer"""
    table: H0Table = {}
    for s in sorted(set(s_values)):
        value = h0_sA(q, c1_cubed, basket, x, s)
        if not _is_dimension(value):
            return None
        table[s] = value.numerator
    return table


def integrality_discrepancy(
    q: int,
    c1_cubed: Fraction,
    basket: Basket,
) -> List[LocalIndexAssignment]:
    """Assignments that pass at s = 1 but fail somewhere in 1..q-1"""
    at_one = feasible_assignments(q, c1_cubed, basket, {1})
    everywhere = set(feasible_assignments(q, c1_cubed, basket, range(1, q)))
    return [x for x in at_one if x not in everywhere]


def torsion_obstruction(
    basket: Basket,
    geometric_term: Fraction = Fraction(0),
) -> Optional[LocalIndexAssignment]:
    """
    Search local indices i (component-wise in [0, r)) solving
    2 = sum ib(r - ib)/(2r) + geometric_term/2, residues mod r.

    Returns the lexicographically first witness, or None. The whole product
    space is covered through the sets of sums reachable by each suffix of the
    basket; terms are nonnegative, so sums above the target are dropped.
    """
    target = 2 - Fraction(geometric_term) / 2
    if target < 0:
        return None
    terms: List[List[Fraction]] = [
        [_residue_term(point.r, i * point.b) for i in range(point.r)]
        for point in basket.points
    ]

    reachable: List[Set[Fraction]] = [set() for _ in range(len(terms) + 1)]
    reachable[-1] = {Fraction(0)}
    for k in range(len(terms) - 1, -1, -1):
        reachable[k] = {
            value + rest
            for value in set(terms[k])
            for rest in reachable[k + 1]
            if value + rest <= target
        }
    if target not in reachable[0]:
        return None

    witness: List[int] = []
    remaining = target
    for k, point_terms in enumerate(terms):
        i = next(i for i, value in enumerate(point_terms) if remaining - value in reachable[k + 1])
        witness.append(i)
        remaining -= point_terms[i]
    return tuple(witness)
