"""
Three-stage exact search for large Q-Fano indices

Step 1 lists every r-multiset R with sum(r - 1/r) < 24 chi together with
c2.c1 = 24 chi - sum(r - 1/r). Step 2 attaches (c1^3, q) with
q^2 <= r_X c1^3 <= b r_X c2.c1 and r_X c1^3 / q^2 = n a positive integer.
Step 3 assigns weights b to every r so that chi(-K) is a nonnegative integer.
"""

import functools
import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from src.basket.core import (
    Basket,
    OrbifoldPoint,
    RMultiset,
    admissible_weights,
    defect_sum,
    euler_characteristic_minus_k,
    gorenstein_index,
    point_defect,
)
from src.config import config
from src.exceptions import FanoscanError, InvalidConfigError
from src.helper import Helper
from src.search.km_inequality import WORST_CASE, KmCase, km_postfilter

LOGGER = logging.getLogger(__name__)

SLOPE_COEFFICIENTS: Tuple[Fraction, ...] = (Fraction(3), Fraction(16, 5), Fraction(4))

_CASE_SLOPES: Dict[KmCase, Fraction] = {
    (1, 3): Fraction(3),
    (2, 1): Fraction(16, 5),
    (2, 2): Fraction(4),
    (3, 1): Fraction(4),
}


@dataclass(frozen=True)
class SearchConfig:
    chi: int = 1
    slope_coeff: Fraction = Fraction(4)
    q_min: int = 61
    required_subsets: Tuple[RMultiset, ...] = ()
    apply_km_postfilter: bool = False
    km_case: Optional[KmCase] = None
    # wall-clock only; never changes the output
    workers: int = 1

    def validate(self) -> None:
        if self.slope_coeff not in SLOPE_COEFFICIENTS:
            allowed = ", ".join(Helper.format_rational(b) for b in SLOPE_COEFFICIENTS)
            raise InvalidConfigError(
                f"slope coefficient {Helper.format_rational(Fraction(self.slope_coeff))} "
                f"is not one of the exact values {allowed}"
            )
        if self.q_min < 1:
            raise InvalidConfigError(f"q_min must be >= 1, got {self.q_min}")
        if self.chi < 1:
            raise InvalidConfigError(f"chi must be >= 1, got {self.chi}")
        if self.workers < 1:
            raise InvalidConfigError(f"workers must be >= 1, got {self.workers}")
        if self.km_case is not None and self.km_case not in _CASE_SLOPES:
            raise InvalidConfigError(f"unknown Harder-Narasimhan shape {self.km_case}")
        if self.apply_km_postfilter and self.q_min < 2:
            raise InvalidConfigError(f"the slope post-filter needs q_min >= 2, got {self.q_min}")

    @classmethod
    def for_km_case(cls, case: KmCase, q_min: int = 61, chi: int = 1, workers: int = 1) -> "SearchConfig":
        """The search run for one shape (l, r1): b = 3, 16/5, 4, 4; post-filter for l > 1"""
        if case not in _CASE_SLOPES:
            raise InvalidConfigError(f"unknown Harder-Narasimhan shape {case}")
        return cls(
            chi=chi,
            slope_coeff=_CASE_SLOPES[case],
            q_min=q_min,
            apply_km_postfilter=case[0] > 1,
            km_case=case,
            workers=workers,
        )


@dataclass(frozen=True)
class CandidateRecord:
    r_multiset: RMultiset
    c2c1: Fraction
    c1_cubed: Fraction
    q: int
    r_X: int
    n: int
    basket: Optional[Basket] = None
    chi_minus_K: Optional[int] = None

    @property
    def rx_c1_cubed(self) -> int:
        return self.n * self.q * self.q

    @property
    def rx_c2c1(self) -> int:
        value = self.r_X * self.c2c1
        return value.numerator // value.denominator

    @property
    def dedup_key(self) -> Tuple[Optional[Basket], Fraction, int]:
        return (self.basket, self.c1_cubed, self.q)

    @property
    def sort_key(self) -> Tuple:
        return (self.q, self.n, self.r_multiset, self.basket or Basket())

    def violations(self, search: SearchConfig) -> List[str]:
        """Every type invariant this record breaks under the given search settings"""
        broken: List[str] = []
        if self.r_X != gorenstein_index(self.r_multiset):
            broken.append(f"r_X={self.r_X} is not lcm{self.r_multiset}")
        if self.c2c1 != 24 * search.chi - defect_sum(self.r_multiset) or self.c2c1 <= 0:
            broken.append(f"c2c1={self.c2c1} does not match 24 chi - sum(r - 1/r) > 0")
        if self.r_X * self.c1_cubed != self.n * self.q * self.q or self.n < 1:
            broken.append(f"r_X c1^3 = {self.r_X * self.c1_cubed} is not n q^2 with n={self.n}")
        if self.q < search.q_min:
            broken.append(f"q={self.q} below q_min={search.q_min}")
        if not self.q * self.q <= self.r_X * self.c1_cubed <= search.slope_coeff * self.r_X * self.c2c1:
            broken.append("q^2 <= r_X c1^3 <= b r_X c2c1 fails")
        if self.basket is not None:
            if self.basket.r_multiset != self.r_multiset:
                broken.append(f"basket {self.basket} does not project to {self.r_multiset}")
            chi_k = euler_characteristic_minus_k(self.basket, self.c1_cubed, search.chi)
            if chi_k.denominator != 1 or chi_k < 0 or chi_k != self.chi_minus_K:
                broken.append(f"chi(-K)={chi_k} is not the nonnegative integer {self.chi_minus_K}")
        return broken


@dataclass
class SearchStats:
    """How many objects survive each stage"""
    step1: int = 0
    step2: int = 0
    step3: int = 0
    postfilter: Optional[int] = None


def enumerate_r_multisets(chi: int = 1) -> Iterator[Tuple[RMultiset, Fraction]]:
    """
    Every R with sum(r - 1/r) < 24 chi, paired with c2.c1, in lexicographic order

    Sequences grow nondecreasingly; r - 1/r is increasing in r, so the first r
    that overruns the remaining budget ends the branch.
    """
    if chi < 1:
        raise InvalidConfigError(f"chi must be >= 1, got {chi}")
    budget = Fraction(24 * chi)

    def extend(prefix: Tuple[int, ...], used: Fraction, start: int) -> Iterator[Tuple[RMultiset, Fraction]]:
        yield RMultiset(prefix), budget - used
        r = start
        while used + point_defect(r) < budget:
            yield from extend(prefix + (r,), used + point_defect(r), r)
            r += 1

    yield from extend((), Fraction(0), 2)


def _passes_required(multiset: RMultiset, required: Sequence[RMultiset]) -> bool:
    return not required or any(multiset.contains(subset) for subset in required)


def _candidates_for(multiset: RMultiset, c2c1: Fraction, search: SearchConfig) -> List[CandidateRecord]:
    r_x = gorenstein_index(multiset)
    ceiling = search.slope_coeff * r_x * c2c1
    records: List[CandidateRecord] = []
    for q in range(search.q_min, Helper.isqrt_fraction(ceiling) + 1):
        for n in range(1, Helper.floor_fraction(ceiling / (q * q)) + 1):
            records.append(CandidateRecord(
                r_multiset=multiset,
                c2c1=c2c1,
                c1_cubed=Fraction(n * q * q, r_x),
                q=q,
                r_X=r_x,
                n=n,
            ))
    return records


def step2_candidates(search: SearchConfig) -> List[CandidateRecord]:
    """Step 2 records (basket absent), ordered by (r_multiset, q, n)"""
    search.validate()
    records: List[CandidateRecord] = []
    for multiset, c2c1 in enumerate_r_multisets(search.chi):
        if _passes_required(multiset, search.required_subsets):
            records.extend(_candidates_for(multiset, c2c1, search))
    return records


def _weight_choices(multiset: RMultiset) -> List[List[Tuple[OrbifoldPoint, ...]]]:
    """Per distinct r: every multiset of admissible weights for its copies"""
    groups = []
    for r, count in sorted(Counter(multiset.entries).items()):
        groups.append([
            tuple(OrbifoldPoint(r, b) for b in weights)
            for weights in itertools.combinations_with_replacement(admissible_weights(r), count)
        ])
    return groups


def step3_assign_baskets(record: CandidateRecord, chi: int = 1) -> List[Basket]:
    """Baskets over record.r_multiset for which chi(-K) is a nonnegative integer"""
    baskets: List[Basket] = []
    for parts in itertools.product(*_weight_choices(record.r_multiset)):
        basket = Basket(tuple(itertools.chain.from_iterable(parts)))
        chi_k = euler_characteristic_minus_k(basket, record.c1_cubed, chi)
        if chi_k.denominator == 1 and chi_k >= 0:
            baskets.append(basket)
    return sorted(baskets)


def _with_basket(record: CandidateRecord, basket: Basket, chi: int) -> CandidateRecord:
    chi_k = euler_characteristic_minus_k(basket, record.c1_cubed, chi)
    return CandidateRecord(
        r_multiset=record.r_multiset,
        c2c1=record.c2c1,
        c1_cubed=record.c1_cubed,
        q=record.q,
        r_X=record.r_X,
        n=record.n,
        basket=basket,
        chi_minus_K=chi_k.numerator,
    )


def _search_multiset(item: Tuple[RMultiset, Fraction], search: SearchConfig) -> Tuple[int, List[CandidateRecord]]:
    """Steps 2 and 3 for one Step-1 multiset: (number of Step-2 records, Step-3 records)"""
    multiset, c2c1 = item
    if not _passes_required(multiset, search.required_subsets):
        return 0, []
    candidates = _candidates_for(multiset, c2c1, search)
    completed = [
        _with_basket(record, basket, search.chi)
        for record in candidates
        for basket in step3_assign_baskets(record, search.chi)
    ]
    return len(candidates), completed


class IndexSearch:
    """Runs the three stages for one SearchConfig, optionally across worker processes"""

    def __init__(self, search: SearchConfig) -> None:
        search.validate()
        self.search: SearchConfig = search
        self.stats: SearchStats = SearchStats()

    def _stage_results(self) -> Iterator[Tuple[int, List[CandidateRecord]]]:
        multisets = list(enumerate_r_multisets(self.search.chi))
        self.stats.step1 = len(multisets)
        LOGGER.info("step 1: %d r-multisets with c2.c1 > 0", len(multisets))

        worker = functools.partial(_search_multiset, search=self.search)
        if self.search.workers == 1:
            yield from map(worker, multisets)
            return
        with Pool(self.search.workers) as pool:
            yield from pool.imap(worker, multisets, chunksize=64)

    def run(self) -> List[CandidateRecord]:
        unique: Dict[Tuple, CandidateRecord] = {}
        for step2_count, records in self._stage_results():
            self.stats.step2 += step2_count
            for record in records:
                unique.setdefault(record.dedup_key, record)

        results = sorted(unique.values(), key=lambda record: record.sort_key)
        self.stats.step3 = len(results)
        LOGGER.info("step 2: %d candidates; step 3: %d records with a basket",
                    self.stats.step2, self.stats.step3)

        for record in results:
            broken = record.violations(self.search)
            if broken:
                raise FanoscanError(f"search emitted an invalid record q={record.q}: {'; '.join(broken)}")

        if self.search.apply_km_postfilter:
            case = self.search.km_case if self.search.km_case in ((2, 2), (3, 1)) else WORST_CASE
            results = km_postfilter(results, case)
            self.stats.postfilter = len(results)
        return results


def run_full_search(search: SearchConfig) -> List[CandidateRecord]:
    return IndexSearch(search).run()


def non_gorenstein_search(q_min: Optional[int] = None, workers: int = 1) -> List[CandidateRecord]:
    """Search restricted to R containing one of Kawakita's five multisets, b = 4"""
    search = SearchConfig(
        slope_coeff=config.non_gorenstein_bound,
        q_min=config.non_gorenstein_qmin if q_min is None else q_min,
        required_subsets=tuple(RMultiset.of(subset) for subset in config.kawakita_subsets),
        workers=workers,
    )
    return run_full_search(search)
