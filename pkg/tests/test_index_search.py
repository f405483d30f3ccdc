import math
from fractions import Fraction
from typing import Iterator, List, Tuple

import pytest

from src.basket.core import Basket, RMultiset, gorenstein_index
from src.exceptions import InvalidConfigError
from src.formatter.output_formatter import OutputFormatter
from src.search.index_search import (
    CandidateRecord,
    IndexSearch,
    SearchConfig,
    enumerate_r_multisets,
    run_full_search,
    step2_candidates,
    step3_assign_baskets,
)

TABLE1 = [
    ("[(2,1),(3,1),(5,2),(11,1)]", 3721, 61),
    ("[(2,1),(3,1),(5,1),(11,2)]", 4489, 67),
    ("[(2,1),(3,1),(5,2),(11,1)]", 5041, 71),
    ("[(2,1),(3,1),(5,1),(11,3)]", 5329, 73),
]


def _oracle_multisets(budget: Fraction) -> Iterator[Tuple[int, ...]]:
    """Largest entry first; every later entry is at most the previous one"""
    def shrink(suffix: Tuple[int, ...], left: Fraction, ceiling: int) -> Iterator[Tuple[int, ...]]:
        yield suffix
        for r in range(ceiling, 1, -1):
            cost = r - Fraction(1, r)
            if cost < left:
                yield from shrink((r,) + suffix, left - cost, r)

    yield from shrink((), budget, 24)


def test_step1_examples():
    pairs = dict(enumerate_r_multisets(1))
    assert pairs[RMultiset.of([2, 3, 5, 11])] == Fraction(1361, 330)
    assert pairs[RMultiset()] == 24


def test_step1_matches_recursive_oracle():
    emitted = [multiset.entries for multiset, _ in enumerate_r_multisets(1)]
    expected = sorted(_oracle_multisets(Fraction(24)))
    assert len(emitted) == len(set(emitted))
    assert emitted == expected


def test_step1_rejects_nonpositive_chi():
    with pytest.raises(InvalidConfigError):
        list(enumerate_r_multisets(0))


def test_step2_examples():
    records = step2_candidates(SearchConfig(slope_coeff=Fraction(4), q_min=61))
    keys = {(record.r_multiset, record.q, record.n): record for record in records}
    row71 = keys[(RMultiset.of([2, 3, 5, 11]), 71, 1)]
    assert row71.c1_cubed == Fraction(5041, 330)
    assert row71.c2c1 == Fraction(1361, 330)
    assert keys[(RMultiset.of([2, 3, 5, 11]), 73, 1)].c1_cubed == Fraction(5329, 330)
    assert all(record.basket is None for record in records)


def test_step2_is_empty_above_the_derived_ceiling():
    max_rx = max(gorenstein_index(multiset) for multiset, _ in enumerate_r_multisets(1))
    q_min = math.isqrt(4 * 24 * max_rx) + 1
    assert step2_candidates(SearchConfig(slope_coeff=Fraction(4), q_min=q_min)) == []


def _step2_record(entries: List[int], c1_cubed: Fraction, q: int) -> CandidateRecord:
    multiset = RMultiset.of(entries)
    r_x = gorenstein_index(multiset)
    return CandidateRecord(
        r_multiset=multiset,
        c2c1=24 - sum((r - Fraction(1, r) for r in entries), Fraction(0)),
        c1_cubed=c1_cubed,
        q=q,
        r_X=r_x,
        n=(c1_cubed * r_x / (q * q)).numerator,
    )


def test_step3_examples():
    baskets = step3_assign_baskets(_step2_record([2, 3, 5, 11], Fraction(4489, 330), 67))
    assert Basket.of([(2, 1), (3, 1), (5, 1), (11, 2)]) in baskets
    assert baskets == sorted(baskets)
    assert Basket.of([(2, 1), (3, 1), (5, 1), (11, 3)]) in step3_assign_baskets(
        _step2_record([2, 3, 5, 11], Fraction(5329, 330), 73))
    assert step3_assign_baskets(_step2_record([2], Fraction(1), 1)) == []


@pytest.mark.parametrize("slope", [Fraction(3), Fraction(16, 5)])
def test_smaller_slopes_leave_only_index_61(slope):
    records = run_full_search(SearchConfig(slope_coeff=slope, q_min=61))
    assert len(records) == 1
    assert str(records[0].basket) == "[(2,1),(3,1),(5,2),(11,1)]"
    assert records[0].q == 61
    assert records[0].rx_c1_cubed == 3721


def test_slope_four_reproduces_table1(table1_records):
    rows = [(str(record.basket), record.rx_c1_cubed, record.q) for record in table1_records]
    assert rows == TABLE1
    assert {record.r_X for record in table1_records} == {330}
    assert {record.rx_c2c1 for record in table1_records} == {1361}
    assert [record.chi_minus_K for record in table1_records][:3] == [7, 8, 9]


def test_emitted_records_are_valid(table1_records):
    search = SearchConfig(slope_coeff=Fraction(4), q_min=61)
    assert all(record.violations(search) == [] for record in table1_records)


def test_violations_catch_a_corrupted_record(table1_records):
    record = table1_records[0]
    broken = CandidateRecord(
        r_multiset=record.r_multiset,
        c2c1=record.c2c1,
        c1_cubed=record.c1_cubed,
        q=record.q,
        r_X=331,
        n=record.n,
        basket=record.basket,
        chi_minus_K=record.chi_minus_K,
    )
    assert broken.violations(SearchConfig(slope_coeff=Fraction(4), q_min=61))


def test_output_grows_with_the_slope():
    keys = [
        {record.dedup_key for record in run_full_search(SearchConfig(slope_coeff=slope, q_min=55))}
        for slope in (Fraction(3), Fraction(16, 5), Fraction(4))
    ]
    assert keys[0] <= keys[1] <= keys[2]


def test_worker_count_does_not_change_output(table1_records):
    parallel = run_full_search(SearchConfig(slope_coeff=Fraction(4), q_min=61, workers=2))
    assert OutputFormatter.to_csv(parallel) == OutputFormatter.to_csv(table1_records)


def test_stats_and_postfilter():
    runner = IndexSearch(SearchConfig(slope_coeff=Fraction(4), q_min=61, apply_km_postfilter=True))
    records = runner.run()
    assert [record.q for record in records] == [61, 67, 71]
    assert runner.stats.step1 == len(list(enumerate_r_multisets(1)))
    assert runner.stats.step3 == 4
    assert runner.stats.postfilter == 3
    assert runner.stats.step2 >= runner.stats.step3


def test_config_per_harder_narasimhan_shape():
    shape = SearchConfig.for_km_case((2, 2))
    assert shape.slope_coeff == 4 and shape.apply_km_postfilter
    shape = SearchConfig.for_km_case((1, 3))
    assert shape.slope_coeff == 3 and not shape.apply_km_postfilter
    assert SearchConfig.for_km_case((2, 1)).slope_coeff == Fraction(16, 5)
    with pytest.raises(InvalidConfigError):
        SearchConfig.for_km_case((4, 4))


@pytest.mark.parametrize("search", [
    SearchConfig(slope_coeff=Fraction(33, 10)),
    SearchConfig(q_min=0),
    SearchConfig(chi=0),
    SearchConfig(workers=0),
])
def test_invalid_search_config(search):
    with pytest.raises(InvalidConfigError):
        IndexSearch(search)


def test_non_gorenstein_maximum_is_45(non_gorenstein_records):
    assert max(record.q for record in non_gorenstein_records) == 45
    extremal = [record for record in non_gorenstein_records if record.q == 45]
    assert extremal
    for record in extremal:
        assert str(record.basket) == "[(4,1),(5,1),(5,2),(7,3)]"
        assert record.r_X == 140
        assert record.rx_c2c1 == 531
        assert record.rx_c1_cubed == 2025
        assert record.chi_minus_K == 8


def test_non_gorenstein_records_contain_a_required_multiset(non_gorenstein_records):
    required = [RMultiset.of(s) for s in ([2, 2, 2, 2], [3, 3, 3], [2, 4, 4], [5, 5], [2, 3, 6])]
    assert non_gorenstein_records
    for record in non_gorenstein_records:
        assert record.q >= 33
        assert any(record.r_multiset.contains(subset) for subset in required)


def test_postfilter_needs_q_min_two():
    with pytest.raises(InvalidConfigError, match="q_min >= 2"):
        IndexSearch(SearchConfig(slope_coeff=Fraction(4), q_min=1, apply_km_postfilter=True))
    SearchConfig(slope_coeff=Fraction(4), q_min=1).validate()
