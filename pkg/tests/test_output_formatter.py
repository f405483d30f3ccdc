import json
from fractions import Fraction

import pytest

from src.basket.core import Basket, RMultiset
from src.exceptions import BasketSyntaxError, FanoscanError, InvalidPointError
from src.formatter.output_formatter import CSV_COLUMNS, OutputFormatter
from src.parsers.basket_parser import BasketParser, RecordParser
from src.search.index_search import CandidateRecord, SearchStats
from src.verifiers.lemma_verifiers import UNCHECKED_CLAIMS, verify_min_p


def test_csv_layout(table1_records):
    lines = OutputFormatter.to_csv(table1_records).splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert lines[1] == '"[(2,1),(3,1),(5,2),(11,1)]",330,3721,1361,61,1,7'
    assert len(lines) == 5


def test_csv_round_trip(table1_records):
    assert RecordParser.from_csv(OutputFormatter.to_csv(table1_records)) == table1_records


def test_json_carries_exact_rationals(table1_records):
    text = OutputFormatter.to_json(table1_records)
    rows = json.loads(text)
    assert rows[1]['c1_cubed'] == "4489/330"
    assert rows[1]['c2c1'] == "1361/330"
    assert rows[1]['chi_minusK'] == 8
    assert RecordParser.from_json(text) == table1_records


def test_markdown_column_order(table1_records):
    lines = OutputFormatter.to_markdown(table1_records).splitlines()
    assert [cell.strip() for cell in lines[0].strip("|").split("|")] == ["B_X", "r_X", "r_X c1^3", "r_X c2c1", "q"]
    assert [cell.strip() for cell in lines[2].strip("|").split("|")] == [
        "[(2,1),(3,1),(5,2),(11,1)]", "330", "3721", "1361", "61"]


def test_empty_tables():
    assert OutputFormatter.to_csv([]) == ",".join(CSV_COLUMNS) + "\n"
    assert json.loads(OutputFormatter.to_json([])) == []


def test_stats_line():
    assert OutputFormatter.format_stats(SearchStats(10, 5, 4)) == (
        "step 1: 10 r-multisets | step 2: 5 candidates | step 3: 4 records")
    assert OutputFormatter.format_stats(SearchStats(10, 5, 4, 3)).endswith("post-filter: 3 kept")


def test_report_text_lists_unchecked_claims():
    text = OutputFormatter.reports_to_text([verify_min_p()])
    assert "minp: PASS" in text
    assert "1 of 1 checks passed" in text
    for claim in UNCHECKED_CLAIMS:
        assert claim in text
    payload = json.loads(OutputFormatter.reports_to_json([verify_min_p()]))
    assert payload[0]["name"] == "minp"
    assert payload[0]["status"] == "pass"


def test_basket_parser():
    basket = BasketParser.parse_basket(" [ (11,1), (2,1),(3, 1),(5,2)] ")
    assert str(basket) == "[(2,1),(3,1),(5,2),(11,1)]"
    assert str(BasketParser.parse_basket("[]")) == "[]"
    assert BasketParser.parse_r_multiset("[11,2,5,3]").entries == (2, 3, 5, 11)


@pytest.mark.parametrize("text,error", [
    ("[(4,2)]", InvalidPointError),
    ("[(7,4)]", InvalidPointError),
    ("[(2,1)", BasketSyntaxError),
    ("(2,1)", BasketSyntaxError),
    ("[(2;1)]", BasketSyntaxError),
])
def test_basket_parser_rejects(text, error):
    with pytest.raises(error):
        BasketParser.parse_basket(text)


def test_record_parser_rejects_inconsistent_rows():
    header = ",".join(CSV_COLUMNS)
    with pytest.raises(FanoscanError):
        RecordParser.from_csv(header + '\n"[(2,1),(3,1),(5,2),(11,1)]",331,3721,1361,61,1,7\n')
    with pytest.raises(FanoscanError):
        RecordParser.from_csv(header + '\n"[(2,1),(3,1),(5,2),(11,1)]",330,3721,1360,61,1,7\n')
    with pytest.raises(BasketSyntaxError):
        RecordParser.from_json("not json")
    with pytest.raises(BasketSyntaxError):
        RecordParser.from_json('[{"basket": "[(2,1)]"}]')
    assert RecordParser.from_csv(header + "\n") == []


def _chi_two_record() -> CandidateRecord:
    # chi = 2: c2c1 = 48 - 3/2 for a single (2,1) point
    return CandidateRecord(
        r_multiset=RMultiset.of([2]),
        c2c1=Fraction(93, 2),
        c1_cubed=Fraction(9),
        q=3,
        r_X=2,
        n=2,
        basket=Basket.of([(2, 1)]),
        chi_minus_K=None,
    )


def test_round_trip_recovers_chi_from_the_row():
    records = [_chi_two_record()]
    assert RecordParser.from_json(OutputFormatter.to_json(records)) == records
    assert RecordParser.from_csv(OutputFormatter.to_csv(records)) == records
    assert RecordParser.from_csv(OutputFormatter.to_csv(records), chi=2) == records
    with pytest.raises(FanoscanError, match="chi=1"):
        RecordParser.from_csv(OutputFormatter.to_csv(records), chi=1)


def test_record_parser_rejects_non_integral_chi():
    header = ",".join(CSV_COLUMNS)
    with pytest.raises(FanoscanError, match="positive integer"):
        RecordParser.from_csv(header + '\n"[(2,1)]",2,18,94,3,2,\n')
