"""
Readers for the bracket syntax and for emitted CSV / JSON tables

Basket:      [(2,1),(3,1),(5,2),(11,1)]
r-multiset:  [2,3,5,11]
"""

import csv
import io
import json
import re
from fractions import Fraction
from typing import Any, Dict, List, Optional

from src.basket.core import Basket, OrbifoldPoint, RMultiset, c2c1_from_multiset, defect_sum, gorenstein_index
from src.exceptions import BasketSyntaxError, FanoscanError
from src.helper import Helper
from src.search.index_search import CandidateRecord


class BasketParser:
    """Parse the bracket text syntax used on every CLI surface and file format"""

    _point_pattern: str = r'\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)'
    _basket_pattern: str = r'^\[\s*(?:' + _point_pattern + r'\s*(?:,\s*' + _point_pattern + r'\s*)*)?\]$'
    _multiset_pattern: str = r'^\[\s*(?:-?\d+\s*(?:,\s*-?\d+\s*)*)?\]$'

    @staticmethod
    def parse_basket(text: str) -> Basket:
        stripped: str = text.strip()
        if not re.match(BasketParser._basket_pattern, stripped):
            raise BasketSyntaxError(f"not a basket of the form [(r,b),...]: {text!r}")

        points: List[OrbifoldPoint] = []
        for match in re.finditer(BasketParser._point_pattern, stripped):
            r: int = int(match.group(1))
            b: int = int(match.group(2))
            # OrbifoldPoint names the failing constraint
            points.append(OrbifoldPoint(r, b))
        return Basket(tuple(points))

    @staticmethod
    def parse_r_multiset(text: str) -> RMultiset:
        stripped: str = text.strip()
        if not re.match(BasketParser._multiset_pattern, stripped):
            raise BasketSyntaxError(f"not an r-multiset of the form [r,...]: {text!r}")
        entries: List[int] = [int(x) for x in re.findall(r'-?\d+', stripped)]
        return RMultiset(tuple(entries))


class RecordParser:
    """Rebuild CandidateRecords from the CSV and JSON the formatter emits"""

    @staticmethod
    def _recover_chi(multiset: RMultiset, r_x: int, rx_c2c1: int) -> int:
        """chi from r_X c2c1 = r_X (24 chi - sum(r - 1/r)); must be an integer >= 1"""
        chi = (Fraction(rx_c2c1, r_x) + defect_sum(multiset)) / 24
        if chi.denominator != 1 or chi < 1:
            raise FanoscanError(
                f"rX_c2c1={rx_c2c1} gives chi={Helper.format_rational(chi)} for {multiset}; "
                "chi must be a positive integer"
            )
        return chi.numerator

    @staticmethod
    def _from_row(row: Dict[str, Any], chi: Optional[int]) -> CandidateRecord:
        try:
            basket: Basket = BasketParser.parse_basket(str(row['basket']))
            r_x: int = int(row['r_X'])
            rx_c1_cubed: int = int(row['rX_c1cubed'])
            q: int = int(row['q'])
            n: int = int(row['n'])
            rx_c2c1: Optional[int] = int(row['rX_c2c1']) if row.get('rX_c2c1') not in (None, '') else None
            chi_minus_k_raw = row.get('chi_minusK')
        except KeyError as exc:
            raise BasketSyntaxError(f"record is missing column {exc}") from exc
        except ValueError as exc:
            raise BasketSyntaxError(f"record has a malformed value: {exc}") from exc

        multiset: RMultiset = basket.r_multiset
        if r_x != gorenstein_index(multiset):
            raise FanoscanError(f"r_X={r_x} does not match basket {basket}")
        if chi is None:
            chi = 1 if rx_c2c1 is None else RecordParser._recover_chi(multiset, r_x, rx_c2c1)
        c2c1: Fraction = c2c1_from_multiset(multiset, chi)
        if rx_c2c1 is not None and rx_c2c1 != r_x * c2c1:
            raise FanoscanError(f"rX_c2c1={rx_c2c1} does not match basket {basket} at chi={chi}")
        if 'c2c1' in row and Helper.parse_rational(str(row['c2c1'])) != c2c1:
            raise FanoscanError(f"c2c1={row['c2c1']} does not match basket {basket} at chi={chi}")

        return CandidateRecord(
            r_multiset=multiset,
            c2c1=c2c1,
            c1_cubed=Fraction(rx_c1_cubed, r_x),
            q=q,
            r_X=r_x,
            n=n,
            basket=basket,
            chi_minus_K=None if chi_minus_k_raw in (None, '') else int(chi_minus_k_raw),
        )

    @staticmethod
    def from_csv(text: str, chi: Optional[int] = None) -> List[CandidateRecord]:
        """chi=None recovers chi(O_X) per row from rX_c2c1"""
        reader = csv.DictReader(io.StringIO(text))
        return [RecordParser._from_row(row, chi) for row in reader]

    @staticmethod
    def from_json(text: str, chi: Optional[int] = None) -> List[CandidateRecord]:
        try:
            rows: List[Dict[str, Any]] = json.loads(text)
        except json.JSONDecodeError as exc:
            raise BasketSyntaxError(f"not a JSON list of records: {exc}") from exc
        return [RecordParser._from_row(row, chi) for row in rows]
