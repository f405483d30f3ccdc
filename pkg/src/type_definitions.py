"""
Type definitions for fanoscan serialized payloads
"""

from typing import Any, Optional, TypedDict


class RecordRow(TypedDict):
    """One emitted search row; integers stay integers, the basket is in bracket syntax"""
    basket: str
    r_X: int
    rX_c1cubed: int
    rX_c2c1: int
    q: int
    n: int
    chi_minusK: Optional[int]


class JsonRecordRow(RecordRow):
    """JSON rows also carry the rational invariants as 'num/den' strings"""
    c1_cubed: str
    c2c1: str


class ReportPayload(TypedDict):
    """Serialized VerificationReport"""
    name: str
    status: str
    expected: str
    computed: str
    witness: Any


class Table1Fixture(TypedDict):
    """A reference row of the large-index table as stored in config.yaml"""
    basket: str
    r_X: int
    rX_c1cubed: int
    rX_c2c1: int
    q: int


class IndexCaseFixture(TypedDict):
    q: int
    basket: str
    rX_c1cubed: int
    r_X: int


