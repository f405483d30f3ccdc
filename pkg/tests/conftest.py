from fractions import Fraction
from typing import List

import pytest

from src.search.index_search import CandidateRecord, SearchConfig, non_gorenstein_search, run_full_search


@pytest.fixture(scope="session")
def table1_records() -> List[CandidateRecord]:
    return run_full_search(SearchConfig(slope_coeff=Fraction(4), q_min=61))


@pytest.fixture(scope="session")
def non_gorenstein_records() -> List[CandidateRecord]:
    return non_gorenstein_search()
