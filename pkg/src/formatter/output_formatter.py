import csv
import io
import json
from typing import List, Sequence

from src.helper import Helper
from src.search.index_search import CandidateRecord, SearchStats
from src.type_definitions import JsonRecordRow, RecordRow
from src.verifiers.lemma_verifiers import UNCHECKED_CLAIMS, UNCHECKED_NOTE, VerificationReport

CSV_COLUMNS: List[str] = ['basket', 'r_X', 'rX_c1cubed', 'rX_c2c1', 'q', 'n', 'chi_minusK']
MARKDOWN_HEADERS: List[str] = ['B_X', 'r_X', 'r_X c1^3', 'r_X c2c1', 'q']


class OutputFormatter:
    """Format search records and verification reports"""

    @staticmethod
    def record_row(record: CandidateRecord) -> RecordRow:
        return {
            'basket': str(record.basket) if record.basket is not None else str(record.r_multiset),
            'r_X': record.r_X,
            'rX_c1cubed': record.rx_c1_cubed,
            'rX_c2c1': record.rx_c2c1,
            'q': record.q,
            'n': record.n,
            'chi_minusK': record.chi_minus_K,
        }

    @staticmethod
    def to_csv(records: Sequence[CandidateRecord]) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator='\n')
        writer.writeheader()
        for record in records:
            writer.writerow(OutputFormatter.record_row(record))
        return buffer.getvalue()

    @staticmethod
    def to_json(records: Sequence[CandidateRecord]) -> str:
        rows: List[JsonRecordRow] = []
        for record in records:
            row: JsonRecordRow = {
                **OutputFormatter.record_row(record),
                'c1_cubed': Helper.format_rational(record.c1_cubed),
                'c2c1': Helper.format_rational(record.c2c1),
            }
            rows.append(row)
        return json.dumps(rows, indent=2) + "\n"

    @staticmethod
    def to_markdown(records: Sequence[CandidateRecord]) -> str:
        """Table in the column order B_X, r_X, r_X c1^3, r_X c2c1, q"""
        cells: List[List[str]] = [
            [row['basket'], str(row['r_X']), str(row['rX_c1cubed']), str(row['rX_c2c1']), str(row['q'])]
            for row in map(OutputFormatter.record_row, records)
        ]
        widths: List[int] = [
            max([len(header)] + [len(line[i]) for line in cells])
            for i, header in enumerate(MARKDOWN_HEADERS)
        ]

        def line(values: Sequence[str]) -> str:
            return "| " + " | ".join(value.ljust(width) for value, width in zip(values, widths)) + " |"

        lines: List[str] = [line(MARKDOWN_HEADERS), "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
        lines.extend(line(values) for values in cells)
        return "\n".join(lines) + "\n"

    @staticmethod
    def render_records(records: Sequence[CandidateRecord], output_format: str) -> str:
        if output_format == 'json':
            return OutputFormatter.to_json(records)
        if output_format == 'md':
            return OutputFormatter.to_markdown(records)
        return OutputFormatter.to_csv(records)

    @staticmethod
    def format_stats(stats: SearchStats) -> str:
        text = f"step 1: {stats.step1} r-multisets | step 2: {stats.step2} candidates | step 3: {stats.step3} records"
        if stats.postfilter is not None:
            text += f" | post-filter: {stats.postfilter} kept"
        return text

    @staticmethod
    def reports_to_json(reports: Sequence[VerificationReport]) -> str:
        return json.dumps([report.to_payload() for report in reports], indent=2) + "\n"

    @staticmethod
    def reports_to_text(reports: Sequence[VerificationReport]) -> str:
        lines: List[str] = []
        for report in reports:
            lines.append("=" * 60)
            lines.append(f"{report.check_name}: {report.status.upper()}")
            lines.append("=" * 60)
            lines.append(f"  expected: {report.expected}")
            lines.append(f"  computed: {report.computed}")
            if report.witness:
                lines.append(f"  witness:  {json.dumps(report.witness, sort_keys=True)}")
            lines.append("")

        passed: int = sum(1 for report in reports if report.passed)
        lines.append(f"{passed} of {len(reports)} checks passed")
        lines.append("")
        lines.append(f"Claims {UNCHECKED_NOTE}:")
        for claim in UNCHECKED_CLAIMS:
            lines.append(f"    • {claim}")
        return "\n".join(lines) + "\n"
