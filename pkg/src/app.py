import logging
import sys
from enum import Enum
from fractions import Fraction
from typing import List, Optional

import typer

from src.config import Config
from src.exceptions import FanoscanError
from src.formatter.output_formatter import OutputFormatter
from src.helper import Helper
from src.search.index_search import (
    SLOPE_COEFFICIENTS,
    CandidateRecord,
    IndexSearch,
    SearchConfig,
    non_gorenstein_search,
)
from src.verifiers.lemma_verifiers import VerificationReport, run_verifiers


app: typer.Typer = typer.Typer(help="Exact search for large Q-Fano indices of canonical Fano 3-folds")

LOGGER = logging.getLogger(__name__)


class RecordFormat(str, Enum):
    csv = "csv"
    json = "json"
    md = "md"


class ReportFormat(str, Enum):
    json = "json"
    text = "text"


class VerifyTarget(str, Enum):
    table1 = "table1"
    torsion = "torsion"
    h0 = "h0"
    minp = "minp"
    coeff_lemma = "coeff-lemma"
    all = "all"


def _configure_logging(verbose: bool) -> None:
    config = Config()
    level = logging.DEBUG if verbose else getattr(logging, config.log_level.upper(), logging.WARNING)
    logging.basicConfig(level=level, format=config.log_format, stream=sys.stderr)


def _parse_bound(value: str) -> Fraction:
    allowed = ", ".join(Helper.format_rational(b) for b in SLOPE_COEFFICIENTS)
    try:
        bound = Helper.parse_rational(value)
    except FanoscanError:
        raise typer.BadParameter(f"{value!r} is not an exact rational; allowed values: {allowed}")
    if bound not in SLOPE_COEFFICIENTS:
        raise typer.BadParameter(f"{value} is not allowed; use one of the exact values {allowed}")
    return bound


@app.command()
def search(
    bound: Optional[str] = typer.Option(None, "--bound", help="Slope coefficient b: 3, 16/5 or 4"),
    qmin: Optional[int] = typer.Option(None, "--qmin", min=1, help="Smallest Q-Fano index to search"),
    chi: Optional[int] = typer.Option(None, "--chi", min=1, help="chi(O_X); 1 for weak Fano"),
    non_gorenstein: bool = typer.Option(False, "--non-gorenstein", help="Require one of Kawakita's five multisets, b = 4"),
    postfilter: bool = typer.Option(False, "--postfilter", help="Drop rows beyond the (3,1) slope bound at p = q-1"),
    output_format: Optional[RecordFormat] = typer.Option(None, "--format", help="csv, json or md"),
    out: Optional[str] = typer.Option(None, "--out", help="Write the table to FILE instead of stdout"),
    workers: Optional[int] = typer.Option(None, "--workers", min=1, help="Worker processes; never changes output"),
    stats: bool = typer.Option(False, "--stats", help="Print per-stage counts to stderr"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
) -> None:
    """
    Run the three-stage search and emit the surviving rows
    """
    _configure_logging(verbose)
    config = Config()

    if non_gorenstein and bound is not None:
        raise typer.BadParameter("--non-gorenstein fixes b = 4; do not combine it with --bound")
    if non_gorenstein and chi is not None:
        raise typer.BadParameter("--non-gorenstein runs with chi = 1; do not combine it with --chi")
    if non_gorenstein and postfilter:
        raise typer.BadParameter("--postfilter applies to the isolated search, not --non-gorenstein")

    worker_count: int = workers or config.default_workers
    fmt: str = (output_format.value if output_format else str(config.get('search.format', 'csv')))

    try:
        if non_gorenstein:
            records: List[CandidateRecord] = non_gorenstein_search(
                q_min=qmin if qmin is not None else config.non_gorenstein_qmin,
                workers=worker_count,
            )
        else:
            slope: Fraction = _parse_bound(bound) if bound is not None else config.default_bound
            runner = IndexSearch(SearchConfig(
                chi=chi if chi is not None else config.default_chi,
                slope_coeff=slope,
                q_min=qmin if qmin is not None else config.default_qmin,
                apply_km_postfilter=postfilter,
                workers=worker_count,
            ))
            records = runner.run()
            if stats:
                typer.echo(OutputFormatter.format_stats(runner.stats), err=True)
    except FanoscanError as exc:
        raise typer.BadParameter(str(exc))

    table: str = OutputFormatter.render_records(records, fmt)
    if out:
        with open(out, 'w') as f:
            f.write(table)
        LOGGER.info("wrote %d records to %s", len(records), out)
    else:
        typer.echo(table, nl=False)


@app.command()
def verify(
    target: VerifyTarget = typer.Argument(..., help="table1, torsion, h0, minp, coeff-lemma or all"),
    output_format: ReportFormat = typer.Option(ReportFormat.text, "--format", help="json or text"),
    workers: int = typer.Option(1, "--workers", min=1, help="Worker processes for the table1 search"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
) -> None:
    """
    Run the machine checks; exit 0 iff every selected check passes
    """
    _configure_logging(verbose)

    reports: List[VerificationReport] = run_verifiers(target.value, workers=workers)
    if output_format == ReportFormat.json:
        typer.echo(OutputFormatter.reports_to_json(reports), nl=False)
    else:
        typer.echo(OutputFormatter.reports_to_text(reports), nl=False)

    if not all(report.passed for report in reports):
        raise typer.Exit(code=1)


if __name__ == '__main__':
    app()
