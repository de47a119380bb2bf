"""
Tests for crossfam.report
=========================

Test Organization
-----------------
- TestFilters: Jinja2 filters
- TestSweepReport: Markdown rendering and writing
- TestScanOutput: CSV and JSON scan tables
"""

import json
from pathlib import Path

import pytest

from crossfam import __version__
from crossfam.models import (
    CheckStatus,
    CheckVerdict,
    ExtremalClass,
    OutputFormat,
    Params,
    Regime,
    Report,
    ScanTarget,
    SweepReport,
)
from crossfam.report import create_jinja_env, format_scan, render_report, write_report
from crossfam.search import scan
from tests.conftest import kset


@pytest.fixture
def sweep(mixed: Params) -> SweepReport:
    """A one-instance sweep with a failed theorem check."""
    report = Report(
        params=mixed,
        regime=Regime.MIXED,
        s=2,
        lambda1=25,
        lambda2=31,
        m_formula=31,
        m_bruteforce=30,
        extremal_systems=[["2,4,5,6", "2,5,6", "1,2"]],
        classification=ExtremalClass.C2_ONLY,
        discrepancy=True,
        checks=[
            CheckVerdict(name="unimodality_g", params=mixed, status=CheckStatus.PASS),
            CheckVerdict(
                name="theorem",
                params=mixed,
                status=CheckStatus.FAIL,
                counterexample={"formula": 31, "bruteforce": 30},
            ),
        ],
    )
    return SweepReport(reports=[report])


# =============================================================================
# Filter Tests
# =============================================================================


class TestFilters:
    """Tests for the template filters."""

    def test_kset(self) -> None:
        """Sets render in braces, sequences of sets in parentheses."""
        render = create_jinja_env().filters["kset"]
        assert render(kset(6, 1, 5, 6)) == "{1,5,6}"
        assert render(["2,5,6", "1,2"]) == "({2,5,6}, {1,2})"

    def test_cell(self) -> None:
        """Missing values render as a dash."""
        render = create_jinja_env().filters["cell"]
        assert render(None) == "-"
        assert render(0) == "0"


# =============================================================================
# Sweep Report Tests
# =============================================================================


class TestSweepReport:
    """Tests for render_report and write_report."""

    def test_empty(self) -> None:
        """An empty sweep renders a heading and an OK verdict."""
        text = render_report(SweepReport())
        assert text.splitlines()[0] == "# crossfam sweep report"
        assert f"crossfam {__version__} over 0 instances" in text
        assert "**Overall:** OK" in text
        assert "No search was run." in text

    def test_instance_row(self, sweep: SweepReport) -> None:
        """Each instance gets one table row with a discrepancy marker."""
        text = render_report(sweep)
        assert "over 1 instance." in text
        assert "| 6 | 4,3,2 | mixed | 2 | 25 | 31 | 31 | 30 ⚠ | C2-only |" in text
        assert "unimodality_g:pass theorem:fail" in text

    def test_extremal_systems(self, sweep: SweepReport) -> None:
        """Extremal systems are listed with their sets in braces."""
        assert "- (6, (4,3,2)): ({2,4,5,6}, {2,5,6}, {1,2})" in render_report(sweep)

    def test_counterexamples(self, sweep: SweepReport) -> None:
        """Each failure gets a section with its JSON witness."""
        text = render_report(sweep)
        assert "**Overall:** FAILED" in text
        assert "### theorem on (6, (4,3,2))" in text
        assert '{"bruteforce": 30, "formula": 31}' in text

    def test_write_report(self, sweep: SweepReport, tmp_path: Path) -> None:
        """write_report creates missing parent directories."""
        path = write_report(sweep, tmp_path / "reports" / "sweep.md")
        assert path.is_file()
        assert path.read_text(encoding="utf-8") == render_report(sweep)


# =============================================================================
# Scan Output Tests
# =============================================================================


class TestScanOutput:
    """Tests for scan_to_csv, scan_to_json and format_scan."""

    def test_csv(self, mixed: Params) -> None:
        """One quoted ID and its value per row."""
        text = format_scan(scan(mixed, ScanTarget.G), OutputFormat.CSV)
        assert text.splitlines() == [
            "id,value",
            '"1,5,6",25',
            '"2,3,4",26',
            '"2,3,6",28',
            '"2,5,6",31',
        ]

    def test_json(self, nonmixed: Params) -> None:
        """JSON carries the instance, rows and maximizers."""
        data = json.loads(format_scan(scan(nonmixed, ScanTarget.F), OutputFormat.JSON))
        assert data["params"] == {"n": 5, "ks": [2, 2, 2]}
        assert data["target"] == "f"
        assert data["s"] == 1
        assert data["rows"][0] == {"id": "1,5", "value": 12}
        assert data["max_value"] == 12
        assert data["argmax"] == ["1,5"]
