"""
Tests for crossfam.cli
======================

Tests use Typer's CliRunner; stdout carries results, errors and logs go
to stderr.

Test Organization
-----------------
- TestVersionCommand: Tests for --version flag
- TestHelpOutput: Tests for help text
- TestComputeCommand: Tests for the compute command
- TestSearchCommand: Tests for the search command
- TestScanCommand: Tests for the scan command
- TestVerifyCommand: Tests for the verify command
- TestSetCommands: Tests for the set subcommands
"""

import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from crossfam import __version__
from crossfam.cli import app
from crossfam.models import ConstructionMatch, Regime, SearchMode
from crossfam.objective import Objectives
from crossfam.search import SearchResult


# =============================================================================
# Fixtures
# =============================================================================


@pytest.fixture
def runner() -> CliRunner:
    """Create a CLI test runner with plain text output."""
    return CliRunner(env={"NO_COLOR": "1", "TERM": "dumb", "CROSSFAM_THREADS": "1"})


@pytest.fixture
def small_config(tmp_path: Path) -> Path:
    """A settings file with a small random sample."""
    path = tmp_path / "crossfam.toml"
    path.write_text("threads = 1\nrandom_samples = 20\nfact_max_n = 5\n")
    return path


# =============================================================================
# Version Command Tests
# =============================================================================


class TestVersionCommand:
    """Tests for the --version flag."""

    def test_version_flag(self, runner: CliRunner) -> None:
        """Test that --version shows version."""
        result = runner.invoke(app, ["--version"])

        assert result.exit_code == 0
        assert __version__ in result.stdout

    def test_version_short_flag(self, runner: CliRunner) -> None:
        """Test that -V shows version."""
        result = runner.invoke(app, ["-V"])

        assert result.exit_code == 0
        assert __version__ in result.stdout


# =============================================================================
# Help Output Tests
# =============================================================================


class TestHelpOutput:
    """Tests for help text."""

    def test_main_help(self, runner: CliRunner) -> None:
        """The main help lists the commands."""
        result = runner.invoke(app, ["--help"])

        assert result.exit_code == 0
        for command in ("compute", "search", "scan", "verify", "set"):
            assert command in result.stdout

    def test_set_help(self, runner: CliRunner) -> None:
        """The set group lists its subcommands."""
        result = runner.invoke(app, ["set", "--help"])

        assert result.exit_code == 0
        assert "kpartner" in result.stdout
        assert "maxcross" in result.stdout


# =============================================================================
# Compute Command Tests
# =============================================================================


class TestComputeCommand:
    """Tests for the compute command."""

    def test_mixed(self, runner: CliRunner) -> None:
        """The mixed example prints M = 31 and both constructions."""
        result = runner.invoke(app, ["compute", "-n", "6", "-k", "4,3,2"])

        assert result.exit_code == 0
        assert "mixed" in result.stdout
        assert "31" in result.stdout
        assert "Constructions" in result.stdout

    def test_json(self, runner: CliRunner) -> None:
        """--json prints the report model."""
        result = runner.invoke(app, ["compute", "-n", "6", "-k", "4,3,2", "--json"])

        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["regime"] == "mixed"
        assert (data["lambda1"], data["lambda2"], data["m_formula"]) == (25, 31, 31)
        assert data["extremal_systems"] == [["2,4,5,6", "2,5,6", "1,2"]]
        assert data["timing"] is None

    def test_timing(self, runner: CliRunner) -> None:
        """--timing records a wall time."""
        result = runner.invoke(app, ["compute", "-n", "5", "-k", "2,2,2", "--json", "--timing"])

        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["m_formula"] == 12
        assert data["timing"] >= 0

    def test_free_regime(self, runner: CliRunner) -> None:
        """Free instances point to the search."""
        result = runner.invoke(app, ["compute", "-n", "4", "-k", "3,2,2"])

        assert result.exit_code == 0
        assert "free pairs present; use search" in result.stdout

    def test_reordered(self, runner: CliRunner) -> None:
        """An out-of-order k-vector is sorted with a warning."""
        result = runner.invoke(app, ["compute", "-n", "6", "-k", "2,4,3"])

        assert result.exit_code == 0
        assert "Reordered" in result.output

    def test_invalid(self, runner: CliRunner) -> None:
        """k₁ > n is invalid input."""
        result = runner.invoke(app, ["compute", "-n", "3", "-k", "4,2"])

        assert result.exit_code == 2
        assert "Error" in result.output


# =============================================================================
# Search Command Tests
# =============================================================================


class TestSearchCommand:
    """Tests for the search command."""

    def test_list_extremal(self, runner: CliRunner) -> None:
        """The covering system is the only maximizer."""
        result = runner.invoke(app, ["search", "-n", "6", "-k", "4,3,2", "--list-extremal"])

        assert result.exit_code == 0
        assert "31" in result.stdout
        assert "C2-only" in result.stdout
        assert "Extremal systems" in result.stdout

    def test_json(self, runner: CliRunner) -> None:
        """--json carries the extremal systems as strings."""
        result = runner.invoke(app, ["search", "-n", "6", "-k", "4,3,2", "--json"])

        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["m_bruteforce"] == 31
        assert data["discrepancy"] is False
        assert data["classification"] == "C2-only"
        assert data["extremal_systems"] == [["2,4,5,6", "2,5,6", "1,2"]]

    def test_naive(self, runner: CliRunner) -> None:
        """Naive search finds the same maximum."""
        result = runner.invoke(app, ["search", "-n", "5", "-k", "2,2,2", "--naive", "--json"])

        assert result.exit_code == 0
        assert json.loads(result.stdout)["m_bruteforce"] == 12

    def test_discrepancy_exits_1(self, runner: CliRunner, monkeypatch: pytest.MonkeyPatch) -> None:
        """A formula disagreeing with the search is reported with exit 1."""
        wrong = Objectives(Regime.MIXED, 25, 30, 30, (ConstructionMatch.C2,))
        monkeypatch.setattr("crossfam.cli.m_formula", lambda params: wrong)
        result = runner.invoke(app, ["search", "-n", "6", "-k", "4,3,2"])

        assert result.exit_code == 1
        assert "Search found 31 but the formula gives 30" in result.output

    def test_budget_exceeded(self, runner: CliRunner, tmp_path: Path) -> None:
        """A search over budget is refused with exit 2."""
        config = tmp_path / "crossfam.toml"
        config.write_text("smart_budget = 1\n")
        result = runner.invoke(
            app, ["--config", str(config), "search", "-n", "6", "-k", "4,3,2"]
        )

        assert result.exit_code == 2
        assert "exceeds the limit" in result.output

    def test_bad_config(self, runner: CliRunner, tmp_path: Path) -> None:
        """An invalid settings file is a configuration error."""
        config = tmp_path / "crossfam.toml"
        config.write_text("threads = 0\n")
        result = runner.invoke(
            app, ["--config", str(config), "search", "-n", "6", "-k", "4,3,2"]
        )

        assert result.exit_code == 2
        assert "Invalid configuration" in result.output


# =============================================================================
# Scan Command Tests
# =============================================================================


class TestScanCommand:
    """Tests for the scan command."""

    def test_g_csv(self, runner: CliRunner) -> None:
        """g over F(2,3) as CSV on stdout."""
        result = runner.invoke(app, ["scan", "-n", "6", "-k", "4,3,2", "--fn", "g"])

        assert result.exit_code == 0
        assert result.stdout.splitlines()[:2] == ["id,value", '"1,5,6",25']
        assert '"2,5,6",31' in result.stdout

    def test_g_needs_mixed(self, runner: CliRunner) -> None:
        """g is not defined in the non-mixed regime."""
        result = runner.invoke(app, ["scan", "-n", "5", "-k", "2,2,2", "--fn", "g"])

        assert result.exit_code == 2

    def test_f_json_to_file(self, runner: CliRunner, tmp_path: Path) -> None:
        """--out writes the table and reports the maximum."""
        out = tmp_path / "scans" / "f.json"
        result = runner.invoke(
            app,
            ["scan", "-n", "6", "-k", "4,3,2", "--fn", "f", "--format", "json", "--out", str(out)],
        )

        assert result.exit_code == 0
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["s"] == 2
        assert [row["value"] for row in data["rows"]] == [25, 25, 26, 28, 31]
        assert data["argmax"] == ["2,4,5,6"]
        assert "max 31" in result.output

    def test_invalid_s(self, runner: CliRunner) -> None:
        """An s outside its range is invalid input."""
        result = runner.invoke(app, ["scan", "-n", "6", "-k", "4,3,2", "--fn", "f", "--s", "3"])

        assert result.exit_code == 2


# =============================================================================
# Verify Command Tests
# =============================================================================


class TestVerifyCommand:
    """Tests for the verify command."""

    def test_theorem_instance(self, runner: CliRunner) -> None:
        """The theorem suite passes on the mixed example."""
        result = runner.invoke(app, ["verify", "--suite", "theorem", "-n", "6", "-k", "4,3,2"])

        assert result.exit_code == 0
        assert "theorem" in result.stdout
        assert "1 pass, 0 fail" in result.stdout

    def test_unimodality_json(self, runner: CliRunner) -> None:
        """--json prints the sweep model."""
        result = runner.invoke(
            app, ["verify", "--suite", "unimodality", "-n", "6", "-k", "4,3,2", "--json"]
        )

        assert result.exit_code == 0
        data = json.loads(result.stdout)
        names = [c["name"] for c in data["reports"][0]["checks"]]
        assert names == ["unimodality_g", "boundary_maxima_g", "interior_bound", "unimodality_f"]

    def test_injected_failure(self, runner: CliRunner, monkeypatch: pytest.MonkeyPatch) -> None:
        """A wrong search result fails the theorem check with exit 1."""
        wrong = SearchResult(30, (), 0, SearchMode.SMART)
        monkeypatch.setattr("crossfam.verify.brute_force_M", lambda *args, **kwargs: wrong)
        result = runner.invoke(app, ["verify", "--suite", "theorem", "-n", "6", "-k", "4,3,2"])

        assert result.exit_code == 1
        assert "bruteforce: 30" in result.stdout

    def test_needs_instance(self, runner: CliRunner) -> None:
        """Only the fact suite runs without an instance."""
        result = runner.invoke(app, ["verify", "--suite", "theorem"])

        assert result.exit_code == 2

    def test_instance_and_sweep(self, runner: CliRunner) -> None:
        """-n/-k and --sweep are exclusive."""
        result = runner.invoke(app, ["verify", "-n", "6", "-k", "4,3,2", "--sweep"])

        assert result.exit_code == 2

    def test_sweep_with_report(self, runner: CliRunner, tmp_path: Path) -> None:
        """A small sweep writes a Markdown report."""
        report = tmp_path / "sweep.md"
        result = runner.invoke(
            app,
            [
                "verify",
                "--suite",
                "theorem",
                "--sweep",
                "--t",
                "3",
                "--kmax",
                "3",
                "--nmax",
                "6",
                "--report",
                str(report),
            ],
        )

        assert result.exit_code == 0
        text = report.read_text(encoding="utf-8")
        assert text.startswith("# crossfam sweep report")
        assert "| 5 | 3,3,2 | mixed |" in text

    def test_bad_t_values(self, runner: CliRunner) -> None:
        """Unparseable family counts are invalid input."""
        result = runner.invoke(app, ["verify", "--sweep", "--t", "three"])

        assert result.exit_code == 2

    @pytest.mark.slow
    def test_fact_suite(self, runner: CliRunner, small_config: Path) -> None:
        """The instance-free fact suite passes."""
        result = runner.invoke(app, ["--config", str(small_config), "verify", "--suite", "facts"])

        assert result.exit_code == 0
        assert "fact_suite" in result.stdout


# =============================================================================
# Set Command Tests
# =============================================================================


class TestSetCommands:
    """Tests for the set subcommands."""

    @pytest.mark.parametrize(
        ("args", "expected"),
        [
            (["rank", "-n", "4", "-k", "2", "2,3"], "4"),
            (["unrank", "-n", "4", "-k", "2", "4"], "2,3"),
            (["partner", "-n", "9", "2,4,7"], "1,3,5,6,7"),
            (["kpartner", "-n", "9", "--target", "4", "2,4,7"], "1,3,4,9"),
            (["kpartner", "-n", "9", "--target", "6", "2,4,7"], "1,3,5,6,7,9"),
            (["parity", "-n", "9", "--target", "4", "2,4,9"], "2,4,8,9"),
            (["maxcross", "-n", "5", "--target", "2", "1,5"], "1,5"),
        ],
    )
    def test_values(self, runner: CliRunner, args: list[str], expected: str) -> None:
        """Each command prints one set or number."""
        result = runner.invoke(app, ["set", *args])

        assert result.exit_code == 0
        assert result.stdout.strip() == expected

    def test_members(self, runner: CliRunner) -> None:
        """members lists the family one set per line."""
        result = runner.invoke(app, ["set", "members", "-n", "4", "-k", "2", "1,4"])

        assert result.exit_code == 0
        assert result.stdout.splitlines() == ["1,2", "1,3", "1,4"]

    @pytest.mark.parametrize(
        "args",
        [
            ["kpartner", "-n", "5", "--target", "1", "2"],
            ["parity", "-n", "9", "--target", "5", "6,8,9"],
            ["maxcross", "-n", "5", "--target", "2", "4,5"],
        ],
    )
    def test_not_found(self, runner: CliRunner, args: list[str]) -> None:
        """A missing result exits with 1."""
        result = runner.invoke(app, ["set", *args])

        assert result.exit_code == 1

    @pytest.mark.parametrize(
        "args",
        [
            ["rank", "-n", "4", "-k", "2", "1,2,3"],
            ["partner", "-n", "4", "1,7"],
            ["unrank", "-n", "4", "-k", "2", "9"],
        ],
    )
    def test_invalid(self, runner: CliRunner, args: list[str]) -> None:
        """Wrong sizes, elements or positions exit with 2."""
        result = runner.invoke(app, ["set", *args])

        assert result.exit_code == 2
