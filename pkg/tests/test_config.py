"""
Tests for crossfam.config
=========================

Test Organization
-----------------
- TestDefaults: field defaults and validation
- TestFromToml: reading TOML files
- TestLoad: merging defaults, files and the environment
"""

from pathlib import Path

import pytest
from pydantic import ValidationError

from crossfam.config import DEFAULT_CONFIG_NAME, THREADS_ENV, Settings


# =============================================================================
# Default Tests
# =============================================================================


class TestDefaults:
    """Tests for Settings defaults."""

    def test_defaults(self) -> None:
        """Budgets and caps have their documented defaults."""
        settings = Settings()
        assert settings.threads >= 1
        assert settings.naive_budget == 10**8
        assert settings.smart_budget == 10**7
        assert settings.member_cap == 10**6
        assert settings.seed == 0
        assert settings.fact_max_n == 8

    def test_sequential(self) -> None:
        """sequential() pins a single worker."""
        assert Settings.sequential().threads == 1

    @pytest.mark.parametrize("field", ["threads", "smart_budget", "member_cap", "fact_max_n"])
    def test_positive(self, field: str) -> None:
        """Zero workers or zero budgets are rejected."""
        with pytest.raises(ValidationError):
            Settings(**{field: 0})

    def test_fact_reach_bounded(self) -> None:
        """The exhaustive fact range must stay within the randomized one."""
        with pytest.raises(ValidationError):
            Settings(fact_max_n=31)


# =============================================================================
# TOML Tests
# =============================================================================


class TestFromToml:
    """Tests for Settings.from_toml."""

    def test_flat_keys(self, tmp_path: Path) -> None:
        """Top-level keys are read; unknown keys are ignored."""
        path = tmp_path / "crossfam.toml"
        path.write_text("threads = 3\nsmart_budget = 500\ncolor = 'blue'\n")
        settings = Settings.from_toml(path)
        assert settings.threads == 3
        assert settings.smart_budget == 500

    def test_tool_section(self, tmp_path: Path) -> None:
        """A [tool.crossfam] section wins over top-level keys."""
        path = tmp_path / "pyproject.toml"
        path.write_text(
            "[project]\nname = 'demo'\n\n[tool.crossfam]\nthreads = 2\nseed = 7\n"
        )
        settings = Settings.from_toml(path)
        assert (settings.threads, settings.seed) == (2, 7)

    def test_invalid_value(self, tmp_path: Path) -> None:
        """Invalid values surface as ValidationError."""
        path = tmp_path / "crossfam.toml"
        path.write_text("threads = 0\n")
        with pytest.raises(ValidationError):
            Settings.from_toml(path)

    def test_missing_file(self, tmp_path: Path) -> None:
        """A missing file raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            Settings.from_toml(tmp_path / "absent.toml")


# =============================================================================
# Load Tests
# =============================================================================


class TestLoad:
    """Tests for Settings.load."""

    def test_env_overrides_file(self, tmp_path: Path) -> None:
        """CROSSFAM_THREADS beats the file."""
        path = tmp_path / "crossfam.toml"
        path.write_text("threads = 3\nmember_cap = 10\n")
        settings = Settings.load(path, environ={THREADS_ENV: "5"})
        assert settings.threads == 5
        assert settings.member_cap == 10

    def test_picks_up_working_directory_file(
        self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """crossfam.toml in the working directory is used without --config."""
        (tmp_path / DEFAULT_CONFIG_NAME).write_text("naive_budget = 42\n")
        monkeypatch.chdir(tmp_path)
        assert Settings.load(environ={}).naive_budget == 42

    def test_no_file(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        """Without a file the defaults apply."""
        monkeypatch.chdir(tmp_path)
        assert Settings.load(environ={}).smart_budget == 10**7

    def test_bad_env(self) -> None:
        """A non-numeric thread count is rejected."""
        with pytest.raises(ValidationError):
            Settings.load(environ={THREADS_ENV: "many"})
