"""
crossfam.config - Runtime Settings
==================================

Budgets, caps and parallelism for the search and verification modules.

Sources, lowest precedence first:

1. Field defaults.
2. A TOML file: ``crossfam.toml`` in the working directory, or the path
   given with ``--config``. Keys may sit at top level or under
   ``[tool.crossfam]`` (so a ``pyproject.toml`` works too).
3. The ``CROSSFAM_THREADS`` environment variable.

Example ``crossfam.toml``::

    threads = 4
    smart_budget = 20_000_000
"""

from __future__ import annotations

import logging
import os
from collections.abc import Mapping
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field


logger = logging.getLogger(__name__)

THREADS_ENV = "CROSSFAM_THREADS"
DEFAULT_CONFIG_NAME = "crossfam.toml"


def _machine_parallelism() -> int:
    return os.cpu_count() or 1


class Settings(BaseModel):
    """
    Validated runtime settings.

    Attributes
    ----------
    threads : int
        Worker processes for sharded search and sweeps; 1 runs inline.
    naive_budget : int
        Largest tuple count naive search accepts.
    smart_budget : int
        Largest (I₁, I₂) pair count smart search accepts.
    member_cap : int
        Largest family ``members`` or the oracle will materialize.
    parallel_threshold : int
        Work items below which search stays inline regardless of ``threads``.
    seed : int
        Seed for the randomized part of the fact suite.
    random_samples : int
        Random sets drawn per randomized fact.
    fact_max_n : int
        Largest ground set the fact suite covers exhaustively; the facts
        are drawn at random above it.
    """

    threads: int = Field(default_factory=_machine_parallelism, ge=1)
    naive_budget: int = Field(default=10**8, ge=1)
    smart_budget: int = Field(default=10**7, ge=1)
    member_cap: int = Field(default=10**6, ge=1)
    parallel_threshold: int = Field(default=20_000, ge=0)
    seed: int = 0
    random_samples: int = Field(default=10**4, ge=0)
    fact_max_n: int = Field(default=8, ge=1, le=30)

    @classmethod
    def sequential(cls) -> Settings:
        """Defaults with a single worker; what library calls use when given nothing."""
        return cls(threads=1)

    @classmethod
    def from_toml(cls, path: Path) -> Settings:
        """
        Load settings from a TOML file.

        Raises
        ------
        FileNotFoundError
            If the file doesn't exist.
        ValidationError
            If a value is invalid.
        """
        return cls(**_read_toml(path))

    @classmethod
    def load(
        cls,
        path: Path | None = None,
        environ: Mapping[str, str] | None = None,
    ) -> Settings:
        """
        Merge defaults, the TOML file and the environment.

        Parameters
        ----------
        path : Path | None
            Explicit config file. When omitted, ``crossfam.toml`` in the
            current directory is used if present.
        environ : Mapping[str, str] | None
            Environment to read ``CROSSFAM_THREADS`` from (defaults to
            ``os.environ``).
        """
        data: dict[str, Any] = {}
        if path is None and Path(DEFAULT_CONFIG_NAME).is_file():
            path = Path(DEFAULT_CONFIG_NAME)
        if path is not None:
            data.update(_read_toml(path))
            logger.debug("Loaded settings from %s", path)
        env = os.environ if environ is None else environ
        if THREADS_ENV in env:
            data["threads"] = env[THREADS_ENV]
        return cls(**data)


def _read_toml(path: Path) -> dict[str, Any]:
    import tomli

    with path.open("rb") as f:
        data = tomli.load(f)
    section = data.get("tool", {}).get("crossfam")
    if isinstance(section, dict):
        return dict(section)
    return {k: v for k, v in data.items() if k in Settings.model_fields}
