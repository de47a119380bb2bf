"""
crossfam.models - Pydantic Models and Enumerations
==================================================

Data models shared by the computation modules and the CLI. Instances are
validated on construction, so a ``Params`` that exists always describes a
well-formed problem.

Architecture Notes
------------------
The models are organized as follows:

    Params (frozen, hashable)
    ├── n: int
    └── ks: nonincreasing tuple (k₁ ≥ … ≥ k_t)
    SweepGrid
    └── iter_params() -> Params in (n, ks) order
    CheckVerdict
    └── status: CheckStatus
    Report (one instance)
    └── checks: list[CheckVerdict]
    SweepReport
    └── reports: list[Report]

Usage Example
-------------
>>> from crossfam.models import Params
>>> params, reordered = Params.parse(6, "2,4,3")
>>> params.ks, reordered
((4, 3, 2), True)
"""

from __future__ import annotations

from collections.abc import Iterator
from enum import Enum
from itertools import combinations_with_replacement
from typing import TYPE_CHECKING, Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


if TYPE_CHECKING:
    from crossfam.families import Classification


# =============================================================================
# Enumerations
# =============================================================================


class Regime(str, Enum):
    """
    Parameter regimes of an ``(n, k₁, …, k_t)`` instance.

    Attributes
    ----------
    FREE : str
        ``n < k₁ + k_t``: some pair of families cross-intersects for free.
    MIXED : str
        ``k₁ + k₃ ≤ n < k₁ + k₂``: only the pair (1, 2) is free.
    NONMIXED : str
        ``n ≥ k₁ + k₂``: no pair is free.
    GENERAL_S : str
        ``k₁ + k_{s+1} ≤ n < k_{s-1} + k_s`` for some ``s ∈ [3, t-1]``.
    UNSUPPORTED : str
        Anything else; only exhaustive search applies.
    """

    FREE = "free"
    MIXED = "mixed"
    NONMIXED = "nonmixed"
    GENERAL_S = "general_s"
    UNSUPPORTED = "unsupported"

    @property
    def description(self) -> str:
        """Human-readable description for CLI output."""
        descriptions = {
            Regime.FREE: "free pairs present; use search",
            Regime.MIXED: "k1+k3 <= n < k1+k2 (closed formula max(lambda1, lambda2))",
            Regime.NONMIXED: "n >= k1+k2 (closed formula for the non-mixed case)",
            Regime.GENERAL_S: "k1+k_{s+1} <= n < k_{s-1}+k_s (objective scans only)",
            Regime.UNSUPPORTED: "no closed formula; use search",
        }
        return descriptions[self]

    @property
    def has_formula(self) -> bool:
        """Whether ``m_formula`` applies."""
        return self in {Regime.MIXED, Regime.NONMIXED}


class ConstructionMatch(str, Enum):
    """Which construction an ID tuple equals."""

    C1 = "C1"
    C2 = "C2"
    BOTH = "both"
    NEITHER = "neither"


class ExtremalClass(str, Enum):
    """Shape of the full set of extremal L-initial systems."""

    C1_ONLY = "C1-only"
    C2_ONLY = "C2-only"
    BOTH = "both"
    OTHER = "other"

    @property
    def description(self) -> str:
        """Human-readable description for CLI output."""
        descriptions = {
            ExtremalClass.C1_ONLY: "the star construction is the unique maximizer",
            ExtremalClass.C2_ONLY: "the covering construction is the unique maximizer",
            ExtremalClass.BOTH: "both constructions tie and nothing else attains M",
            ExtremalClass.OTHER: "a maximizer outside the two constructions exists",
        }
        return descriptions[self]


class SearchMode(str, Enum):
    """Exhaustive search strategies."""

    NAIVE = "naive"
    SMART = "smart"


class CheckStatus(str, Enum):
    """Verdict of a verification check."""

    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class Suite(str, Enum):
    """Verification suites selectable from the CLI."""

    ALL = "all"
    PARITY = "parity"
    UNIMODALITY = "unimodality"
    FACTS = "facts"
    THEOREM = "theorem"


class ScanTarget(str, Enum):
    """Objective function scanned by ``scan``."""

    G = "g"
    F = "f"


class OutputFormat(str, Enum):
    """Table formats for ``scan``."""

    CSV = "csv"
    JSON = "json"


# =============================================================================
# Problem Instance
# =============================================================================


class Params(BaseModel):
    """
    A problem instance ``(n, k₁, …, k_t)``.

    Attributes
    ----------
    n : int
        Ground set size.
    ks : tuple[int, ...]
        Uniformities, nonincreasing, each within ``[1, n]``; at least two.

    Examples
    --------
    >>> Params(n=6, ks=(4, 3, 2)).t
    3
    >>> Params(n=6, ks=(2, 3))
    Traceback (most recent call last):
    ...
    pydantic_core._pydantic_core.ValidationError: ...
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1, description="Ground set size")
    ks: tuple[int, ...] = Field(
        min_length=2,
        description="Nonincreasing uniformities k1 >= ... >= kt",
    )

    @field_validator("ks")
    @classmethod
    def validate_ks(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        """Require positive, nonincreasing uniformities."""
        if any(k < 1 for k in v):
            msg = f"Uniformities must be positive, got {v}"
            raise ValueError(msg)
        if any(a < b for a, b in zip(v, v[1:], strict=False)):
            msg = f"Uniformities must be nonincreasing, got {v}"
            raise ValueError(msg)
        return v

    @model_validator(mode="after")
    def validate_fits(self) -> Params:
        """Every family must fit inside the ground set."""
        if self.ks[0] > self.n:
            msg = f"k1 = {self.ks[0]} exceeds n = {self.n}"
            raise ValueError(msg)
        return self

    @classmethod
    def parse(cls, n: int, ks: str) -> tuple[Params, bool]:
        """
        Build params from a comma list, sorting it nonincreasing.

        Returns
        -------
        tuple[Params, bool]
            The params and whether the list had to be reordered.
        """
        try:
            values = [int(token) for token in ks.split(",") if token.strip()]
        except ValueError:
            msg = f"Cannot parse uniformities from {ks!r}; expected e.g. '4,3,2'"
            raise ValueError(msg) from None
        ordered = sorted(values, reverse=True)
        return cls(n=n, ks=tuple(ordered)), ordered != values

    @property
    def t(self) -> int:
        """Number of families."""
        return len(self.ks)

    @property
    def k1(self) -> int:
        """Largest uniformity."""
        return self.ks[0]

    @property
    def kt(self) -> int:
        """Smallest uniformity."""
        return self.ks[-1]

    def k(self, i: int) -> int:
        """Uniformity of family ``i`` (1-based)."""
        return self.ks[i - 1]

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Deterministic ordering for sweep output."""
        return (self.n, self.ks)

    @property
    def classification(self) -> Classification:
        """Regime of this instance (see ``crossfam.families.classify``)."""
        from crossfam.families import classify

        return classify(self)

    def __str__(self) -> str:
        return f"({self.n}, ({','.join(map(str, self.ks))}))"


class SweepGrid(BaseModel):
    """
    Parameter ranges for a verification sweep.

    Every nonincreasing k-vector with ``t`` in ``t_values`` and entries in
    ``[kmin, kmax]`` is combined with every ``n`` in ``[k₁, nmax]``; the
    instance is kept when its regime is listed in ``regimes``.
    """

    t_values: tuple[int, ...] = Field(default=(3, 4), description="Family counts")
    kmin: int = Field(default=2, ge=1, description="Smallest allowed k_t")
    kmax: int = Field(default=5, ge=1, description="Largest allowed k_1")
    nmax: int = Field(default=12, ge=1, description="Largest ground set")
    regimes: tuple[Regime, ...] = Field(
        default=(Regime.MIXED,),
        description="Regimes to keep",
    )

    @field_validator("t_values")
    @classmethod
    def validate_t_values(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        """At least two families per instance."""
        if any(t < 2 for t in v):
            msg = f"Every t must be at least 2, got {v}"
            raise ValueError(msg)
        return v

    def iter_params(self) -> Iterator[Params]:
        """Yield the grid's instances sorted by ``(n, ks)``."""
        found: list[Params] = []
        for t in sorted(set(self.t_values)):
            for ks in combinations_with_replacement(range(self.kmax, self.kmin - 1, -1), t):
                for n in range(ks[0], self.nmax + 1):
                    params = Params(n=n, ks=ks)
                    if params.classification.regime in self.regimes:
                        found.append(params)
        yield from sorted(found, key=lambda p: p.sort_key)


# =============================================================================
# Results
# =============================================================================


class CheckVerdict(BaseModel):
    """
    Outcome of one verification check on one instance.

    Attributes
    ----------
    name : str
        Check identifier, e.g. ``"parity_lemma"``.
    params : Params | None
        The instance (``None`` for instance-free checks).
    status : CheckStatus
        ``fail`` whenever any case failed; ``skipped`` when no case applied.
    checked : int
        Cases evaluated.
    skipped : int
        Cases filtered out by side conditions.
    counterexample : dict | None
        Structured witness of the first failure; sets are rendered as
        comma-joined strings so the witness can be re-checked by hand.
    detail : str
        Short free-form note.
    """

    name: str
    params: Params | None = None
    status: CheckStatus
    checked: int = 0
    skipped: int = 0
    counterexample: dict[str, Any] | None = None
    detail: str = ""

    @model_validator(mode="after")
    def validate_witness(self) -> CheckVerdict:
        """A failure must carry its witness."""
        if self.status is CheckStatus.FAIL and self.counterexample is None:
            msg = f"Failed check {self.name!r} has no counterexample"
            raise ValueError(msg)
        return self

    @property
    def passed(self) -> bool:
        """True unless the check failed."""
        return self.status is not CheckStatus.FAIL


class Report(BaseModel):
    """
    Structured outcome of a computation, search or verification run.

    ``m_bruteforce`` differing from ``m_formula`` sets ``discrepancy``;
    the CLI maps that to exit code 1.
    """

    params: Params
    regime: Regime
    s: int | None = None
    lambda1: int | None = None
    lambda2: int | None = None
    m_formula: int | None = None
    m_bruteforce: int | None = None
    extremal_systems: list[list[str]] = Field(default_factory=list)
    classification: ExtremalClass | None = None
    checks: list[CheckVerdict] = Field(default_factory=list)
    discrepancy: bool = False
    timing: float | None = None

    @property
    def failed_checks(self) -> list[CheckVerdict]:
        """Checks with status ``fail``."""
        return [c for c in self.checks if c.status is CheckStatus.FAIL]


class SweepReport(BaseModel):
    """Aggregate of per-instance reports, sorted by params."""

    reports: list[Report] = Field(default_factory=list)

    @property
    def verdicts(self) -> list[CheckVerdict]:
        """All check verdicts in report order."""
        return [c for r in self.reports for c in r.checks]

    @property
    def pass_count(self) -> int:
        """Number of passing checks."""
        return sum(1 for c in self.verdicts if c.status is CheckStatus.PASS)

    @property
    def fail_count(self) -> int:
        """Number of failing checks."""
        return sum(1 for c in self.verdicts if c.status is CheckStatus.FAIL)

    @property
    def skipped_count(self) -> int:
        """Number of checks with nothing to check."""
        return sum(1 for c in self.verdicts if c.status is CheckStatus.SKIPPED)

    @property
    def discrepancy_count(self) -> int:
        """Instances where brute force disagrees with the formula."""
        return sum(1 for r in self.reports if r.discrepancy)

    @property
    def ok(self) -> bool:
        """No failed check and no discrepancy."""
        return self.fail_count == 0 and self.discrepancy_count == 0
