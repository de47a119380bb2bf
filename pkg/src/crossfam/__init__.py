"""
crossfam - Sums of Cross-Intersecting Uniform Families
======================================================

Computes and verifies the maximum of ``|𝓐₁| + … + |𝓐_t|`` over
non-empty, pairwise cross-intersecting families ``𝓐ᵢ ⊆ C([n], kᵢ)``.

Every family is handled in L-initial form: the family of the first
``r`` k-sets in lex order, represented by its last member (its ID). Sizes
come from binomial sums, so closed forms, objective scans and exhaustive
searches all work on IDs instead of materialized families.

Quick Start
-----------
```bash
# Closed form and constructions for one instance
crossfam compute -n 6 -k 4,3,2

# Exhaustive search with the extremal systems
crossfam search -n 6 -k 4,3,2 --list-extremal

# Verification sweep with a Markdown report
crossfam verify --suite all --sweep --t 3 --nmax 9 --report sweep.md
```

Example
-------
>>> from crossfam import Params, brute_force_M, m_formula
>>> params = Params(n=6, ks=(4, 3, 2))
>>> m_formula(params).m_formula == brute_force_M(params).max_sum == 31
True

Architecture
------------
The package is organized into these main modules:

- ``lexset``: the KSet type, lex order, rank and unrank
- ``partner``: partners, k-partners, parity and cross-intersection tests
- ``families``: regimes, constructions, ranges and the family 𝓕₂,₃
- ``objective``: closed forms and the objectives g and f
- ``search``: exhaustive search, scans and constrained optima
- ``verify``: the verification harness and sweeps
- ``report``: Markdown reports and scan tables
- ``cli``: Typer-based command line interface
- ``models``: Pydantic models and enumerations
- ``config``: runtime settings
- ``errors``: exception hierarchy

License
-------
MIT License - see LICENSE file for details.
"""

# =============================================================================
# Package Metadata
# =============================================================================
__version__ = "0.1.0"
__license__ = "MIT"

# =============================================================================
# Public API Exports
# =============================================================================

from crossfam.config import Settings
from crossfam.errors import CrossfamError, InvalidInputError, NotFoundError, SizeGuardError
from crossfam.families import SystemIds, classify, construction1, construction2
from crossfam.lexset import KSet, rank, rank_general, unrank
from crossfam.models import Params, Regime, Report, SweepGrid
from crossfam.objective import f_general, f_nonmixed, g_mixed, m_formula
from crossfam.partner import cross_lex, kpartner, max_cross_id, parity_of, partner
from crossfam.search import brute_force_M, constrained_best, scan
from crossfam.verify import instance_report, run_sweep


__all__ = [
    "CrossfamError",
    "InvalidInputError",
    "KSet",
    "NotFoundError",
    "Params",
    "Regime",
    "Report",
    "Settings",
    "SizeGuardError",
    "SweepGrid",
    "SystemIds",
    "__version__",
    "brute_force_M",
    "classify",
    "constrained_best",
    "construction1",
    "construction2",
    "cross_lex",
    "f_general",
    "f_nonmixed",
    "g_mixed",
    "instance_report",
    "kpartner",
    "m_formula",
    "max_cross_id",
    "parity_of",
    "partner",
    "rank",
    "rank_general",
    "run_sweep",
    "scan",
    "unrank",
]
