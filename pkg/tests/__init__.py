"""
crossfam test suite
===================

Test Modules
------------
- test_lexset.py: KSet, lex order, rank and unrank
- test_partner.py: partners, k-partners, parity and cross-intersection
- test_families.py: regimes, constructions, ranges and F(2,3)
- test_objective.py: closed forms and objective functions
- test_search.py: exhaustive search, scans and constrained optima
- test_verify.py: verification checks and sweeps
- test_models.py: Pydantic models
- test_config.py: settings loading
- test_report.py: Markdown reports and scan tables
- test_cli.py: command-line interface

Running Tests
-------------
    # Run all tests
    pytest

    # Skip the slower exhaustive checks
    pytest -m "not slow"

    # Run specific test class
    pytest tests/test_objective.py::TestGMixed
"""
