"""
pytest configuration and shared fixtures for crossfam tests.

Fixtures
--------
mixed : Params
    ``(6, (4,3,2))``, the smallest mixed instance with ``k₁ > k₂``.

nonmixed : Params
    ``(5, (2,2,2))``, a non-mixed instance with three equal uniformities.

settings : Settings
    Sequential settings with a small random sample count.

Strategies
----------
``ksets`` draws a nonempty subset of ``[n]`` for hypothesis tests.
"""

from __future__ import annotations

import pytest
from hypothesis import strategies as st

from crossfam.config import Settings
from crossfam.lexset import KSet
from crossfam.models import Params


@pytest.fixture
def mixed() -> Params:
    """
    The mixed instance ``(6, (4,3,2))``.

    Returns
    -------
    Params
        ``λ₁ = 25``, ``λ₂ = 31`` and ``M = 31``.
    """
    return Params(n=6, ks=(4, 3, 2))


@pytest.fixture
def nonmixed() -> Params:
    """
    The non-mixed instance ``(5, (2,2,2))``.

    Returns
    -------
    Params
        ``M = 12``, attained by the star construction.
    """
    return Params(n=5, ks=(2, 2, 2))


@pytest.fixture
def settings() -> Settings:
    """
    Sequential settings for fast, deterministic tests.

    Returns
    -------
    Settings
        One worker, 50 random samples, seed 0.
    """
    return Settings(threads=1, random_samples=50)


def kset(n: int, *items: int) -> KSet:
    """Shorthand for ``KSet.of(n, items)``."""
    return KSet.of(n, items)


@st.composite
def ksets(draw: st.DrawFn, n: int, size: int | None = None) -> KSet:
    """A nonempty subset of ``[n]``, of the given size when ``size`` is set."""
    k = draw(st.integers(1, n)) if size is None else size
    items = draw(st.lists(st.integers(1, n), min_size=k, max_size=k, unique=True))
    return KSet.of(n, items)
