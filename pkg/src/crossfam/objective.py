"""
crossfam.objective - Closed Forms and Objective Functions
=========================================================

Everything here is computed from ranks; no family is enumerated.

- ``m_formula``: the closed-form maximum in the mixed and non-mixed regimes.
- ``g_mixed``: total size of the system determined by a member of 𝓕₂,₃.
- ``f_nonmixed`` / ``f_general``: total size of the system determined by
  the ID of the first family.
- ``alpha_beta`` / ``gamma_delta``: gains and losses between two first
  IDs, with the closed forms for consecutive IDs.

Example
-------
>>> from crossfam.lexset import KSet
>>> from crossfam.models import Params
>>> from crossfam.objective import g_mixed, m_formula
>>> params = Params(n=6, ks=(4, 3, 2))
>>> m_formula(params).m_formula
31
>>> g_mixed(params, KSet.of(6, [2, 3, 4]))
26
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from crossfam.errors import InvalidInputError, NotFoundError
from crossfam.families import (
    Bounds,
    construction1,
    construction2,
    f23_contains,
    in_bounds,
    require_regime,
    restore,
    ri_bounds,
)
from crossfam.lexset import KSet, binom, decompose, precedes, rank, rank_general
from crossfam.models import ConstructionMatch, Params, Regime
from crossfam.partner import corresponding_set, kpartner, parity_of, partner


logger = logging.getLogger(__name__)


# =============================================================================
# Value Types
# =============================================================================


@dataclass(frozen=True, slots=True)
class Objectives:
    """
    Closed-form quantities of an instance.

    In the non-mixed regime ``lambda2`` holds the size of the covering
    system ``C(n, k₁) - C(n-k_t, k₁) + Σ_{i≥2} C(n-k_t, kᵢ-k_t)``.
    """

    regime: Regime
    lambda1: int
    lambda2: int
    m_formula: int
    argmax: tuple[ConstructionMatch, ...]


@dataclass(frozen=True, slots=True)
class DiffPair:
    """Gain of the first family and loss of the others between two first IDs."""

    gain: int
    loss: int

    @property
    def delta(self) -> int:
        """``gain - loss``: the change of the objective."""
        return self.gain - self.loss


@dataclass(frozen=True, slots=True)
class GammaDelta:
    """
    Per-family gains ``alphas`` for ``i ≤ s``, their sum ``gamma`` and the loss
    ``delta`` of the families ``i > s``.
    """

    alphas: tuple[int, ...]
    gamma: int
    delta: int

    @property
    def change(self) -> int:
        """``gamma - delta``."""
        return self.gamma - self.delta


# =============================================================================
# Closed Forms
# =============================================================================


def covering_value(params: Params) -> int:
    """``C(n, k₁) - C(n-k_t, k₁) + Σ_{i≥2} C(n-k_t, kᵢ-k_t)``."""
    n, kt = params.n, params.kt
    return (
        binom(n, params.k1)
        - binom(n - kt, params.k1)
        + sum(binom(n - kt, k - kt) for k in params.ks[1:])
    )


def lambdas(params: Params) -> tuple[int, int]:
    """``(λ₁, λ₂)`` of the mixed regime."""
    require_regime(params, Regime.MIXED, what="lambdas")
    return construction1(params)[1], construction2(params)[1]


def m_formula(params: Params) -> Objectives:
    """
    Closed-form maximum of ``Σ |𝓐ᵢ|``.

    Mixed regime: ``max(λ₁, λ₂)``, with ``argmax`` naming the constructions
    that attain it. Non-mixed regime: the larger of the star value and the
    covering value.

    Raises
    ------
    InvalidInputError
        In any other regime.

    Examples
    --------
    >>> m_formula(Params(n=5, ks=(2, 2, 2))).m_formula
    12
    """
    found = require_regime(params, Regime.MIXED, Regime.NONMIXED, what="m_formula")
    if found.regime is Regime.MIXED:
        lambda1, lambda2 = lambdas(params)
    else:
        lambda1, lambda2 = construction1(params)[1], covering_value(params)
    best = max(lambda1, lambda2)
    argmax = tuple(
        match
        for match, value in ((ConstructionMatch.C1, lambda1), (ConstructionMatch.C2, lambda2))
        if value == best
    )
    return Objectives(found.regime, lambda1, lambda2, best, argmax)


# =============================================================================
# Non-mixed Objective
# =============================================================================


def _first_id(params: Params, r: KSet) -> KSet:
    r = restore(params.n, r)
    if len(r) != params.k1:
        msg = f"Expected a {params.k1}-set for the first family, got {{{r}}}"
        raise InvalidInputError(msg)
    return r


def f_nonmixed(params: Params, r: KSet) -> int:
    """
    ``|𝓛(R, k₁)| + Σ_{j≥2} rank_general(partner(R), k_j)``.

    ``r`` may be given truncated (over ``[n-j]``); the suffix is re-attached.

    Raises
    ------
    InvalidInputError
        Outside the non-mixed regime, or when ``𝓛(R, k₁)`` does not contain
        every k₁-set through 1.

    Examples
    --------
    >>> f_nonmixed(Params(n=5, ks=(2, 2, 2)), KSet.of(5, [2, 4]))
    8
    """
    require_regime(params, Regime.NONMIXED, what="f_nonmixed")
    n = params.n
    r = _first_id(params, r)
    r_rank = rank(n, params.k1, r)
    if r_rank < binom(n - 1, params.k1 - 1):
        msg = f"{{{r}}} precedes the star ID of size {params.k1}"
        raise InvalidInputError(msg)
    h = partner(n, r)
    return r_rank + sum(rank_general(n, k, h) for k in params.ks[1:])


def alpha_beta(params: Params, r: KSet, r2: KSet) -> DiffPair:
    """
    Gain ``α = |𝓛(r2)| - |𝓛(r)|`` and loss ``β`` of the other families.

    Requires ``r ⪯ r2``; ``f_nonmixed(r2) - f_nonmixed(r) == α - β``.
    """
    require_regime(params, Regime.NONMIXED, what="alpha_beta")
    n = params.n
    r, r2 = _first_id(params, r), _first_id(params, r2)
    if not precedes(r, r2):
        msg = f"alpha_beta needs r <= r2, got {{{r}}} after {{{r2}}}"
        raise InvalidInputError(msg)
    gain = rank(n, params.k1, r2) - rank(n, params.k1, r)
    h, h2 = partner(n, r), partner(n, r2)
    loss = sum(rank_general(n, k, h) - rank_general(n, k, h2) for k in params.ks[1:])
    return DiffPair(gain, loss)


def beta_consecutive(params: Params, g: KSet) -> int:
    """
    Loss ``β`` between ``g`` and its predecessor, in closed form.

    With ``q = max g`` this is ``Σ_{j≥2} C(n-q, k_j - (q-k₁))``.
    """
    n, q = params.n, g.max_element
    return sum(binom(n - q, k - (q - params.k1)) for k in params.ks[1:])


# =============================================================================
# Mixed Objective
# =============================================================================


def g_mixed(params: Params, g2: KSet) -> int:
    """
    Total size of the system determined by a member ``g2`` of 𝓕₂,₃.

    The first ID is the k₁-parity of ``g2``; every later ID is the
    kᵢ-partner of ``g2``. ``g2`` may be given truncated.

    Raises
    ------
    InvalidInputError
        Outside the mixed regime, or if ``g2`` is not in 𝓕₂,₃.
    """
    require_regime(params, Regime.MIXED, what="g_mixed")
    n = params.n
    g2 = restore(n, g2)
    member, _ = f23_contains(params, g2)
    if not member:
        msg = f"{{{g2}}} is not a member of F(2,3) for {params}"
        raise InvalidInputError(msg)
    g1 = parity_of(n, g2, params.k1)
    assert g1 is not None, f"{{{g2}}} has no {params.k1}-parity"
    total = rank(n, params.k1, g1) + rank(n, params.k(2), g2)
    for k in params.ks[2:]:
        total += rank(n, k, kpartner(n, g2, k).value)
    return total


# =============================================================================
# General Objective
# =============================================================================


def s_prime(params: Params, s: int) -> int:
    """Number of ``i ∈ [s]`` with ``kᵢ = k₁``."""
    return sum(1 for k in params.ks[:s] if k == params.k1)


def check_s(params: Params, s: int) -> None:
    """
    Validate ``s`` for ``f_general``.

    Requires ``1 ≤ s < t``, ``k₁ + k_{s+1} ≤ n`` and, for ``s ≥ 2``,
    ``n < k_{s-1} + k_s``.
    """
    n = params.n
    if not 1 <= s < params.t:
        msg = f"s must lie in [1, {params.t - 1}], got {s}"
        raise InvalidInputError(msg)
    if params.k1 + params.k(s + 1) > n:
        msg = f"s = {s} needs k1 + k{s + 1} <= n for {params}"
        raise InvalidInputError(msg)
    if s >= 2 and n >= params.k(s - 1) + params.k(s):
        msg = f"s = {s} needs n < k{s - 1} + k{s} for {params}"
        raise InvalidInputError(msg)


def f_range(params: Params, s: int) -> Bounds:
    """Lex range of first IDs scanned by ``f_general``."""
    check_s(params, s)
    return ri_bounds(params, 1, s)


def _corr_rank(n: int, r1: KSet, k: int) -> int:
    try:
        return rank(n, k, corresponding_set(n, r1, k))
    except NotFoundError as e:
        msg = f"{{{r1}}} has no corresponding {k}-set"
        raise AssertionError(msg) from e


def _partner_rank(n: int, r1: KSet, k: int) -> int:
    try:
        return rank(n, k, kpartner(n, r1, k).value)
    except NotFoundError:
        return 0


def f_general(params: Params, s: int, r1: KSet) -> int:
    """
    Total size of the system determined by the first ID ``r1``.

    Families ``i ≤ s`` take the corresponding kᵢ-set of ``r1``; families
    ``i > s`` take its kᵢ-partner.

    Parameters
    ----------
    params : Params
        The instance.
    s : int
        Number of families that cross-intersect the first family for free
        (counting itself); see ``check_s``.
    r1 : KSet
        A k₁-set inside ``f_range``, possibly truncated.

    Examples
    --------
    >>> f_general(Params(n=6, ks=(4, 3, 2)), 2, KSet.of(6, [2, 4, 5, 6]))
    31
    """
    lo_hi = f_range(params, s)
    n = params.n
    r1 = _first_id(params, r1)
    if not in_bounds(r1, lo_hi):
        lo, hi = lo_hi
        msg = f"{{{r1}}} is outside the first range [{{{lo}}}, {{{hi}}}]"
        raise InvalidInputError(msg)
    head = sum(_corr_rank(n, r1, k) for k in params.ks[:s])
    return head + sum(_partner_rank(n, r1, k) for k in params.ks[s:])


def gamma_delta(params: Params, s: int, r1: KSet, r1b: KSet) -> GammaDelta:
    """
    Gains ``αᵢ`` (``i ≤ s``) and loss ``δ`` between first IDs ``r1 ⪯ r1b``.

    ``f_general(r1b) - f_general(r1) == gamma - delta``.
    """
    check_s(params, s)
    n = params.n
    r1, r1b = _first_id(params, r1), _first_id(params, r1b)
    if not precedes(r1, r1b):
        msg = f"gamma_delta needs r1 <= r1b, got {{{r1}}} after {{{r1b}}}"
        raise InvalidInputError(msg)
    alphas = tuple(_corr_rank(n, r1b, k) - _corr_rank(n, r1, k) for k in params.ks[:s])
    delta = sum(_partner_rank(n, r1, k) - _partner_rank(n, r1b, k) for k in params.ks[s:])
    return GammaDelta(alphas, sum(alphas), delta)


def alpha_consecutive(params: Params, r1b: KSet, ki: int) -> int:
    """
    Closed form of ``αᵢ`` when ``r1b`` directly follows the previous first ID.

    Equals ``C(ℓ(r1b), kᵢ - |core(r1b)|)``.
    """
    ell, _, core = decompose(params.n, r1b)
    return binom(ell, ki - len(core))


def objective(params: Params, r1: KSet, s: int | None = None) -> int:
    """
    The first-ID objective of the instance's regime.

    ``f_nonmixed`` in the non-mixed regime (when ``s`` is omitted or 1),
    ``f_general`` with the regime's ``s`` otherwise.
    """
    found = require_regime(
        params, Regime.NONMIXED, Regime.MIXED, Regime.GENERAL_S, what="objective"
    )
    s = found.s if s is None else s
    if found.regime is Regime.NONMIXED and s == 1:
        return f_nonmixed(params, r1)
    assert s is not None
    return f_general(params, s, r1)


def objective_range(params: Params, s: int | None = None) -> Bounds:
    """Range of first IDs ``objective`` accepts."""
    found = require_regime(
        params, Regime.NONMIXED, Regime.MIXED, Regime.GENERAL_S, what="objective_range"
    )
    s = found.s if s is None else s
    assert s is not None
    return f_range(params, s)
