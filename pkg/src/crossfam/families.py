"""
crossfam.families - L-initial Families, Ranges and Constructions
================================================================

Families are handled through their IDs: ``𝓛(R, k)`` is the set of k-sets
``F ⪯ R`` and is never materialized unless a caller asks for members.

Contents
--------
- ``classify``: the parameter regime of an instance.
- ``construction1`` / ``construction2``: the star and covering systems and
  their sizes λ₁ and λ₂.
- ``ri_bounds``: the lex range each extremal ID must lie in.
- ``f23_contains`` / ``f23_iter`` / ``f23_level``: the family 𝓕₂,₃ of
  IDs in the second range that pair maximally with a third-range ID, and
  its truncation levels.
- ``maximal_pair_family`` / ``f13_iter``: the same idea for any sizes.
- ``closure_successors`` / ``boundary_chains``: members of 𝓕₂,₃ derived
  from other members or listed in closed form.

Example
-------
>>> from crossfam.families import classify, construction2, f23_iter
>>> from crossfam.models import Params
>>> params = Params(n=6, ks=(4, 3, 2))
>>> classify(params).regime.value
'mixed'
>>> construction2(params)[1]
31
>>> [str(r) for r in f23_iter(params)]
['1,5,6', '2,3,4', '2,3,6', '2,5,6']
"""

from __future__ import annotations

import logging
from collections.abc import Iterator
from dataclasses import dataclass
from typing import NamedTuple

from crossfam.errors import InvalidInputError
from crossfam.lexset import (
    DEFAULT_MEMBER_CAP,
    KSet,
    binom,
    core_of,
    decompose,
    first_kset,
    iter_ksets,
    members,
    precedes,
    rank,
)
from crossfam.models import ConstructionMatch, Params, Regime
from crossfam.partner import cross_lex, is_maximal_pair, partner


logger = logging.getLogger(__name__)

Bounds = tuple[KSet, KSet]


# =============================================================================
# Value Types
# =============================================================================


@dataclass(frozen=True, slots=True)
class Classification:
    """
    Regime of an instance plus its index ``s``.

    ``s`` is 1 for the non-mixed regime, 2 for the mixed regime, the
    matching index for ``general_s`` and ``None`` otherwise.
    """

    regime: Regime
    s: int | None = None


@dataclass(frozen=True, slots=True)
class LFamily:
    """
    The L-initial family ``𝓛(id, k)`` over ``[n]``, kept virtual.

    Examples
    --------
    >>> fam = LFamily(6, 2, KSet.of(6, [1, 6]))
    >>> fam.size
    5
    >>> KSet.of(6, [1, 3]) in fam
    True
    """

    n: int
    k: int
    id: KSet

    def __post_init__(self) -> None:
        if self.id.n != self.n or len(self.id) != self.k:
            msg = f"ID {{{self.id}}} is not a {self.k}-subset of [{self.n}]"
            raise InvalidInputError(msg)

    @property
    def size(self) -> int:
        """Number of members, computed by ranking the ID."""
        return rank(self.n, self.k, self.id)

    def members(self, cap: int = DEFAULT_MEMBER_CAP) -> list[KSet]:
        """Materialize the family (refuses beyond ``cap`` members)."""
        return members(self.n, self.k, self.id, cap)

    def __contains__(self, f: object) -> bool:
        return isinstance(f, KSet) and len(f) == self.k and precedes(f, self.id)


@dataclass(frozen=True, slots=True)
class SystemIds:
    """
    One ID per family: a candidate cross-intersecting system in L-initial form.

    Attributes
    ----------
    params : Params
        The instance.
    ids : tuple[KSet, ...]
        ``ids[i-1]`` is the ID of family ``i`` and has size ``kᵢ``.
    """

    params: Params
    ids: tuple[KSet, ...]

    def __post_init__(self) -> None:
        params = self.params
        if len(self.ids) != params.t:
            msg = f"Expected {params.t} IDs for {params}, got {len(self.ids)}"
            raise InvalidInputError(msg)
        for i, (k, r) in enumerate(zip(params.ks, self.ids, strict=True), start=1):
            if r.n != params.n or len(r) != k:
                msg = f"ID {i} of {params} must be a {k}-subset of [{params.n}], got {{{r}}}"
                raise InvalidInputError(msg)

    @property
    def families(self) -> tuple[LFamily, ...]:
        """The families the IDs stand for."""
        return tuple(LFamily(self.params.n, len(r), r) for r in self.ids)

    @property
    def sizes(self) -> tuple[int, ...]:
        """Family sizes."""
        return tuple(f.size for f in self.families)

    @property
    def total(self) -> int:
        """Sum of the family sizes."""
        return sum(self.sizes)

    def replace(self, i: int, r: KSet) -> SystemIds:
        """A copy with the ID of family ``i`` (1-based) replaced."""
        ids = list(self.ids)
        ids[i - 1] = r
        return SystemIds(self.params, tuple(ids))

    def as_strings(self) -> list[str]:
        """IDs in their comma-joined form."""
        return [str(r) for r in self.ids]

    def __str__(self) -> str:
        return "(" + ", ".join(f"{{{r}}}" for r in self.ids) + ")"


class ClosureImages(NamedTuple):
    """Images of a member of 𝓕₂,₃ under the two closure moves (``None`` if undefined)."""

    drop_last_core: KSet | None
    shift_last_core: KSet | None


# =============================================================================
# Regimes and Constructions
# =============================================================================


def classify(params: Params) -> Classification:
    """
    Regime of an instance.

    Tests run in order: free (``n < k₁ + k_t``), non-mixed (``n ≥ k₁ + k₂``),
    mixed (``t ≥ 3`` and ``k₁ + k₃ ≤ n``), then ``general_s`` for the first
    ``s ∈ [3, t-1]`` with ``k₁ + k_{s+1} ≤ n < k_{s-1} + k_s``.

    Examples
    --------
    >>> classify(Params(n=6, ks=(4, 3, 2)))
    Classification(regime=<Regime.MIXED: 'mixed'>, s=2)
    >>> classify(Params(n=4, ks=(3, 2, 2))).regime
    <Regime.FREE: 'free'>
    """
    n, ks = params.n, params.ks
    if n < ks[0] + ks[-1]:
        return Classification(Regime.FREE)
    if n >= ks[0] + ks[1]:
        return Classification(Regime.NONMIXED, 1)
    if params.t >= 3 and ks[0] + ks[2] <= n:
        return Classification(Regime.MIXED, 2)
    for s in range(3, params.t):
        if ks[0] + ks[s] <= n < ks[s - 2] + ks[s - 1]:
            return Classification(Regime.GENERAL_S, s)
    return Classification(Regime.UNSUPPORTED)


def require_regime(params: Params, *regimes: Regime, what: str) -> Classification:
    """Return the classification, raising ``InvalidInputError`` outside ``regimes``."""
    found = classify(params)
    if found.regime not in regimes:
        wanted = " or ".join(r.value for r in regimes)
        msg = f"{what} needs the {wanted} regime; {params} is {found.regime.value}"
        raise InvalidInputError(msg)
    return found


def star_id(n: int, k: int) -> KSet:
    """``{1, n-k+2, …, n}``: the ID of the k-sets containing 1."""
    return KSet(n, (1, *range(n - k + 2, n + 1)))


def _meet_id(n: int, k: int, kt: int) -> KSet:
    # ID of the k-sets meeting [kt]
    return KSet(n, (kt, *range(n - k + 2, n + 1)))


def _cover_id(n: int, k: int, kt: int) -> KSet:
    # ID of the k-sets containing [kt]
    return KSet(n, (*range(1, kt + 1), *range(n - k + kt + 1, n + 1)))


def construction1(params: Params) -> tuple[SystemIds, int]:
    """
    The star system: every family consists of the sets containing 1.

    Returns
    -------
    tuple[SystemIds, int]
        The IDs ``{1, n-kᵢ+2, …, n}`` and ``λ₁ = Σ C(n-1, kᵢ-1)``.

    Raises
    ------
    InvalidInputError
        If ``n < k₁ + 1``.
    """
    n = params.n
    if n < params.k1 + 1:
        msg = f"The star construction needs n >= k1 + 1, got {params}"
        raise InvalidInputError(msg)
    ids = tuple(star_id(n, k) for k in params.ks)
    lambda1 = sum(binom(n - 1, k - 1) for k in params.ks)
    return SystemIds(params, ids), lambda1


def construction2(params: Params) -> tuple[SystemIds, int]:
    """
    The covering system of the mixed regime.

    Families 1 and 2 take every set meeting ``[k_t]``; every later family
    takes the sets containing ``[k_t]``.

    Raises
    ------
    InvalidInputError
        Outside the mixed regime.
    """
    require_regime(params, Regime.MIXED, what="construction2")
    n, kt = params.n, params.kt
    ids = tuple(
        _meet_id(n, k, kt) if i <= 2 else _cover_id(n, k, kt)
        for i, k in enumerate(params.ks, start=1)
    )
    lambda2 = sum(binom(n, k) - binom(n - kt, k) for k in params.ks[:2]) + sum(
        binom(n - kt, k - kt) for k in params.ks[2:]
    )
    return SystemIds(params, ids), lambda2


def ri_bounds(params: Params, i: int, s: int | None = None) -> Bounds:
    """
    Lex range ``(lo, hi)`` the ID of family ``i`` lies in for extremal systems.

    Without ``s`` these are the mixed-regime ranges: families 1 and 2 run
    from the star ID to the ID of the sets meeting ``[k_t]``; later families
    run from the ID of the sets containing ``[k_t]`` up to the star ID.

    With ``s`` the general ranges apply: families ``i ≤ s`` as above, and
    families ``i > s`` range over the block of sets containing ``[k_t]``.

    Examples
    --------
    >>> params = Params(n=6, ks=(4, 3, 2))
    >>> [str(b) for b in ri_bounds(params, 3)]
    ['1,2', '1,6']
    """
    if not 1 <= i <= params.t:
        msg = f"Family index must lie in [1, {params.t}], got {i}"
        raise InvalidInputError(msg)
    if s is not None and not 1 <= s < params.t:
        msg = f"s must lie in [1, {params.t - 1}], got {s}"
        raise InvalidInputError(msg)
    n, ki, kt = params.n, params.k(i), params.kt
    split = 2 if s is None else s
    if i <= split:
        return star_id(n, ki), _meet_id(n, ki, kt)
    if s is None:
        return _cover_id(n, ki, kt), star_id(n, ki)
    return first_kset(n, ki), _cover_id(n, ki, kt)


def in_bounds(r: KSet, bounds: Bounds) -> bool:
    """``lo ⪯ r ⪯ hi``."""
    lo, hi = bounds
    return precedes(lo, r) and precedes(r, hi)


def from_core(n: int, k: int, core: KSet) -> KSet | None:
    """
    The k-set with the given core: ``core`` plus the tail ``[n-k+|core|+1, n]``.

    Returns ``None`` when ``core`` is too large or would merge into the tail.

    Examples
    --------
    >>> str(from_core(6, 3, KSet.of(6, [2, 3])))
    '2,3,6'
    """
    pad = k - len(core)
    if pad < 0 or core.max_element >= n - pad:
        return None
    return KSet(n, core.elements + tuple(range(n - pad + 1, n + 1)))


# =============================================================================
# Maximal Pairs
# =============================================================================


def maximal_partner(n: int, a: KSet, b: int) -> KSet | None:
    """
    The b-set ``B`` making ``(a, B)`` a maximal pair, or ``None``.

    ``B`` is forced: its core has to be the partner of ``core(a)`` and its
    tail fills it up to size ``b``.
    """
    core = core_of(n, a)
    if not core:
        return None
    t_set = partner(n, core)
    return from_core(n, b, t_set)


def maximal_pair_family(
    n: int,
    a: int,
    b: int,
    bounds: Bounds,
    partner_bounds: Bounds | None = None,
) -> list[tuple[KSet, KSet]]:
    """
    All maximal pairs ``(A, B)`` with ``A`` an a-set inside ``bounds``.

    Parameters
    ----------
    n, a, b : int
        Ground set size and the two uniformities (``a + b ≤ n``).
    bounds : tuple[KSet, KSet]
        Lex range for ``A``.
    partner_bounds : tuple[KSet, KSet] | None
        When given, only pairs whose ``B`` lies in this range are kept.

    Returns
    -------
    list[tuple[KSet, KSet]]
        Pairs in lex order of ``A``; every ``A`` has at most one ``B``.
    """
    if a + b > n:
        msg = f"Maximal pairs need a + b <= n, got {a} + {b} > {n}"
        raise InvalidInputError(msg)
    lo, hi = bounds
    pairs: list[tuple[KSet, KSet]] = []
    for first in iter_ksets(n, a, lo, hi):
        second = maximal_partner(n, first, b)
        if second is None:
            continue
        if partner_bounds is not None and not in_bounds(second, partner_bounds):
            continue
        assert is_maximal_pair(n, first, second), (first, second)
        pairs.append((first, second))
    return pairs


# =============================================================================
# The Family F(2,3)
# =============================================================================


def f23_contains(params: Params, r: KSet) -> tuple[bool, KSet | None]:
    """
    Membership of ``r`` in 𝓕₂,₃, with the third-range witness on success.

    ``r`` is a member when it lies in the second range and pairs maximally
    with a k₃-set inside the third range. That witness is the partner of
    ``core(r)`` padded with a maximal tail.

    Examples
    --------
    >>> params = Params(n=6, ks=(4, 3, 2))
    >>> ok, witness = f23_contains(params, KSet.of(6, [2, 5, 6]))
    >>> ok, str(witness)
    (True, '1,2')
    >>> f23_contains(params, KSet.of(6, [3, 4, 5]))
    (False, None)
    """
    require_regime(params, Regime.MIXED, what="f23_contains")
    n, k2, k3 = params.n, params.k(2), params.k(3)
    if r.n != n or len(r) != k2:
        msg = f"f23_contains expects a {k2}-subset of [{n}], got {{{r}}}"
        raise InvalidInputError(msg)
    if not in_bounds(r, ri_bounds(params, 2)):
        return False, None
    witness = maximal_partner(n, r, k3)
    if witness is None or not in_bounds(witness, ri_bounds(params, 3)):
        return False, None
    return True, witness


def f23_iter(params: Params) -> Iterator[KSet]:
    """Yield the members of 𝓕₂,₃ in lex order."""
    lo, hi = ri_bounds(params, 2)
    for r in iter_ksets(params.n, params.k(2), lo, hi):
        if f23_contains(params, r)[0]:
            yield r


def f23_witnesses(params: Params) -> list[tuple[KSet, KSet]]:
    """Members of 𝓕₂,₃ paired with their witnesses (the family 𝓕₃²)."""
    pairs: list[tuple[KSet, KSet]] = []
    for r in f23_iter(params):
        _, witness = f23_contains(params, r)
        assert witness is not None
        pairs.append((r, witness))
    return pairs


def has_suffix(r: KSet, j: int) -> bool:
    """Whether ``r`` contains ``[n-j+1, n]``."""
    n = r.n
    return j == 0 or r.elements[-j:] == tuple(range(n - j + 1, n + 1))


def truncate(r: KSet, j: int) -> KSet:
    """``r ∖ [n-j+1, n]`` as a set over ``[n-j]`` (``r`` must contain the suffix)."""
    if not has_suffix(r, j):
        msg = f"{{{r}}} does not contain [{r.n - j + 1}, {r.n}]"
        raise InvalidInputError(msg)
    return KSet(r.n - j, r.elements[: len(r) - j])


def restore(n: int, r: KSet) -> KSet:
    """Re-attach the suffix ``[r.n + 1, n]`` to a truncated set."""
    if r.n == n:
        return r
    if r.n > n:
        msg = f"Cannot restore a set over [{r.n}] to [{n}]"
        raise InvalidInputError(msg)
    return KSet(n, r.elements + tuple(range(r.n + 1, n + 1)))


def f23_level(params: Params, j: int) -> list[KSet]:
    """
    Level ``j`` of 𝓕₂,₃: members containing ``[n-j+1, n]`` with that suffix removed.

    The results are sets over ``[n-j]``.

    Raises
    ------
    InvalidInputError
        If ``j`` is outside ``[0, k₂-1]``.
    """
    k2 = params.k(2)
    if not 0 <= j <= k2 - 1:
        msg = f"Level must lie in [0, {k2 - 1}], got {j}"
        raise InvalidInputError(msg)
    return [truncate(r, j) for r in f23_iter(params) if has_suffix(r, j)]


def f13_iter(params: Params) -> Iterator[KSet]:
    """
    Yield the members of 𝓕'₁,₃ in lex order.

    These are the first-range IDs whose maximal k₃-partner is one of the
    witnesses of 𝓕₂,₃.
    """
    witnesses = {w for _, w in f23_witnesses(params)}
    pairs = maximal_pair_family(
        params.n,
        params.k1,
        params.k(3),
        ri_bounds(params, 1),
        partner_bounds=ri_bounds(params, 3),
    )
    for first, second in pairs:
        if second in witnesses:
            yield first


# =============================================================================
# Closure Moves and Boundary Chains
# =============================================================================


def closure_successors(params: Params, a: KSet) -> ClosureImages:
    """
    The two closure images of a k₂-set ``a`` with tail length ``p``.

    - ``drop_last_core``: remove the last core element and extend the tail
      to ``[n-p, n]``.
    - ``shift_last_core``: for ``p ≥ 1`` and ``a`` past the star ID, raise
      the last core element by one and shorten the tail by one.

    Either image is ``None`` when its move is undefined.
    """
    n = params.n
    p, _, core = decompose(n, a)
    if not core:
        return ClosureImages(None, None)
    dropped = KSet(n, core.elements[:-1] + tuple(range(n - p, n + 1)))
    shifted: KSet | None = None
    lo2 = star_id(n, params.k(2))
    if p >= 1 and precedes(lo2, a) and a != lo2:
        x = core.max_element
        shifted = KSet(n, (*core.elements, x + 1, *range(n - p + 2, n + 1)))
    return ClosureImages(dropped, shifted)


def boundary_chains(params: Params) -> list[KSet]:
    """
    The members of 𝓕₂,₃ listed in closed form, without repeats.

    These are the star ID, ``[2, k₂+1]``, ``[k_t, k_t+k₂-1]``, the ID
    ``{k_t, n-k₂+2, …, n}``, and the two chains obtained from ``[2, k₂]``
    and ``[k_t, k_t+k₂-2]`` by trading the top core element for a longer
    tail one step at a time.
    """
    n, k2, kt = params.n, params.k(2), params.kt
    listed = [
        star_id(n, k2),
        KSet.interval(n, 2, k2 + 1),
        KSet.interval(n, kt, kt + k2 - 1),
        _meet_id(n, k2, kt),
    ]
    for start in (2, kt):
        for p in range(1, k2):
            listed.append(KSet(n, (*range(start, start + k2 - p), *range(n - p + 1, n + 1))))
    return list(dict.fromkeys(listed))


# =============================================================================
# Systems
# =============================================================================


def system_feasible(system: SystemIds) -> bool:
    """Pairwise ``cross_lex`` for every pair of families that is not free."""
    n, ks = system.params.n, system.params.ks
    ids = system.ids
    for i in range(len(ids)):
        for j in range(i + 1, len(ids)):
            if n >= ks[i] + ks[j] and not cross_lex(n, ids[i], ids[j]):
                return False
    return True


def matches_construction(system: SystemIds) -> ConstructionMatch:
    """
    Compare an ID tuple with the two constructions of the mixed regime.

    The constructions coincide when ``k_t = 1``; a tuple equal to both
    reports ``BOTH``.
    """
    star, _ = construction1(system.params)
    cover, _ = construction2(system.params)
    is_star = system.ids == star.ids
    is_cover = system.ids == cover.ids
    if is_star and is_cover:
        return ConstructionMatch.BOTH
    if is_star:
        return ConstructionMatch.C1
    if is_cover:
        return ConstructionMatch.C2
    return ConstructionMatch.NEITHER
