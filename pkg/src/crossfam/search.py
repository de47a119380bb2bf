"""
crossfam.search - Exhaustive Search Over L-initial Systems
==========================================================

Brute-force maxima that the closed forms are checked against, plus
objective scans and constrained optima.

Architecture
------------
Both search modes split their outer loop into shards and fold partial
results with ``_Partial.merge``::

    brute_force_M
    ├── naive: shard over I₁, depth-first over I₂ … I_t, pairwise cross_lex
    └── smart: shard over I₂, loop over I₁, derive I₃ … I_t
        └── Iᵢ = lex-min over j ∈ {1, 2} of max_cross_id(Iⱼ, kᵢ)

Shards run in a ``ProcessPoolExecutor`` only when ``Settings.threads > 1``
and the work exceeds ``Settings.parallel_threshold``; shards carry plain
tuples so they pickle cheaply.

See Also
--------
crossfam.objective : closed forms the search results are compared with.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import reduce
from itertools import repeat
from math import prod

from crossfam.config import Settings
from crossfam.errors import InvalidInputError, NotFoundError, SizeGuardError
from crossfam.families import (
    SystemIds,
    construction1,
    construction2,
    f23_iter,
    matches_construction,
    require_regime,
    system_feasible,
)
from crossfam.lexset import (
    DEFAULT_MEMBER_CAP,
    Direction,
    KSet,
    binom,
    iter_ksets,
    members,
    precedes,
    rank,
    step,
)
from crossfam.models import ConstructionMatch, ExtremalClass, Params, Regime, ScanTarget, SearchMode
from crossfam.objective import g_mixed, objective, objective_range
from crossfam.partner import cross_lex, max_cross_id


logger = logging.getLogger(__name__)

Elements = tuple[int, ...]

SHARDS_PER_WORKER = 4


# =============================================================================
# Result Types
# =============================================================================


@dataclass(frozen=True, slots=True)
class SearchResult:
    """
    Outcome of ``brute_force_M``.

    Attributes
    ----------
    max_sum : int
        The maximum of ``Σ |𝓛(Iᵢ, kᵢ)|`` over feasible systems.
    extremal : tuple[SystemIds, ...]
        Every system attaining it, sorted by IDs.
    evaluated : int
        Complete tuples (naive) or ``(I₁, I₂)`` pairs (smart) examined.
    mode : SearchMode
        Strategy used.
    skipped : int
        Smart mode only: derived tuples rejected by the pairwise test.
    """

    max_sum: int
    extremal: tuple[SystemIds, ...]
    evaluated: int
    mode: SearchMode
    skipped: int = 0


@dataclass(frozen=True, slots=True)
class ScanTable:
    """An objective evaluated over its whole range, in lex order."""

    params: Params
    target: ScanTarget
    s: int | None
    rows: tuple[tuple[KSet, int], ...]

    @property
    def max_value(self) -> int:
        """Largest objective value (``-1`` on an empty table)."""
        return max((v for _, v in self.rows), default=-1)

    @property
    def argmax(self) -> tuple[KSet, ...]:
        """Sets attaining ``max_value``."""
        best = self.max_value
        return tuple(r for r, v in self.rows if v == best)


@dataclass(slots=True)
class _Partial:
    best: int = -1
    winners: list[tuple[Elements, ...]] = field(default_factory=list)
    evaluated: int = 0
    skipped: int = 0

    def offer(self, total: int, ids: Sequence[KSet]) -> None:
        if total > self.best:
            self.best = total
            self.winners = []
        if total == self.best:
            self.winners.append(tuple(r.elements for r in ids))

    def merge(self, other: _Partial) -> _Partial:
        if other.best > self.best:
            winners = list(other.winners)
        elif other.best < self.best:
            winners = list(self.winners)
        else:
            winners = self.winners + other.winners
        return _Partial(
            max(self.best, other.best),
            winners,
            self.evaluated + other.evaluated,
            self.skipped + other.skipped,
        )


# =============================================================================
# Oracle
# =============================================================================


def oracle_cross(n: int, a: KSet, b: KSet, cap: int = DEFAULT_MEMBER_CAP) -> bool:
    """
    Decide cross-intersection of ``𝓛(a, |a|)`` and ``𝓛(b, |b|)`` by enumeration.

    Ground truth for ``cross_lex``; refuses families beyond ``cap`` members.
    """
    first = [x.mask for x in members(n, len(a), a, cap)]
    second = [y.mask for y in members(n, len(b), b, cap)]
    return all(x & y for x in first for y in second)


# =============================================================================
# Brute Force
# =============================================================================


def _naive_shard(params: Params, i1_chunk: Sequence[Elements]) -> _Partial:
    n, ks = params.n, params.ks
    candidates = [list(iter_ksets(n, k)) for k in ks]
    part = _Partial()
    chosen: list[KSet] = []

    def descend(i: int, total: int) -> None:
        if i == len(ks):
            part.evaluated += 1
            part.offer(total, chosen)
            return
        for r, c in enumerate(candidates[i], start=1):
            if all(n < ks[j] + ks[i] or cross_lex(n, chosen[j], c) for j in range(i)):
                chosen.append(c)
                descend(i + 1, total + r)
                chosen.pop()

    for elements in i1_chunk:
        i1 = KSet(n, elements)
        chosen.append(i1)
        descend(1, rank(n, ks[0], i1))
        chosen.pop()
    return part


def derive_rest(params: Params, i1: KSet, i2: KSet) -> list[KSet] | None:
    """
    Largest IDs for families 3 … t given the first two, or ``None``.

    ``Iᵢ`` is the lex-smaller of the two bounds ``max_cross_id(Iⱼ, kᵢ)``;
    ``None`` when either bound does not exist.
    """
    n = params.n
    rest: list[KSet] = []
    for k in params.ks[2:]:
        try:
            b1 = max_cross_id(n, i1, k)
            b2 = max_cross_id(n, i2, k)
        except NotFoundError:
            return None
        rest.append(b1 if precedes(b1, b2) else b2)
    return rest


def _pairwise_ok(n: int, ids: Sequence[KSet]) -> bool:
    for i in range(len(ids)):
        for j in range(i + 1, len(ids)):
            if n >= len(ids[i]) + len(ids[j]) and not cross_lex(n, ids[i], ids[j]):
                return False
    return True


def _smart_shard(params: Params, i2_chunk: Sequence[Elements]) -> _Partial:
    n, ks = params.n, params.ks
    check_12 = n >= ks[0] + ks[1]
    firsts = list(iter_ksets(n, ks[0]))
    part = _Partial()
    for elements in i2_chunk:
        i2 = KSet(n, elements)
        r2 = rank(n, ks[1], i2)
        for r1, i1 in enumerate(firsts, start=1):
            part.evaluated += 1
            if check_12 and not cross_lex(n, i1, i2):
                continue
            rest = derive_rest(params, i1, i2)
            if rest is None:
                continue
            if not _pairwise_ok(n, rest):
                part.skipped += 1
                continue
            total = r1 + r2 + sum(rank(n, k, r) for k, r in zip(ks[2:], rest, strict=True))
            part.offer(total, [i1, i2, *rest])
    return part


def _chunks(items: Sequence[Elements], count: int) -> list[list[Elements]]:
    count = max(1, min(count, len(items)))
    return [list(items[i::count]) for i in range(count)]


def _run_shards(
    worker: Callable[[Params, Sequence[Elements]], _Partial],
    params: Params,
    outer: Sequence[Elements],
    work: int,
    settings: Settings,
) -> _Partial:
    parallel = settings.threads > 1 and work >= settings.parallel_threshold
    if not parallel:
        return worker(params, outer)
    shards = _chunks(outer, settings.threads * SHARDS_PER_WORKER)
    logger.info("Running %d shards on %d workers for %s", len(shards), settings.threads, params)
    with ProcessPoolExecutor(max_workers=settings.threads) as pool:
        parts = list(pool.map(worker, repeat(params), shards))
    return reduce(_Partial.merge, parts, _Partial())


def brute_force_M(
    params: Params,
    mode: SearchMode = SearchMode.SMART,
    settings: Settings | None = None,
) -> SearchResult:
    """
    Exhaustively maximize ``Σ |𝓛(Iᵢ, kᵢ)|`` over cross-intersecting systems.

    Parameters
    ----------
    params : Params
        The instance.
    mode : SearchMode
        ``NAIVE`` tries every ID tuple; ``SMART`` tries every ``(I₁, I₂)``
        and derives the remaining IDs.
    settings : Settings | None
        Budgets and parallelism; defaults to ``Settings.sequential()``.

    Returns
    -------
    SearchResult
        The maximum and every system attaining it.

    Raises
    ------
    SizeGuardError
        If the search would exceed the mode's budget.

    Examples
    --------
    >>> brute_force_M(Params(n=6, ks=(4, 3, 2))).max_sum
    31
    """
    settings = settings or Settings.sequential()
    n, ks = params.n, params.ks
    if mode is SearchMode.NAIVE:
        work = prod(binom(n, k) for k in ks)
        if work > settings.naive_budget:
            raise SizeGuardError(f"naive search over {params}", work, settings.naive_budget)
        outer = [r.elements for r in iter_ksets(n, ks[0])]
        part = _run_shards(_naive_shard, params, outer, work, settings)
    else:
        work = binom(n, ks[0]) * binom(n, ks[1])
        if work > settings.smart_budget:
            raise SizeGuardError(f"smart search over {params}", work, settings.smart_budget)
        outer = [r.elements for r in iter_ksets(n, ks[1])]
        part = _run_shards(_smart_shard, params, outer, work, settings)
    if part.skipped:
        logger.debug("%d derived tuples failed the pairwise test for %s", part.skipped, params)
    extremal = sorted(
        (SystemIds(params, tuple(KSet(n, e) for e in ids)) for ids in set(part.winners)),
        key=lambda system: system.ids,
    )
    logger.info("%s search on %s: M = %d (%d extremal)", mode.value, params, part.best, len(extremal))
    return SearchResult(part.best, tuple(extremal), part.evaluated, mode, part.skipped)


# =============================================================================
# Scans and Constrained Search
# =============================================================================


def scan(
    params: Params,
    target: ScanTarget,
    s: int | None = None,
    settings: Settings | None = None,
) -> ScanTable:
    """
    Evaluate ``g`` over 𝓕₂,₃ or ``f`` over the first range.

    Raises
    ------
    InvalidInputError
        If the instance's regime has no such objective.
    SizeGuardError
        If the range exceeds ``Settings.member_cap``.
    """
    settings = settings or Settings.sequential()
    n = params.n
    if target is ScanTarget.G:
        require_regime(params, Regime.MIXED, what="scan g")
        rows = tuple((g, g_mixed(params, g)) for g in f23_iter(params))
        return ScanTable(params, target, 2, rows)
    lo, hi = objective_range(params, s)
    size = rank(n, params.k1, hi) - rank(n, params.k1, lo) + 1
    if size > settings.member_cap:
        raise SizeGuardError(f"f scan over {params}", size, settings.member_cap)
    s = params.classification.s if s is None else s
    rows = tuple((r, objective(params, r, s)) for r in iter_ksets(n, params.k1, lo, hi))
    return ScanTable(params, target, s, rows)


def constrained_best(
    params: Params,
    fixed: Mapping[int, KSet],
    settings: Settings | None = None,
) -> int:
    """
    Largest sum of the free family sizes over completions of ``fixed``.

    Pinned families do not count towards the result, so an empty ``fixed``
    gives M and a full one gives 0.

    Free families are searched depth-first; each free ID ranges over the
    k-sets below the lex-min of ``max_cross_id`` over the IDs assigned so
    far, so every partial assignment stays feasible.

    Parameters
    ----------
    fixed : Mapping[int, KSet]
        Family index (1-based) to its pinned ID.

    Raises
    ------
    InvalidInputError
        If an index is out of range or an ID has the wrong size.
    NotFoundError
        If the pinned IDs are infeasible or admit no completion.

    Examples
    --------
    >>> params = Params(n=6, ks=(4, 3, 2))
    >>> constrained_best(params, {1: KSet.of(6, [1, 4, 5, 6]), 2: KSet.of(6, [1, 5, 6])})
    5
    """
    settings = settings or Settings.sequential()
    n, ks = params.n, params.ks
    for i, r in fixed.items():
        if not 1 <= i <= params.t:
            msg = f"Family index must lie in [1, {params.t}], got {i}"
            raise InvalidInputError(msg)
        if r.n != n or len(r) != ks[i - 1]:
            msg = f"Pinned ID of family {i} must be a {ks[i - 1]}-subset of [{n}], got {{{r}}}"
            raise InvalidInputError(msg)
    pinned = sorted(fixed)
    if not _pairwise_ok(n, [fixed[i] for i in pinned]):
        msg = f"Pinned IDs are not cross-intersecting for {params}"
        raise NotFoundError(msg)
    free = [i for i in range(1, params.t + 1) if i not in fixed]
    work = prod(binom(n, ks[i - 1]) for i in free[:-1])
    if work > settings.naive_budget:
        raise SizeGuardError(f"constrained search over {params}", work, settings.naive_budget)

    assigned = [fixed[i] for i in pinned]

    def bound(k: int) -> KSet | None:
        # None means every assigned ID leaves the family unconstrained
        limit: KSet | None = None
        for other in assigned:
            if n < len(other) + k:
                continue
            candidate = max_cross_id(n, other, k)
            if limit is None or precedes(candidate, limit):
                limit = candidate
        return limit

    def best_from(pos: int) -> int | None:
        if pos == len(free):
            return 0
        k = ks[free[pos] - 1]
        try:
            limit = bound(k)
        except NotFoundError:
            return None
        if pos == len(free) - 1:
            return rank(n, k, limit) if limit is not None else binom(n, k)
        best: int | None = None
        for r, c in enumerate(iter_ksets(n, k, stop=limit), start=1):
            assigned.append(c)
            rest = best_from(pos + 1)
            assigned.pop()
            if rest is not None and (best is None or r + rest > best):
                best = r + rest
        return best

    found = best_from(0)
    if found is None:
        msg = f"No feasible completion of the pinned IDs for {params}"
        raise NotFoundError(msg)
    return found


# =============================================================================
# Extremal Structure
# =============================================================================


def classify_extremal(
    params: Params,
    result: SearchResult | None = None,
    settings: Settings | None = None,
) -> ExtremalClass:
    """
    Compare the extremal systems of a mixed instance with the constructions.

    ``result`` is reused when given, otherwise a smart search runs.
    """
    require_regime(params, Regime.MIXED, what="classify_extremal")
    result = result or brute_force_M(params, SearchMode.SMART, settings)
    matches = {matches_construction(system) for system in result.extremal}
    if ConstructionMatch.NEITHER in matches:
        return ExtremalClass.OTHER
    has_star = bool(matches & {ConstructionMatch.C1, ConstructionMatch.BOTH})
    has_cover = bool(matches & {ConstructionMatch.C2, ConstructionMatch.BOTH})
    if has_star and has_cover:
        return ExtremalClass.BOTH
    return ExtremalClass.C1_ONLY if has_star else ExtremalClass.C2_ONLY


def is_saturated(system: SystemIds) -> bool:
    """
    Whether no single ID can advance to its lex successor and stay feasible.

    Raises
    ------
    InvalidInputError
        If the system itself is not feasible.
    """
    if not system_feasible(system):
        msg = f"System {system} is not cross-intersecting"
        raise InvalidInputError(msg)
    n = system.params.n
    for i, r in enumerate(system.ids, start=1):
        successor = step(n, len(r), r, Direction.SUCC)
        if successor is not None and system_feasible(system.replace(i, successor)):
            return False
    return True


def construction_systems(params: Params) -> list[SystemIds]:
    """The constructions attaining ``m_formula`` in the mixed regime, deduplicated."""
    star, lambda1 = construction1(params)
    cover, lambda2 = construction2(params)
    best = max(lambda1, lambda2)
    found = [system for system, value in ((star, lambda1), (cover, lambda2)) if value == best]
    return sorted(set(found), key=lambda system: system.ids)
