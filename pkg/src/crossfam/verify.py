"""
crossfam.verify - Verification Harness
======================================

Executable checks of the structural statements the closed formulas rest
on. Every check returns a ``CheckVerdict``; a failure carries the first
counterexample found, rendered so it can be re-checked by hand.

Checks
------
========================  ====================================================
parity_lemma              extremal (I₁, I₂) are (k₁-parity, member of 𝓕₂,₃)
unimodality_g             g is locally unimodal on 𝓕₂,₃ and its levels
boundary_maxima_g         the boundary IDs of 𝓕₂,₃ never beat their neighbours
interior_bound            interior members of 𝓕₂,₃ score below max(λ₁, λ₂)
unimodality_f             f is locally unimodal on the first range
fact_suite                partner calculus facts, exhaustive and randomized
closure_moves             𝓕₂,₃ is closed under the two closure moves
parity_bridge             g(G) equals f at the parity of G
telescoping               gains and losses add up along the first range
theorem                   brute force agrees with the closed formula
========================  ====================================================

Side conditions the statements assume (``k₁ > k₂`` and ``k_t ≥ 2`` for the
g-checks, ``k₁ > k₂`` for the extremal sets in ``theorem``, ``s′ < s``
for the general f-checks, ``n > k₁ + k_t`` when ``t = 2``) turn a check
or part of one into ``skipped`` rather than ``fail``.

Usage Example
-------------
>>> from crossfam.models import Params
>>> from crossfam.verify import check_unimodality_g
>>> check_unimodality_g(Params(n=6, ks=(4, 3, 2))).status.value
'pass'
"""

from __future__ import annotations

import logging
import random
from collections.abc import Callable, Iterable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from functools import cache, partial
from itertools import pairwise
from typing import Any

from crossfam.config import Settings
from crossfam.errors import NotFoundError
from crossfam.families import (
    SystemIds,
    boundary_chains,
    classify,
    closure_successors,
    f13_iter,
    f23_contains,
    f23_iter,
    f23_level,
    f23_witnesses,
    from_core,
    has_suffix,
    in_bounds,
    ri_bounds,
    star_id,
    truncate,
)
from crossfam.lexset import (
    KSet,
    core_of,
    is_seq_decomposable,
    iter_ksets,
    precedes,
    rank,
    rank_general,
    seq_step,
    tail_length,
)
from crossfam.models import (
    CheckStatus,
    CheckVerdict,
    Params,
    Regime,
    Report,
    SearchMode,
    Suite,
    SweepGrid,
    SweepReport,
)
from crossfam.objective import (
    alpha_beta,
    alpha_consecutive,
    beta_consecutive,
    check_s,
    f_general,
    f_nonmixed,
    g_mixed,
    gamma_delta,
    lambdas,
    m_formula,
    objective_range,
    s_prime,
)
from crossfam.partner import (
    is_maximal_pair,
    is_parity,
    kpartner,
    max_cross_id,
    parity_of,
    partner,
)
from crossfam.search import (
    SearchResult,
    brute_force_M,
    classify_extremal,
    construction_systems,
)


logger = logging.getLogger(__name__)

RANDOM_N_MAX = 30

# Small kt = 1 instances for the star bound when no instance is given
STAR_BOUND_INSTANCES = ((4, (2, 1)), (5, (3, 2, 1)), (6, (3, 3, 1)), (6, (4, 2, 1)))


# =============================================================================
# Tally
# =============================================================================


def _render(value: Any) -> Any:
    if isinstance(value, KSet):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_render(v) for v in value]
    if isinstance(value, dict):
        return {k: _render(v) for k, v in value.items()}
    return value


@dataclass(slots=True)
class _Tally:
    """Accumulates cases of one check and turns them into a verdict."""

    name: str
    params: Params | None
    checked: int = 0
    skipped: int = 0
    failures: int = 0
    counterexample: dict[str, Any] | None = field(default=None)

    def ok(self) -> None:
        self.checked += 1

    def skip(self, count: int = 1) -> None:
        self.skipped += count

    def fail(self, **witness: Any) -> None:
        self.checked += 1
        self.failures += 1
        if self.counterexample is None:
            self.counterexample = _render(witness)
            logger.info("%s failed on %s: %s", self.name, self.params, self.counterexample)

    def expect(self, condition: bool, **witness: Any) -> None:
        if condition:
            self.ok()
        else:
            self.fail(**witness)

    def merge(self, other: _Tally) -> None:
        """Add another tally's counts; its witness is kept if none is yet."""
        self.checked += other.checked
        self.skipped += other.skipped
        self.failures += other.failures
        if self.counterexample is None and other.counterexample is not None:
            self.counterexample = other.counterexample

    def chain(self, sets: Sequence[KSet], values: Sequence[int], **context: Any) -> None:
        """``v₁ ≥ v₀`` must force ``v₂ > v₁``."""
        first, middle, last = values
        self.expect(
            middle < first or last > middle,
            sets=list(sets),
            values=list(values),
            **context,
        )

    def verdict(self, detail: str = "") -> CheckVerdict:
        if self.failures:
            status = CheckStatus.FAIL
        elif self.checked:
            status = CheckStatus.PASS
        else:
            status = CheckStatus.SKIPPED
        if self.skipped:
            logger.debug("%s on %s: %d cases skipped", self.name, self.params, self.skipped)
        return CheckVerdict(
            name=self.name,
            params=self.params,
            status=status,
            checked=self.checked,
            skipped=self.skipped,
            counterexample=self.counterexample,
            detail=detail,
        )


def _skipped(name: str, params: Params | None, detail: str) -> CheckVerdict:
    return CheckVerdict(name=name, params=params, status=CheckStatus.SKIPPED, detail=detail)


def _g_side_condition(params: Params) -> str | None:
    if classify(params).regime is not Regime.MIXED:
        return "requires the mixed regime"
    if params.k1 <= params.k(2):
        return "requires k1 > k2"
    if params.kt < 2:
        return "requires kt >= 2"
    return None


def _seq_triples(level: Iterable[KSet], ground: int) -> Iterator[tuple[int, KSet, KSet, KSet]]:
    """``(c, F, G, H)`` with ``F ≺ G ≺ H`` c-sequential steps inside ``level``."""
    level_set = set(level)
    for f in sorted(level_set):
        for c in range(1, len(f) + 1):
            if not is_seq_decomposable(f, c):
                continue
            g = seq_step(ground, f, c)
            if g is None or g not in level_set:
                continue
            h = seq_step(ground, g, c)
            if h is not None and h in level_set:
                yield c, f, g, h


def _levels(ids: Sequence[KSet], size: int) -> Iterator[tuple[int, list[KSet]]]:
    for j in range(size):
        yield j, [truncate(r, j) for r in ids if has_suffix(r, j)]


# =============================================================================
# Parity
# =============================================================================


def check_parity_systems(params: Params, systems: Iterable[SystemIds]) -> CheckVerdict:
    """
    Check that each system's second ID is in 𝓕₂,₃ and its first ID is the
    k₁-parity of the second.

    Failures on systems with I₁ or I₂ at an end of its range are exempt
    and count as skipped.
    """
    name = "parity_lemma"
    if classify(params).regime is not Regime.MIXED:
        return _skipped(name, params, "requires the mixed regime")
    tally = _Tally(name, params)
    lo1, hi1 = ri_bounds(params, 1)
    lo2, hi2 = ri_bounds(params, 2)
    for system in systems:
        i1, i2 = system.ids[0], system.ids[1]
        member, _ = f23_contains(params, i2)
        if member and parity_of(params.n, i2, params.k1) == i1:
            tally.ok()
        elif i1 in (lo1, hi1) or i2 in (lo2, hi2):
            tally.skip()
        else:
            tally.fail(system=list(system.ids), member_of_f23=member)
    return tally.verdict()


def check_parity_lemma(
    params: Params,
    result: SearchResult | None = None,
    settings: Settings | None = None,
) -> CheckVerdict:
    """Run the parity check on every extremal system found by smart search."""
    reason = _g_side_condition(params)
    if reason:
        return _skipped("parity_lemma", params, reason)
    result = result or brute_force_M(params, SearchMode.SMART, settings)
    return check_parity_systems(params, result.extremal)


# =============================================================================
# Unimodality of g
# =============================================================================


def check_unimodality_g(params: Params) -> CheckVerdict:
    """
    Local unimodality of g.

    On every level of 𝓕₂,₃, for c-sequential ``F ≺ G ≺ H``: ``g(G) ≥ g(F)``
    forces ``g(H) > g(G)``. The same rule is checked along the interval
    cores ``[2, j], [2, j-1], [2, j-2]`` (``4 ≤ j ≤ k₂+1``) and
    ``[k_t, j], [k_t, j-1], [k_t, j-2]`` (``k_t+2 ≤ j ≤ k_t+k₂-1``), each
    completed with a maximal tail.
    """
    name = "unimodality_g"
    reason = _g_side_condition(params)
    if reason:
        return _skipped(name, params, reason)
    tally = _Tally(name, params)
    g = cache(partial(g_mixed, params))
    n, k2, kt = params.n, params.k(2), params.kt
    for j in range(k2):
        for c, f, gg, h in _seq_triples(f23_level(params, j), n - j):
            tally.chain([f, gg, h], [g(f), g(gg), g(h)], rule="c-sequential", level=j, c=c)
    members = set(f23_iter(params))
    for start, ends in ((2, range(4, k2 + 2)), (kt, range(kt + 2, kt + k2))):
        for j in ends:
            ids = [from_core(n, k2, KSet.interval(n, start, j - d)) for d in range(3)]
            if any(r is None or r not in members for r in ids):
                tally.skip()
                continue
            chain = [r for r in ids if r is not None]
            tally.chain(chain, [g(r) for r in chain], rule=f"interval cores from {start}", j=j)
    return tally.verdict()


def check_boundary_maxima(params: Params) -> CheckVerdict:
    """
    The two interval members of 𝓕₂,₃ lose to one of their neighbours.

    ``g([2, k₂+1]) < max{g({1}), g([2, k₂])}`` and
    ``g([k_t, k_t+k₂-1]) < max{g({k_t-1}), g([k_t, k_t+k₂-2])}``, where each
    core is completed with a maximal tail.
    """
    name = "boundary_maxima_g"
    reason = _g_side_condition(params)
    if reason:
        return _skipped(name, params, reason)
    tally = _Tally(name, params)
    n, k2, kt = params.n, params.k(2), params.kt
    members = set(f23_iter(params))
    cases = (
        (KSet.interval(n, 2, k2 + 1), KSet.of(n, [1]), KSet.interval(n, 2, k2)),
        (KSet.interval(n, kt, kt + k2 - 1), KSet.of(n, [kt - 1]), KSet.interval(n, kt, kt + k2 - 2)),
    )
    for cores in cases:
        ids = [from_core(n, k2, core) for core in cores]
        if any(r is None or r not in members for r in ids) or len(set(ids)) < 3:
            tally.skip()
            continue
        top, left, right = (r for r in ids if r is not None)
        values = [g_mixed(params, r) for r in (top, left, right)]
        tally.expect(
            values[0] < max(values[1], values[2]),
            sets=[top, left, right],
            values=values,
        )
    return tally.verdict()


def check_interior_bound(params: Params) -> CheckVerdict:
    """Every G in 𝓕₂,₃ with G and its parity off the range ends scores below max(λ₁, λ₂)."""
    name = "interior_bound"
    reason = _g_side_condition(params)
    if reason:
        return _skipped(name, params, reason)
    tally = _Tally(name, params)
    bound = max(lambdas(params))
    r1, r2 = ri_bounds(params, 1), ri_bounds(params, 2)
    for g in f23_iter(params):
        g1 = parity_of(params.n, g, params.k1)
        if g in r2 or g1 is None or g1 in r1 or not in_bounds(g1, r1):
            tally.skip()
            continue
        value = g_mixed(params, g)
        tally.expect(value < bound, member=g, parity=g1, value=value, bound=bound)
    return tally.verdict()


# =============================================================================
# Unimodality of f
# =============================================================================


def _tail_chains(n: int, k: int) -> Iterator[list[KSet]]:
    """Chains ``B₀, B₁, …`` moving the top block of ``B₀`` into the tail one element at a time."""
    for b0 in iter_ksets(n, k):
        els = b0.elements
        run = 1
        while run < len(els) and els[-run - 1] == els[-run] - 1:
            run += 1
        top = run - 1
        y = els[-run]
        if top < 2 or y + top >= n:
            continue
        prefix = els[:-run]
        yield [
            KSet(n, (*prefix, *range(y, y + top - i + 1), *range(n - i + 1, n + 1)))
            for i in range(top + 1)
        ]


def check_unimodality_f(params: Params, s: int | None = None) -> CheckVerdict:
    """
    Local unimodality of f on the first range.

    Non-mixed regime: c-sequential triples on every level of the range and
    the interval cores ``[m, j], [m, j-1], [m, j-2]`` for ``m ≤ k_t``.
    Mixed and general regimes (with ``s′ < s``): c-sequential triples and
    the chains that trade the top block for the tail.
    """
    name = "unimodality_f"
    found = classify(params)
    if found.regime not in {Regime.NONMIXED, Regime.MIXED, Regime.GENERAL_S}:
        return _skipped(name, params, f"no first-ID objective in the {found.regime.value} regime")
    s = found.s if s is None else s
    assert s is not None
    check_s(params, s)
    n, k1, kt = params.n, params.k1, params.kt
    nonmixed = found.regime is Regime.NONMIXED and s == 1
    if nonmixed and params.t == 2 and n == k1 + kt:
        return _skipped(name, params, "requires n > k1 + kt when t = 2")
    if not nonmixed and s_prime(params, s) >= s:
        return _skipped(name, params, "requires s' < s")

    def value(r: KSet) -> int:
        return f_nonmixed(params, r) if nonmixed else f_general(params, s, r)

    f = cache(value)
    bounds = objective_range(params, s)
    ids = list(iter_ksets(n, k1, *bounds))
    tally = _Tally(name, params)
    for j, level in _levels(ids, k1):
        for c, a, b, d in _seq_triples(level, n - j):
            tally.chain([a, b, d], [f(a), f(b), f(d)], rule="c-sequential", level=j, c=c)
    if nonmixed:
        for m in range(1, kt + 1):
            for j in range(m + 1, m + k1):
                if j - 2 < m:
                    tally.skip()
                    continue
                chain = [from_core(n, k1, KSet.interval(n, m, j - d)) for d in range(3)]
                if any(r is None or not in_bounds(r, bounds) for r in chain):
                    tally.skip()
                    continue
                sets = [r for r in chain if r is not None]
                tally.chain(sets, [f(r) for r in sets], rule="interval cores", m=m, j=j)
    else:
        for chain in _tail_chains(n, k1):
            for i in range(len(chain) - 2):
                triple = chain[i : i + 3]
                if not all(in_bounds(r, bounds) for r in triple):
                    tally.skip()
                    continue
                tally.chain(triple, [f(r) for r in triple], rule="tail chain", step=i)
    return tally.verdict(detail=f"s = {s}")


# =============================================================================
# Structural Checks
# =============================================================================


def check_closures(params: Params) -> CheckVerdict:
    """
    𝓕₂,₃ contains the closure images of its members (when they stay in the
    second range) and every closed-form boundary member.
    """
    name = "closure_moves"
    if classify(params).regime is not Regime.MIXED:
        return _skipped(name, params, "requires the mixed regime")
    if params.kt < 2:
        return _skipped(name, params, "requires kt >= 2")
    tally = _Tally(name, params)
    members = set(f23_iter(params))
    second = ri_bounds(params, 2)
    for a in sorted(members):
        images = closure_successors(params, a)
        for move, image in images._asdict().items():
            if image is None or not in_bounds(image, second):
                tally.skip()
                continue
            tally.expect(image in members, move=move, member=a, image=image)
    for r in boundary_chains(params):
        tally.expect(r in members, move="boundary", image=r)
    return tally.verdict()


def check_bridge(params: Params) -> CheckVerdict:
    """``g(G) = f(parity(G))`` with ``s = 2``, and G and its parity share kᵢ-partners."""
    name = "parity_bridge"
    if classify(params).regime is not Regime.MIXED:
        return _skipped(name, params, "requires the mixed regime")
    tally = _Tally(name, params)
    n = params.n
    first = ri_bounds(params, 1)
    for g in f23_iter(params):
        g1 = parity_of(n, g, params.k1)
        if g1 is None or not in_bounds(g1, first):
            tally.skip()
            continue
        tally.expect(
            g_mixed(params, g) == f_general(params, 2, g1),
            member=g,
            parity=g1,
        )
        for k in params.ks[2:]:
            tally.expect(
                kpartner(n, g, k).value == kpartner(n, g1, k).value,
                member=g,
                parity=g1,
                k=k,
            )
    return tally.verdict()


def check_telescoping(params: Params, s: int | None = None) -> CheckVerdict:
    """
    Gains and losses along the first range.

    Consecutive IDs must match the closed forms (β in the non-mixed regime,
    each αᵢ otherwise); differences must telescope to the change of the
    objective; c-sequential steps with equal maxima must carry equal gains
    and losses.
    """
    name = "telescoping"
    found = classify(params)
    if found.regime not in {Regime.NONMIXED, Regime.MIXED, Regime.GENERAL_S}:
        return _skipped(name, params, f"no first-ID objective in the {found.regime.value} regime")
    s = found.s if s is None else s
    assert s is not None
    check_s(params, s)
    n = params.n
    nonmixed = found.regime is Regime.NONMIXED and s == 1
    bounds = objective_range(params, s)
    ids = list(iter_ksets(n, params.k1, *bounds))
    tally = _Tally(name, params)

    def objective(r: KSet) -> int:
        return f_nonmixed(params, r) if nonmixed else f_general(params, s, r)

    def diff(a: KSet, b: KSet) -> tuple[Any, int]:
        if nonmixed:
            pair = alpha_beta(params, a, b)
            return (pair.gain, pair.loss), pair.delta
        gd = gamma_delta(params, s, a, b)
        return (gd.alphas, gd.delta), gd.change

    values = {r: objective(r) for r in ids}
    for a, b in pairwise(ids):
        parts, change = diff(a, b)
        tally.expect(change == values[b] - values[a], step=[a, b], change=change)
        if nonmixed:
            gain, loss = parts
            tally.expect(gain == 1, step=[a, b], gain=gain)
            tally.expect(loss == beta_consecutive(params, b), step=[a, b], loss=loss)
        else:
            alphas, _ = parts
            closed = tuple(alpha_consecutive(params, b, k) for k in params.ks[:s])
            tally.expect(alphas == closed, step=[a, b], alphas=alphas, closed_form=closed)
            if tail_length(n, b) == 0:
                tally.expect(sum(alphas) == s_prime(params, s), step=[a, b], gamma=sum(alphas))
    if len(ids) >= 2:
        _, change = diff(ids[0], ids[-1])
        expected = values[ids[-1]] - values[ids[0]]
        tally.expect(change == expected, span=[ids[0], ids[-1]], change=change, expected=expected)

    seen: dict[tuple[int, int, int], Any] = {}
    members = set(ids)
    for a in ids:
        for c in range(1, len(a) + 1):
            if not is_seq_decomposable(a, c):
                continue
            b = seq_step(n, a, c)
            if b is None or b not in members:
                continue
            parts, _ = diff(a, b)
            key = (c, a.max_element, b.max_element)
            if key not in seen:
                seen[key] = (parts, a, b)
                continue
            first_parts, fa, fb = seen[key]
            tally.expect(
                parts == first_parts,
                c=c,
                steps=[[fa, fb], [a, b]],
                parts=[list(first_parts), list(parts)],
            )
    return tally.verdict(detail=f"s = {s}")


def check_theorem(
    params: Params,
    result: SearchResult | None = None,
    settings: Settings | None = None,
) -> CheckVerdict:
    """
    Brute force against ``m_formula``; in the mixed regime with
    ``k1 > k2`` the extremal systems must also be exactly the
    constructions attaining it.

    For ``k1 = k2`` only the maximum is compared: equal leading sizes admit
    further L-initial maximizers beyond the two constructions.
    """
    name = "theorem"
    found = classify(params)
    if not found.regime.has_formula:
        return _skipped(name, params, f"no closed formula in the {found.regime.value} regime")
    tally = _Tally(name, params)
    objectives = m_formula(params)
    result = result or brute_force_M(params, SearchMode.SMART, settings)
    tally.expect(
        result.max_sum == objectives.m_formula,
        formula=objectives.m_formula,
        bruteforce=result.max_sum,
    )
    if found.regime is not Regime.MIXED:
        return tally.verdict()
    if params.k1 == params.k(2):
        tally.skip()
        return tally.verdict(detail="extremal set not compared: requires k1 > k2")
    expected = [system.ids for system in construction_systems(params)]
    actual = [system.ids for system in result.extremal]
    tally.expect(
        actual == expected,
        extremal=[list(ids) for ids in actual],
        constructions=[list(ids) for ids in expected],
    )
    return tally.verdict()


# =============================================================================
# Fact Suite
# =============================================================================


def _try_kpartner(n: int, f: KSet, k: int) -> KSet | None:
    try:
        return kpartner(n, f, k).value
    except NotFoundError:
        return None


def _try_max_cross(n: int, a: KSet, b: int) -> KSet | None:
    try:
        return max_cross_id(n, a, b)
    except NotFoundError:
        return None


def _partner_facts(tally: _Tally, n: int, f: KSet, sizes: Sequence[int]) -> None:
    h = partner(n, f)
    tally.expect(partner(n, h) == f, fact="partner involution", set=f)
    core = core_of(n, f)
    found: dict[int, KSet | None] = {}
    for k in sizes:
        kp = _try_kpartner(n, f, k)
        found[k] = kp
        counted = rank_general(n, k, h)
        tally.expect(
            counted == (rank(n, k, kp) if kp is not None else 0),
            fact="k-partner rank",
            set=f,
            k=k,
            rank_general=counted,
        )
        if core:
            tally.expect(
                kp == _try_kpartner(n, core, k),
                fact="k-partner of core",
                set=f,
                k=k,
            )
    for a in sizes:
        for b in sizes:
            big, small = found[a], found[b]
            if a < b or big is None or small is None:
                continue
            tally.expect(
                precedes(small, big) or is_parity(n, big, small),
                fact="k-partners ordered by size",
                set=f,
                sizes=[a, b],
                partners=[big, small],
            )


def _order_facts(tally: _Tally, n: int, a: KSet, b: KSet, k: int) -> None:
    """``a ⪯ b`` reverses the order of k-partners; parities share them."""
    if not precedes(a, b) or k > n - max(len(a), len(b)):
        return
    ka, kb = _try_kpartner(n, a, k), _try_kpartner(n, b, k)
    if ka is None or kb is None:
        tally.skip()
        return
    tally.expect(precedes(kb, ka), fact="k-partner order reversal", sets=[a, b], k=k)
    if is_parity(n, a, b):
        tally.expect(ka == kb, fact="parities share k-partners", sets=[a, b], k=k)


@cache
def _masks(n: int, k: int) -> tuple[int, ...]:
    return tuple(r.mask for r in iter_ksets(n, k))


def _brute_maximal(n: int, a: KSet, b: KSet) -> bool:
    all_a, all_b = _masks(n, len(a)), _masks(n, len(b))
    fam_a = all_a[: rank(n, len(a), a)]
    fam_b = all_b[: rank(n, len(b), b)]
    if not all(x & y for x in fam_a for y in fam_b):
        return False
    if any(all(x & y for y in fam_b) for x in all_a[len(fam_a) :]):
        return False
    return not any(all(x & y for x in fam_a) for y in all_b[len(fam_b) :])


def _cross_facts(tally: _Tally, n: int, a: KSet, b: int) -> None:
    """Facts about ``a`` against every b-set (``|a| + b ≤ n``)."""
    all_b = _masks(n, b)
    fam_a = _masks(n, len(a))[: rank(n, len(a), a)]
    crossing = [all(x & y for x in fam_a) for y in all_b]
    largest = _try_max_cross(n, a, b)
    if largest is None:
        tally.expect(not crossing[0], fact="max cross ID exists", set=a, b=b)
        return
    cut = rank(n, b, largest)
    tally.expect(
        all(crossing[:cut]) and (cut == len(all_b) or not crossing[cut]),
        fact="max cross ID is maximal",
        set=a,
        b=b,
        max_cross_id=largest,
    )
    back = _try_max_cross(n, largest, len(a))
    if back is None:
        tally.fail(fact="max cross ID round trip", set=a, b=b, max_cross_id=largest)
    else:
        tally.expect(
            is_maximal_pair(n, back, largest) and precedes(a, back),
            fact="max cross ID round trip",
            set=a,
            b=b,
            pair=[back, largest],
        )
    star = star_id(n, len(a))
    if precedes(star, a):
        tally.expect(
            precedes(largest, star_id(n, b)),
            fact="partners of star-or-later IDs contain 1",
            set=a,
            b=b,
        )
    for other in iter_ksets(n, b):
        tally.expect(
            is_maximal_pair(n, a, other) == _brute_maximal(n, a, other),
            fact="maximal pair criterion",
            pair=[a, other],
        )


def _exhaustive_facts(tally: _Tally, n: int) -> None:
    every = [r for k in range(1, n + 1) for r in iter_ksets(n, k)]
    for f in every:
        _partner_facts(tally, n, f, range(1, n - len(f) + 1))
        for b in range(1, n - len(f) + 1):
            _cross_facts(tally, n, f, b)
    for a in every:
        for b in every:
            for k in range(1, n - max(len(a), len(b)) + 1):
                _order_facts(tally, n, a, b, k)


def _random_set(rng: random.Random, n: int) -> KSet:
    return KSet.of(n, rng.sample(range(1, n + 1), rng.randint(1, n - 1)))


def _random_facts(tally: _Tally, rng: random.Random, samples: int, n_range: tuple[int, int]) -> None:
    for _ in range(samples):
        n = rng.randint(*n_range)
        f = _random_set(rng, n)
        room = n - len(f)
        _partner_facts(tally, n, f, sorted({rng.randint(1, room), rng.randint(1, room)}))
        a, b = sorted((f, _random_set(rng, n)))
        room = n - max(len(a), len(b))
        if room >= 1:
            _order_facts(tally, n, a, b, rng.randint(1, room))
        parity = parity_of(n, f, rng.randint(1, n - 1))
        if parity is None:
            continue
        room = n - max(len(f), len(parity))
        if room >= 1:
            k = rng.randint(1, room)
            tally.expect(
                _try_kpartner(n, f, k) == _try_kpartner(n, parity, k),
                fact="parities share k-partners",
                sets=[f, parity],
                k=k,
            )


def _family_facts(tally: _Tally, params: Params, settings: Settings) -> None:
    n = params.n
    if classify(params).regime is Regime.MIXED:
        first = set(f13_iter(params))
        lo1 = ri_bounds(params, 1)
        for g, witness in f23_witnesses(params):
            g1 = parity_of(n, g, params.k1)
            if g1 is None:
                tally.fail(fact="members of F(2,3) have a k1-parity", member=g)
                continue
            tally.expect(
                is_maximal_pair(n, g1, witness),
                fact="witness transfers to the parity",
                member=g,
                parity=g1,
                witness=witness,
            )
            if in_bounds(g1, lo1):
                tally.expect(g1 in first, fact="parity lies in F'(1,3)", member=g, parity=g1)
            else:
                tally.skip()
    if params.kt == 1:
        bound = sum(rank(n, k, star_id(n, k)) for k in params.ks)
        best = brute_force_M(params, SearchMode.SMART, settings).max_sum
        tally.expect(best <= bound, fact="star bound for kt = 1", M=best, lambda1=bound)


@cache
def _exhaustive_outcome(n: int) -> _Tally:
    tally = _Tally("fact_suite", None)
    _exhaustive_facts(tally, n)
    return tally


def check_fact_suite(
    params: Params | None = None,
    settings: Settings | None = None,
    max_n: int | None = None,
) -> CheckVerdict:
    """
    Partner calculus facts.

    Without ``params``: exhaustive over every ground set up to ``max_n``
    (``Settings.fact_max_n`` when omitted), randomized
    (``Settings.random_samples`` draws, ``Settings.seed``) above it up to
    ``n = 30``, plus the star bound on a few ``k_t = 1`` instances.
    With ``params``: the same facts on ``[n]`` (exhaustive when
    ``n ≤ max_n``) plus family-level facts of the instance.

    Exhaustive outcomes are cached per ground set, so a sweep pays for
    each ``n`` once per process. The counterexample names the failing fact.
    """
    settings = settings or Settings.sequential()
    max_n = settings.fact_max_n if max_n is None else max_n
    tally = _Tally("fact_suite", params)
    rng = random.Random(settings.seed)
    if params is None:
        for n in range(1, max_n + 1):
            tally.merge(_exhaustive_outcome(n))
        if max_n < RANDOM_N_MAX:
            _random_facts(tally, rng, settings.random_samples, (max_n + 1, RANDOM_N_MAX))
        for n, ks in STAR_BOUND_INSTANCES:
            _family_facts(tally, Params(n=n, ks=ks), settings)
        return tally.verdict(detail=f"exhaustive n <= {max_n}, seed {settings.seed}")
    if params.n <= max_n:
        tally.merge(_exhaustive_outcome(params.n))
    elif params.n >= 2:
        _random_facts(tally, rng, settings.random_samples, (params.n, params.n))
    _family_facts(tally, params, settings)
    return tally.verdict()


# =============================================================================
# Instances and Sweeps
# =============================================================================


def _suite_checks(suites: Iterable[Suite]) -> set[Suite]:
    chosen = set(suites)
    if Suite.ALL in chosen:
        return {Suite.PARITY, Suite.UNIMODALITY, Suite.FACTS, Suite.THEOREM}
    return chosen


def instance_report(
    params: Params,
    suites: Iterable[Suite] = (Suite.ALL,),
    settings: Settings | None = None,
) -> Report:
    """
    Run the selected suites on one instance.

    The smart search runs at most once and feeds the parity and theorem
    checks and the extremal classification.
    """
    settings = settings or Settings.sequential()
    chosen = _suite_checks(suites)
    found = classify(params)
    report = Report(params=params, regime=found.regime, s=found.s)
    if found.regime.has_formula:
        objectives = m_formula(params)
        report.lambda1, report.lambda2 = objectives.lambda1, objectives.lambda2
        report.m_formula = objectives.m_formula

    result: SearchResult | None = None
    if chosen & {Suite.PARITY, Suite.THEOREM}:
        result = brute_force_M(params, SearchMode.SMART, settings)
        report.m_bruteforce = result.max_sum
        report.extremal_systems = [system.as_strings() for system in result.extremal]
        if found.regime is Regime.MIXED:
            report.classification = classify_extremal(params, result)
        if report.m_formula is not None:
            report.discrepancy = report.m_formula != result.max_sum

    checks: list[CheckVerdict] = []
    if Suite.PARITY in chosen:
        checks.append(check_parity_lemma(params, result, settings))
    if Suite.UNIMODALITY in chosen:
        checks.extend(
            [
                check_unimodality_g(params),
                check_boundary_maxima(params),
                check_interior_bound(params),
                check_unimodality_f(params),
            ]
        )
    if Suite.FACTS in chosen:
        checks.extend(
            [
                check_fact_suite(params, settings),
                check_closures(params),
                check_bridge(params),
                check_telescoping(params),
            ]
        )
    if Suite.THEOREM in chosen:
        checks.append(check_theorem(params, result, settings))
    report.checks = checks
    return report


def _sweep_cell(params: Params, suites: tuple[Suite, ...], settings: Settings) -> Report:
    return instance_report(params, suites, settings)


def run_sweep(
    grid: SweepGrid,
    suites: Iterable[Suite] = (Suite.ALL,),
    settings: Settings | None = None,
    progress: Callable[[Params], None] | None = None,
) -> SweepReport:
    """
    Run the suites on every instance of the grid.

    Cells run in a process pool when ``settings.threads > 1``; each cell
    searches sequentially. Reports come back sorted by params.
    """
    settings = settings or Settings.sequential()
    cells = list(grid.iter_params())
    chosen = tuple(suites)
    inner = settings.model_copy(update={"threads": 1})
    logger.info("Sweeping %d instances with %d workers", len(cells), settings.threads)
    reports: list[Report] = []
    if settings.threads > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=settings.threads) as pool:
            futures = {pool.submit(_sweep_cell, params, chosen, inner): params for params in cells}
            for future in as_completed(futures):
                reports.append(future.result())
                if progress is not None:
                    progress(futures[future])
    else:
        for params in cells:
            reports.append(_sweep_cell(params, chosen, inner))
            if progress is not None:
                progress(params)
    reports.sort(key=lambda r: r.params.sort_key)
    return SweepReport(reports=reports)
