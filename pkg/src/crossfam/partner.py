"""
crossfam.partner - Partner and Parity Calculus
==============================================

Operations that decide when two L-initial families cross-intersect and
which one is the largest possible partner of another.

- ``partner(F)`` is the set ``H`` with ``F ∩ H = {q}`` and ``F ∪ H = [q]``,
  where ``q = max F``; it is an involution.
- ``kpartner(F, k)`` resizes the partner to exactly ``k`` elements: the
  partner itself, the partner padded with a maximal tail, or the last
  k-set preceding the partner.
- Two sets are parities of each other when they share a core and their
  tail lengths differ by their size difference. Parities have equal
  k-partners.
- ``𝓛(A, a)`` and ``𝓛(B, b)`` with ``a + b ≤ n`` are a maximal
  cross-intersecting pair exactly when their cores are partners.

Example
-------
>>> from crossfam.lexset import KSet
>>> from crossfam.partner import kpartner, cross_lex
>>> a = KSet.of(9, [2, 4, 7])
>>> str(kpartner(9, a, 4).value)
'1,3,4,9'
>>> cross_lex(9, a, KSet.of(9, [1, 3, 4, 9]))
True
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from crossfam.errors import InvalidInputError, NotFoundError
from crossfam.lexset import KSet, core_of, decompose, last_kset, precedes


logger = logging.getLogger(__name__)


class PartnerKind(str, Enum):
    """Branch of the k-partner construction that produced a result."""

    EXACT = "exact-partner"
    PADDED = "padded"
    PREDECESSOR = "predecessor"


@dataclass(frozen=True, slots=True)
class PartnerResult:
    """
    A k-partner together with the construction branch used.

    Attributes
    ----------
    value : KSet
        The k-partner.
    kind : PartnerKind
        ``EXACT`` when k equals the partner's size, ``PADDED`` when larger,
        ``PREDECESSOR`` when smaller.
    """

    value: KSet
    kind: PartnerKind


def _require_nonempty(f: KSet, what: str) -> None:
    if not f:
        msg = f"{what} requires a nonempty set"
        raise InvalidInputError(msg)


# =============================================================================
# Partners
# =============================================================================


def partner(n: int, f: KSet) -> KSet:
    """
    The partner ``([q-1] ∖ f) ∪ {q}`` of a nonempty set, ``q = max f``.

    Examples
    --------
    >>> str(partner(9, KSet.of(9, [2, 4, 7])))
    '1,3,5,6,7'
    """
    _require_nonempty(f, "partner")
    if f.n != n:
        msg = f"Set {{{f}}} lives on [{f.n}], not on [{n}]"
        raise InvalidInputError(msg)
    q = f.max_element
    return KSet(n, (*(x for x in range(1, q) if x not in f), q))


def last_before(n: int, k: int, h: KSet) -> KSet:
    """
    The last k-set strictly preceding ``h``, for ``k < |h|``.

    Take the longest prefix ``y₁ … y_{j-1}`` of ``h`` (with ``j ≤ k``) whose
    next element can be lowered, lower ``y_j`` by one and fill up with the
    maximal tail ``[n-k+j+1, n]``.

    Raises
    ------
    NotFoundError
        If ``h`` starts with ``[k]``, so that every k-set follows it.
    """
    if not 1 <= k < len(h):
        msg = f"last_before needs 1 <= k < |h|, got k={k}, |h|={len(h)}"
        raise InvalidInputError(msg)
    ys = h.elements
    for j in range(k, 0, -1):
        floor = ys[j - 2] if j >= 2 else 0
        if ys[j - 1] - 1 > floor:
            return KSet(n, (*ys[: j - 1], ys[j - 1] - 1, *range(n - k + j + 1, n + 1)))
    msg = f"No {k}-set of [{n}] precedes {{{h}}}"
    raise NotFoundError(msg)


def kpartner(n: int, f: KSet, k: int) -> PartnerResult:
    """
    The k-partner of ``f``: the ID of the largest L-initial k-family
    cross-intersecting ``𝓛(f, |f|)``.

    Parameters
    ----------
    n : int
        Ground set size.
    f : KSet
        A nonempty set.
    k : int
        Target size, at most ``n - |f|``.

    Returns
    -------
    PartnerResult
        The k-partner and the branch that built it.

    Raises
    ------
    InvalidInputError
        If ``f`` is empty or ``k`` is outside ``[1, n - |f|]``.
    NotFoundError
        If ``k`` is below the partner's size and no k-set precedes it.

    Examples
    --------
    >>> f = KSet.of(9, [2, 4, 7])
    >>> [str(kpartner(9, f, k).value) for k in (4, 5, 6)]
    ['1,3,4,9', '1,3,5,6,7', '1,3,5,6,7,9']
    """
    _require_nonempty(f, "kpartner")
    if not 1 <= k <= n - len(f):
        msg = f"k-partner size must lie in [1, n - |F|] = [1, {n - len(f)}], got {k}"
        raise InvalidInputError(msg)
    h = partner(n, f)
    if k == len(h):
        return PartnerResult(h, PartnerKind.EXACT)
    if k > len(h):
        padded = KSet(n, h.elements + tuple(range(n - k + len(h) + 1, n + 1)))
        return PartnerResult(padded, PartnerKind.PADDED)
    try:
        return PartnerResult(last_before(n, k, h), PartnerKind.PREDECESSOR)
    except NotFoundError:
        msg = f"{{{f}}} has no {k}-partner on [{n}]: its partner {{{h}}} starts with [{k}]"
        raise NotFoundError(msg) from None


# =============================================================================
# Parity
# =============================================================================


def parity_of(n: int, f: KSet, h: int) -> KSet | None:
    """
    The h-parity of ``f``, or ``None`` when it does not exist.

    The h-parity keeps the core of ``f`` and changes the tail length by
    ``h - |f|``. It exists iff the new tail length is nonnegative and still
    leaves a gap above the core: ``ℓ(f) + h - |f| ≤ n - max(core) - 1``
    (``max ∅ = 0``).

    Examples
    --------
    >>> str(parity_of(9, KSet.of(9, [2, 4, 9]), 4))
    '2,4,8,9'
    >>> parity_of(9, KSet.of(9, [6, 8, 9]), 5) is None
    True
    """
    _require_nonempty(f, "parity_of")
    if h < 1:
        msg = f"Parity size must be positive, got {h}"
        raise InvalidInputError(msg)
    ell, _, core = decompose(n, f)
    new_ell = ell + h - len(f)
    if new_ell < 0 or new_ell > n - core.max_element - 1:
        return None
    return KSet(n, core.elements + tuple(range(n - new_ell + 1, n + 1)))


def is_parity(n: int, a: KSet, b: KSet) -> bool:
    """Whether ``a`` is the ``|a|``-parity of ``b``."""
    return parity_of(n, b, len(a)) == a


def corresponding_set(n: int, r1: KSet, ki: int) -> KSet:
    """
    The corresponding ki-set of ``r1``: its ki-parity when that exists,
    otherwise the last ki-set preceding ``r1``.

    Raises
    ------
    InvalidInputError
        If ``ki`` is outside ``[1, |r1|]``.
    NotFoundError
        If neither set exists.

    Examples
    --------
    >>> str(corresponding_set(9, KSet.of(9, [2, 4, 5, 7]), 3))
    '2,3,9'
    """
    if not 1 <= ki <= len(r1):
        msg = f"Corresponding set size must lie in [1, {len(r1)}], got {ki}"
        raise InvalidInputError(msg)
    parity = parity_of(n, r1, ki)
    if parity is not None:
        return parity
    return last_before(n, ki, r1)


# =============================================================================
# Maximal Pairs and Cross-Intersection
# =============================================================================


def is_maximal_pair(n: int, a: KSet, b: KSet) -> bool:
    """
    Whether ``(𝓛(a, |a|), 𝓛(b, |b|))`` is a maximal cross-intersecting pair.

    True iff ``core(a)`` is the partner of ``core(b)``. A set with empty core
    is the last set of its size, whose family meets no nonempty partner
    family when ``|a| + |b| ≤ n``.

    Raises
    ------
    InvalidInputError
        If either set is empty or ``|a| + |b| > n``.
    """
    _require_nonempty(a, "is_maximal_pair")
    _require_nonempty(b, "is_maximal_pair")
    if len(a) + len(b) > n:
        msg = f"Maximal pairs need |A| + |B| <= n, got {len(a)} + {len(b)} > {n}"
        raise InvalidInputError(msg)
    core_a, core_b = core_of(n, a), core_of(n, b)
    if not core_a or not core_b:
        return False
    return core_a == partner(n, core_b)


@lru_cache(maxsize=1 << 16)
def _max_cross_id(n: int, a: KSet, b: int) -> KSet:
    if n < len(a) + b:
        return last_kset(n, b)
    core = core_of(n, a)
    if not core:
        msg = f"Every {b}-set of [{n}] misses some member of L({{{a}}}, {len(a)})"
        raise NotFoundError(msg)
    return kpartner(n, core, b).value


def max_cross_id(n: int, a: KSet, b: int) -> KSet:
    """
    ID of the largest L-initial b-family cross-intersecting ``𝓛(a, |a|)``.

    When ``n < |a| + b`` the pair is free and the answer is the last
    b-set. Otherwise it is the b-partner of ``core(a)``, which equals the
    b-partner of ``a`` itself.

    Raises
    ------
    InvalidInputError
        If ``a`` is empty or ``b`` is outside ``[1, n]``.
    NotFoundError
        If no nonempty b-family cross-intersects ``𝓛(a, |a|)``.

    Examples
    --------
    >>> str(max_cross_id(5, KSet.of(5, [1, 5]), 2))
    '1,5'
    """
    _require_nonempty(a, "max_cross_id")
    if not 1 <= b <= n:
        msg = f"Family size must lie in [1, {n}], got {b}"
        raise InvalidInputError(msg)
    return _max_cross_id(n, a, b)


def cross_lex(n: int, a: KSet, b: KSet) -> bool:
    """
    Whether ``𝓛(a, |a|)`` and ``𝓛(b, |b|)`` cross-intersect.

    Decided as ``b ⪯ max_cross_id(n, a, |b|)``; free pairs always do.
    """
    _require_nonempty(a, "cross_lex")
    _require_nonempty(b, "cross_lex")
    if n < len(a) + len(b):
        return True
    try:
        bound = max_cross_id(n, a, len(b))
    except NotFoundError:
        return False
    return precedes(b, bound)
