"""
crossfam.lexset - Ground Sets and Lexicographic Order
=====================================================

Primitives every other module builds on: the ``KSet`` value type, the lex
order on finite sets, ranking and unranking of k-sets, successors, the
tail/core decomposition and c-sequential steps.

The order
---------
For finite sets ``A`` and ``B`` we write ``A ≺ B`` when ``A ⊇ B`` or
``min(A ∖ B) < min(B ∖ A)``. Reading ``min ∅`` as ``+∞`` folds both clauses
into one rule: ``A ≺ B`` iff the smallest element of the symmetric
difference lies in ``A``. On sets of equal size this is the usual
lexicographic order of sorted tuples.

An L-initial family ``𝓛(R, k)`` consists of every k-set ``F ⪯ R``; ``R`` is
its ID and ``rank(n, k, R)`` its size. Ranks are computed from binomial
sums, so nothing here enumerates a family unless asked to through
``members``.

Examples
--------
>>> from crossfam.lexset import KSet, rank, unrank
>>> rank(4, 2, KSet.of(4, [2, 3]))
4
>>> str(unrank(9, 4, rank(9, 4, KSet.of(9, [1, 3, 4, 9]))))
'1,3,4,9'
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from enum import Enum
from functools import total_ordering
from itertools import combinations
from math import comb
from typing import NamedTuple

from crossfam.errors import InvalidInputError, SizeGuardError


logger = logging.getLogger(__name__)

DEFAULT_MEMBER_CAP = 10**6


# =============================================================================
# Enumerations
# =============================================================================


class Order(str, Enum):
    """Outcome of ``compare_lex``."""

    BEFORE = "before"
    EQUAL = "equal"
    AFTER = "after"


class Direction(str, Enum):
    """Direction for ``step``."""

    SUCC = "succ"
    PRED = "pred"


# =============================================================================
# The KSet Value Type
# =============================================================================


@total_ordering
@dataclass(frozen=True, slots=True)
class KSet:
    """
    A subset of ``[n]`` stored as a strictly increasing tuple.

    The empty set is allowed since cores and tails are often empty. A
    bitmask mirror (bit ``x - 1`` set for each element ``x``) backs the
    comparison and the intersection tests in the oracles.

    Attributes
    ----------
    n : int
        Size of the ambient ground set.
    elements : tuple[int, ...]
        The elements in increasing order.

    Examples
    --------
    >>> a = KSet.of(9, [7, 2, 4])
    >>> str(a), len(a), 4 in a
    ('2,4,7', 3, True)
    >>> KSet.of(9, [2, 4, 7]) < KSet.of(9, [2, 4, 9])
    True
    """

    n: int
    elements: tuple[int, ...]
    mask: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            msg = f"Ground set size must be nonnegative, got {self.n}"
            raise InvalidInputError(msg)
        elements = tuple(self.elements)
        mask = 0
        previous = 0
        for x in elements:
            if x <= previous or x > self.n:
                msg = (
                    f"Elements must be strictly increasing within [1, {self.n}], "
                    f"got {list(elements)}"
                )
                raise InvalidInputError(msg)
            mask |= 1 << (x - 1)
            previous = x
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "mask", mask)

    # -------------------------------------------------------------------------
    # Constructors
    # -------------------------------------------------------------------------

    @classmethod
    def of(cls, n: int, items: Iterable[int]) -> KSet:
        """Build a set from elements in any order (duplicates are rejected)."""
        return cls(n, tuple(sorted(items)))

    @classmethod
    def interval(cls, n: int, lo: int, hi: int) -> KSet:
        """The interval ``[lo, hi]``; empty when ``hi < lo``."""
        return cls(n, tuple(range(lo, hi + 1)))

    @classmethod
    def parse(cls, n: int, text: str) -> KSet:
        """
        Parse the comma-joined form used in every output, e.g. ``"1,3,4,9"``.

        Surrounding braces and whitespace are tolerated; ``""`` and ``"{}"``
        denote the empty set.

        Raises
        ------
        InvalidInputError
            If a token is not an integer or the elements are out of range.
        """
        body = text.strip().strip("{}").strip()
        if not body:
            return cls(n, ())
        try:
            items = [int(token) for token in body.split(",")]
        except ValueError:
            msg = f"Cannot parse a set from {text!r}; expected e.g. '1,3,4,9'"
            raise InvalidInputError(msg) from None
        return cls.of(n, items)

    # -------------------------------------------------------------------------
    # Container protocol
    # -------------------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and 1 <= x <= self.n and bool(self.mask >> (x - 1) & 1)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, KSet):
            return NotImplemented
        return compare_lex(self, other) is Order.BEFORE

    def __str__(self) -> str:
        return ",".join(map(str, self.elements))

    def __repr__(self) -> str:
        return f"KSet(n={self.n}, {{{self}}})"

    # -------------------------------------------------------------------------
    # Derived values
    # -------------------------------------------------------------------------

    @property
    def max_element(self) -> int:
        """Largest element, with ``max ∅ = 0``."""
        return self.elements[-1] if self.elements else 0

    @property
    def min_element(self) -> int:
        """Smallest element, with ``min ∅ = n + 1``."""
        return self.elements[0] if self.elements else self.n + 1

    def union(self, other: Iterable[int]) -> KSet:
        """Union with another set or iterable of elements."""
        return KSet.of(self.n, set(self.elements).union(other))

    def difference(self, other: Iterable[int]) -> KSet:
        """Elements of ``self`` not in ``other``."""
        drop = set(other)
        return KSet(self.n, tuple(x for x in self.elements if x not in drop))

    def with_n(self, n: int) -> KSet:
        """The same elements over a different ground set."""
        return KSet(n, self.elements)

    def intersects(self, other: KSet) -> bool:
        """Whether the two sets share an element."""
        return bool(self.mask & other.mask)


class Decomposition(NamedTuple):
    """Result of ``decompose``: ``ell``, ``tail`` and ``core`` of a set."""

    ell: int
    tail: KSet
    core: KSet


# =============================================================================
# Helpers
# =============================================================================


def binom(n: int, k: int) -> int:
    """Binomial coefficient that is 0 outside ``0 <= k <= n``."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def _check_set(n: int, k: int | None, r: KSet) -> None:
    if r.n != n:
        msg = f"Set {{{r}}} lives on [{r.n}], not on [{n}]"
        raise InvalidInputError(msg)
    if k is not None and len(r) != k:
        msg = f"Expected a {k}-set, got {{{r}}} of size {len(r)}"
        raise InvalidInputError(msg)


def first_kset(n: int, k: int) -> KSet:
    """The lex-first k-set ``[k]``."""
    return KSet.interval(n, 1, k)


def last_kset(n: int, k: int) -> KSet:
    """The lex-last k-set ``[n-k+1, n]``."""
    return KSet.interval(n, n - k + 1, n)


# =============================================================================
# Order, Rank and Unrank
# =============================================================================


def compare_lex(a: KSet, b: KSet) -> Order:
    """
    Compare two finite sets in lex order.

    Parameters
    ----------
    a, b : KSet
        Sets over the same ground set; sizes may differ.

    Returns
    -------
    Order
        ``BEFORE`` when ``a ≺ b``, ``EQUAL`` when ``a = b``, else ``AFTER``.

    Raises
    ------
    InvalidInputError
        If the ground sets differ.

    Examples
    --------
    >>> compare_lex(KSet.of(4, [1, 2, 3]), KSet.of(4, [1, 2]))
    <Order.BEFORE: 'before'>
    >>> compare_lex(KSet.of(4, [1, 3]), KSet.of(4, [1, 2, 4]))
    <Order.AFTER: 'after'>
    """
    if a.n != b.n:
        msg = f"Cannot compare sets over [{a.n}] and [{b.n}]"
        raise InvalidInputError(msg)
    diff = a.mask ^ b.mask
    if not diff:
        return Order.EQUAL
    lowest = diff & -diff
    return Order.BEFORE if a.mask & lowest else Order.AFTER


def precedes(a: KSet, b: KSet) -> bool:
    """``a ⪯ b``."""
    return compare_lex(a, b) is not Order.AFTER


def rank(n: int, k: int, r: KSet) -> int:
    """
    Size of the L-initial family ``𝓛(r, k)``.

    At each position ``i`` the k-sets agreeing with ``r`` before ``i`` and
    holding a smaller element ``y`` at ``i`` number ``C(n - y, k - i)``;
    summing over ``y`` telescopes to a difference of two binomials.

    Raises
    ------
    InvalidInputError
        If ``|r| != k`` or ``r`` is not over ``[n]``.
    """
    _check_set(n, k, r)
    total = 1
    previous = 0
    for i, x in enumerate(r.elements, start=1):
        total += binom(n - previous, k - i + 1) - binom(n - x + 1, k - i + 1)
        previous = x
    return total


def rank_general(n: int, k: int, h: KSet) -> int:
    """
    Number of k-sets ``F`` with ``F ⪯ h``, where ``|h|`` may differ from k.

    Counts the k-sets that first fall below ``h`` at some position, plus the
    supersets of ``h`` when ``k >= |h|``. Returns 0 when ``h`` begins with
    ``[k]`` and ``k < |h|``, since every k-set then follows ``h``.
    """
    _check_set(n, None, h)
    total = 0
    previous = 0
    for i, y in enumerate(h.elements[:k], start=1):
        total += binom(n - previous, k - i + 1) - binom(n - y + 1, k - i + 1)
        previous = y
    if k >= len(h):
        total += binom(n - previous, k - len(h))
    return total


def unrank(n: int, k: int, r: int) -> KSet:
    """
    The k-set of rank ``r``.

    Raises
    ------
    InvalidInputError
        If ``r`` is outside ``[1, C(n, k)]``.
    """
    size = binom(n, k)
    if not 1 <= r <= size:
        msg = f"Rank {r} out of range [1, {size}] for {k}-sets of [{n}]"
        raise InvalidInputError(msg)
    remaining = r - 1
    elements: list[int] = []
    x = 0
    for i in range(1, k + 1):
        x += 1
        while remaining >= (block := binom(n - x, k - i)):
            remaining -= block
            x += 1
        elements.append(x)
    return KSet(n, tuple(elements))


# =============================================================================
# Stepping and Enumeration
# =============================================================================


def step(n: int, k: int, r: KSet, direction: Direction = Direction.SUCC) -> KSet | None:
    """
    Immediate lex successor or predecessor among the k-sets of ``[n]``.

    Returns ``None`` past either end.

    Examples
    --------
    >>> str(step(4, 2, KSet.of(4, [1, 4])))
    '2,3'
    >>> step(4, 2, KSet.of(4, [1, 2]), Direction.PRED) is None
    True
    """
    _check_set(n, k, r)
    els = r.elements
    if direction is Direction.SUCC:
        for i in range(k - 1, -1, -1):
            if els[i] < n - k + i + 1:
                base = els[i] + 1
                return KSet(n, els[:i] + tuple(range(base, base + k - i)))
        return None
    for i in range(k - 1, -1, -1):
        floor = els[i - 1] if i > 0 else 0
        if els[i] - 1 > floor:
            return KSet(n, (*els[:i], els[i] - 1, *range(n - k + i + 2, n + 1)))
    return None


def iter_ksets(
    n: int,
    k: int,
    start: KSet | None = None,
    stop: KSet | None = None,
) -> Iterator[KSet]:
    """
    Lazily yield the k-sets from ``start`` to ``stop`` inclusive, in lex order.

    Both ends default to the first and last k-set. Nothing is yielded when
    ``stop`` precedes ``start``.
    """
    if k > n:
        return
    if start is None and stop is None:
        for combo in combinations(range(1, n + 1), k):
            yield KSet(n, combo)
        return
    current = start if start is not None else first_kset(n, k)
    _check_set(n, k, current)
    if stop is not None:
        _check_set(n, k, stop)
        if stop < current:
            return
    while current is not None:
        yield current
        if current == stop:
            return
        current = step(n, k, current)


def members(n: int, k: int, r: KSet, cap: int = DEFAULT_MEMBER_CAP) -> list[KSet]:
    """
    Materialize ``𝓛(r, k)`` in lex order.

    Raises
    ------
    SizeGuardError
        If the family has more than ``cap`` members.
    """
    size = rank(n, k, r)
    if size > cap:
        raise SizeGuardError(f"members of L({{{r}}}, {k})", size, cap)
    logger.debug("Materializing %d members of L({%s}, %d)", size, r, k)
    return list(iter_ksets(n, k, stop=r))


# =============================================================================
# Tail, Core and c-Sequential Steps
# =============================================================================


def decompose(n: int, f: KSet) -> Decomposition:
    """
    Split ``f`` into its tail ``[n-ℓ+1, n]`` and its core ``f ∖ tail``.

    ``ℓ(f)`` is the length of the run of ``f`` ending at ``n``.

    Examples
    --------
    >>> decompose(9, KSet.of(9, [2, 4, 9]))
    Decomposition(ell=1, tail=KSet(n=9, {9}), core=KSet(n=9, {2,4}))
    """
    _check_set(n, None, f)
    els = f.elements
    ell = 0
    while ell < len(els) and els[-1 - ell] == n - ell:
        ell += 1
    cut = len(els) - ell
    return Decomposition(ell, KSet(n, els[cut:]), KSet(n, els[:cut]))


def tail_length(n: int, f: KSet) -> int:
    """``ℓ(f)``."""
    return decompose(n, f).ell


def core_of(n: int, f: KSet) -> KSet:
    """``f`` with its tail removed."""
    return decompose(n, f).core


def seq_step(n: int, f: KSet, c: int) -> KSet | None:
    """
    Next set of the c-sequential chain through ``f``.

    ``f`` must end in a block of ``c`` consecutive elements; the block moves
    up by one. Returns ``None`` once the block already ends at ``n``.

    Raises
    ------
    InvalidInputError
        If ``c`` is outside ``[1, |f|]`` or the last ``c`` elements are not
        consecutive.

    Examples
    --------
    >>> str(seq_step(9, KSet.of(9, [2, 3, 4]), 2))
    '2,4,5'
    """
    _check_set(n, None, f)
    if not 1 <= c <= len(f):
        msg = f"Block length {c} must lie in [1, {len(f)}]"
        raise InvalidInputError(msg)
    block = f.elements[-c:]
    if block[-1] - block[0] != c - 1:
        msg = f"The last {c} elements of {{{f}}} are not consecutive"
        raise InvalidInputError(msg)
    if block[-1] == n:
        return None
    return KSet(n, f.elements[:-c] + tuple(x + 1 for x in block))


def is_seq_decomposable(f: KSet, c: int) -> bool:
    """Whether ``seq_step(f, c)`` is defined (ignoring the upper boundary)."""
    if not 1 <= c <= len(f):
        return False
    block = f.elements[-c:]
    return block[-1] - block[0] == c - 1
