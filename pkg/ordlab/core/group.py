"""
BS(1,n) = <a, b | b^-1 a b = a^n> as a concrete group.

Every element has the unique normal form a^r b^s with r in Z[1/n] and s in Z.
The product law is read off the affine action x -> n^-s x + r:

    (r, s) * (r', s') = (r + n^-s r', s + s')

Also provides balls in the word metric and a fixed computable enumeration
g_0 = id, g_1, g_2, ... used by dynamical realizations.
"""

import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Union

from .errors import BaseMismatchError
from .numeric import NAdic, nadic_from_rat, nadic_scale_pow, nadic_zero, rat_text

logger = logging.getLogger(__name__)


# =============================================================================
# ELEMENTS
# =============================================================================

@dataclass(frozen=True, slots=True)
class GroupElement:
    """The element a^r b^s in normal form."""

    r: NAdic
    s: int

    @property
    def n(self) -> int:
        return self.r.n

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return mul(self, other)

    def __invert__(self) -> "GroupElement":
        return inv(self)

    def __str__(self) -> str:
        return element_text(self) or "id"

    def is_identity(self) -> bool:
        return self.s == 0 and self.r.is_zero()

    def sort_key(self) -> tuple:
        return (self.s, self.r.to_fraction())


def element(r: Union[NAdic, Fraction, int], s: int, n: int) -> GroupElement:
    """Build a^r b^s from any exact r in Z[1/n]."""
    if isinstance(r, NAdic):
        if r.n != n:
            raise BaseMismatchError(f"exponent over Z[1/{r.n}] used in BS(1,{n})")
        return GroupElement(r, s)
    return GroupElement(nadic_from_rat(r, n), s)


def identity(n: int) -> GroupElement:
    return GroupElement(nadic_zero(n), 0)


def gen_a(n: int) -> GroupElement:
    return GroupElement(NAdic(1, 0, n), 0)


def gen_b(n: int) -> GroupElement:
    return GroupElement(NAdic(0, 0, n), 1)


def generators(n: int) -> tuple[GroupElement, ...]:
    """a, a^-1, b, b^-1."""
    a, b = gen_a(n), gen_b(n)
    return (a, inv(a), b, inv(b))


# =============================================================================
# GROUP LAW
# =============================================================================

def mul(g: GroupElement, h: GroupElement) -> GroupElement:
    if g.n != h.n:
        raise BaseMismatchError(f"cannot multiply elements of BS(1,{g.n}) and BS(1,{h.n})")
    return GroupElement(g.r + nadic_scale_pow(h.r, -g.s), g.s + h.s)


def inv(g: GroupElement) -> GroupElement:
    return GroupElement(-nadic_scale_pow(g.r, g.s), -g.s)


def power(g: GroupElement, k: int) -> GroupElement:
    """g^k for any integer k, by repeated squaring."""
    base = g if k >= 0 else inv(g)
    k = abs(k)
    result = identity(g.n)
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


def conjugate_element(h: GroupElement, g: GroupElement) -> GroupElement:
    """h^g = g^-1 h g."""
    return mul(mul(inv(g), h), g)


def quotient(g: GroupElement) -> int:
    """Image in Z under BS(1,n) -> BS(1,n)/<<a>>."""
    return g.s


def is_power_of(g: GroupElement, gamma: GroupElement) -> bool:
    """Whether g = gamma^k for some integer k (gamma with s != 0)."""
    if gamma.s == 0:
        raise ValueError("is_power_of needs a generator with s != 0")
    if g.s % gamma.s != 0:
        return False
    return power(gamma, g.s // gamma.s) == g


def element_text(g: GroupElement) -> str:
    """Parseable word for g, empty for the identity."""
    parts = []
    if not g.r.is_zero():
        parts.append(f"a^{{{g.r}}}")
    if g.s != 0:
        parts.append(f"b^{g.s}")
    return " ".join(parts)


def element_display(g: GroupElement) -> str:
    """Human-readable a^r b^s with r as a reduced fraction."""
    if g.is_identity():
        return "id"
    parts = []
    if not g.r.is_zero():
        parts.append(f"a^{rat_text(g.r.to_fraction())}")
    if g.s != 0:
        parts.append(f"b^{g.s}")
    return " ".join(parts)


# =============================================================================
# BALLS
# =============================================================================

@dataclass(frozen=True)
class BallEnumeration:
    """All products of at most `radius` generators, deduplicated, in canonical order."""

    radius: int
    n: int
    elements: tuple[GroupElement, ...]
    lengths: dict = field(compare=False, repr=False)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.lengths

    def length(self, g: GroupElement) -> int:
        """Word length of g (the radius at which it first appears)."""
        return self.lengths[g]

    def nontrivial(self) -> list[GroupElement]:
        return [g for g in self.elements if not g.is_identity()]

    def within(self, radius: int) -> list[GroupElement]:
        """Elements of the sub-ball of the given radius, in order."""
        return [g for g in self.elements if self.lengths[g] <= radius]


def word_length(g: GroupElement, L: int) -> Optional[int]:
    """Word length of g if it is at most L, else None."""
    enumeration = ball(L, g.n)
    return enumeration.length(g) if g in enumeration else None


@lru_cache(maxsize=32)
def ball(L: int, n: int) -> BallEnumeration:
    """
    The ball of radius L in the word metric on {a, a^-1, b, b^-1}.

    Order is (first-discovered length, s, r), so fixtures are deterministic.
    """
    if L < 0:
        raise ValueError(f"ball radius must be non-negative, got {L}")
    gens = generators(n)
    start = identity(n)
    lengths = {start: 0}
    frontier = [start]
    for length in range(1, L + 1):
        next_frontier = []
        for g in frontier:
            for x in gens:
                h = mul(g, x)
                if h not in lengths:
                    lengths[h] = length
                    next_frontier.append(h)
        frontier = next_frontier
    ordered = sorted(lengths, key=lambda g: (lengths[g], g.s, g.r.to_fraction()))
    logger.debug(f"ball({L}) in BS(1,{n}): {len(ordered)} elements")
    return BallEnumeration(radius=L, n=n, elements=tuple(ordered), lengths=lengths)


# =============================================================================
# ENUMERATION
# =============================================================================

def _shell(height: int, n: int) -> Iterator[GroupElement]:
    """Canonical (s, m, k) with |s| + |m| + k = height, in a fixed order."""
    for k in range(height + 1):
        for s_abs in range(height - k + 1):
            m_abs = height - k - s_abs
            for s in dict.fromkeys((s_abs, -s_abs)):
                for m in dict.fromkeys((m_abs, -m_abs)):
                    if k > 0 and (m == 0 or m % n == 0):
                        continue
                    yield GroupElement(NAdic(m, k, n), s)


def iter_elements(n: int) -> Iterator[GroupElement]:
    """g_0 = id, g_1, ... : every element of BS(1,n) exactly once."""
    height = 0
    while True:
        yield from _shell(height, n)
        height += 1


class _Enumeration:
    """Prefix cache of iter_elements, shared across threads."""

    def __init__(self, n: int):
        self._source = iter_elements(n)
        self._items: list[GroupElement] = []
        self._lock = threading.Lock()

    def prefix(self, count: int) -> list[GroupElement]:
        with self._lock:
            while len(self._items) < count:
                self._items.append(next(self._source))
            return self._items[:count]


_enumerations: dict[int, _Enumeration] = {}
_enumerations_lock = threading.Lock()


def _enumeration(n: int) -> _Enumeration:
    with _enumerations_lock:
        if n not in _enumerations:
            _enumerations[n] = _Enumeration(n)
        return _enumerations[n]


def enumerate_elements(count: int, n: int) -> list[GroupElement]:
    """The first `count` elements g_0, ..., g_{count-1}."""
    return _enumeration(n).prefix(count)


def element_at(i: int, n: int) -> GroupElement:
    """g_i of the fixed enumeration."""
    if i < 0:
        raise ValueError(f"enumeration index must be non-negative, got {i}")
    return _enumeration(n).prefix(i + 1)[i]


def index_of(g: GroupElement) -> int:
    """The index i with element_at(i) = g."""
    height = abs(g.s) + abs(g.r.m) + g.r.k
    index = 0
    for h in range(height):
        index += sum(1 for _ in _shell(h, g.n))
    for candidate in _shell(height, g.n):
        if candidate == g:
            return index
        index += 1
    raise AssertionError(f"{g} missing from its enumeration shell")
