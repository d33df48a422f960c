"""
Exact base points and the sign queries cone membership needs.

Three representations:
- Rational(value)             an exact rational
- Quadratic(u, v, d)          u + v*sqrt(d), d square-free and > 1, v != 0
- DigitStream(...)            integer part plus a base-n digit oracle, with a budget

Rational and Quadratic answers are exact (integer casework, never digits).
DigitStream answers come from interval refinement and may be UNKNOWN when the
budget runs out; UNKNOWN is propagated, never guessed.
"""

import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, floor, isqrt
from typing import Callable, Iterator, Optional, Union

from sympy.ntheory import factorint

from .config import settings
from .errors import BaseMismatchError, BudgetExhaustedError
from .group import GroupElement
from .models import SignResult
from .numeric import power_of_n, sign_of

logger = logging.getLogger(__name__)


# =============================================================================
# REPRESENTATIONS
# =============================================================================

@dataclass(frozen=True, slots=True)
class Rational:
    """An exact rational base point."""

    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True, slots=True)
class Quadratic:
    """u + v*sqrt(d), irrational by construction; d is made square-free."""

    u: Fraction
    v: Fraction
    d: int

    def __post_init__(self):
        u, v, d = Fraction(self.u), Fraction(self.v), int(self.d)
        if v == 0:
            raise ValueError("quadratic base point needs v != 0")
        if d < 2:
            raise ValueError(f"quadratic base point needs a positive non-square d, got {d}")
        square, free = _square_free(d)
        if free == 1:
            raise ValueError(f"{d} is a perfect square; use a rational base point")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v * square)
        object.__setattr__(self, "d", free)

    def __str__(self) -> str:
        return f"{self.u} + {self.v}*sqrt({self.d})"


@lru_cache(maxsize=256)
def _square_free(d: int) -> tuple[int, int]:
    """d = square^2 * free with free square-free."""
    square, free = 1, 1
    for prime, exponent in factorint(d).items():
        square *= prime ** (exponent // 2)
        free *= prime ** (exponent % 2)
    return square, free


class DigitOracle:
    """
    Memoizing wrapper around a digit function index -> digit.

    The memo is guarded by a lock, so one oracle may be shared across threads.
    Index 0 is the first digit after the radix point.
    """

    def __init__(self, digit_fn: Callable[[int], int], n: int, name: str = "anonymous"):
        self._digit_fn = digit_fn
        self.n = n
        self.name = name
        self._memo: dict[int, int] = {}
        self._lock = threading.Lock()

    def __call__(self, index: int) -> int:
        with self._lock:
            if index not in self._memo:
                digit = self._digit_fn(index)
                if not 0 <= digit < self.n:
                    raise ValueError(f"stream {self.name!r} produced digit {digit} outside 0..{self.n - 1}")
                self._memo[index] = digit
            return self._memo[index]

    def __repr__(self) -> str:
        return f"DigitOracle({self.name!r}, n={self.n})"


@dataclass(frozen=True)
class DigitStream:
    """A computable real given by its integer part and base-n digits."""

    integer_part: int
    oracle: DigitOracle
    budget: int = field(default_factory=lambda: settings.digit_budget)

    def __post_init__(self):
        if self.budget <= 0:
            raise ValueError(f"digit budget must be positive, got {self.budget}")

    @property
    def n(self) -> int:
        return self.oracle.n

    @property
    def name(self) -> str:
        return self.oracle.name

    def __str__(self) -> str:
        return f"stream:{self.name}"


BasePoint = Union[Rational, Quadratic, DigitStream]


def as_base_point(x) -> BasePoint:
    """Coerce ints, Fractions and NAdic values to Rational base points."""
    if isinstance(x, (Rational, Quadratic, DigitStream)):
        return x
    if hasattr(x, "to_fraction"):
        return Rational(x.to_fraction())
    return Rational(Fraction(x))


def is_exact(x: BasePoint) -> bool:
    return isinstance(x, (Rational, Quadratic))


# =============================================================================
# EXACT QUADRATIC CASEWORK
# =============================================================================

def quadratic_sign(a: Fraction, b: Fraction, d: int) -> int:
    """Sign of a + b*sqrt(d) for non-square d, by signs and squaring."""
    sa, sb = sign_of(a), sign_of(b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: the larger square wins
    return sa if a * a > b * b * d else sb


def quadratic_floor(a: Fraction, b: Fraction, d: int) -> int:
    """floor(a + b*sqrt(d)) exactly, for non-square d and b != 0."""
    den = a.denominator * b.denominator
    shift = a.numerator * b.denominator
    c = b.numerator * a.denominator
    root = isqrt(c * c * d)
    # c*sqrt(d) lies strictly inside (low, low + 1)
    low = root if c > 0 else -root - 1
    return (shift + low) // den


def _to_sign(value: int) -> SignResult:
    return {1: SignResult.POSITIVE, 0: SignResult.ZERO, -1: SignResult.NEGATIVE}[value]


# =============================================================================
# STREAM REFINEMENT
# =============================================================================

def stream_intervals(eps: DigitStream) -> Iterator[tuple[Fraction, Fraction]]:
    """Nested intervals [lo, lo + n^-k] containing eps, for k = 0..budget."""
    n = eps.n
    numerator = eps.integer_part
    width = Fraction(1)
    yield Fraction(numerator), Fraction(numerator) + width
    for index in range(eps.budget):
        numerator = numerator * n + eps.oracle(index)
        width /= n
        low = numerator * width
        yield low, low + width


def _interval_sign(eps: DigitStream, coefficient: Fraction, constant: Fraction) -> SignResult:
    """Sign of coefficient*eps + constant by refining eps."""
    for low, high in stream_intervals(eps):
        at_low = sign_of(coefficient * low + constant)
        at_high = sign_of(coefficient * high + constant)
        if at_low == at_high and at_low != 0:
            return _to_sign(at_low)
    logger.warning(f"digit budget {eps.budget} exhausted deciding a sign on {eps}")
    return SignResult.UNKNOWN


# =============================================================================
# OPERATIONS
# =============================================================================

def sign_affine_form(eps: BasePoint, g: GroupElement) -> SignResult:
    """
    Sign of rho(g)(eps) - eps = (n^-s - 1)*eps + r.

    Exact for Rational and Quadratic base points; interval refinement up to
    the budget for streams.
    """
    c = power_of_n(-g.s, g.n) - 1
    r = g.r.to_fraction()
    if c == 0:
        return _to_sign(sign_of(r))
    if isinstance(eps, Rational):
        return _to_sign(sign_of(c * eps.value + r))
    if isinstance(eps, Quadratic):
        return _to_sign(quadratic_sign(c * eps.u + r, c * eps.v, eps.d))
    if eps.n != g.n:
        raise BaseMismatchError(f"base-{eps.n} stream queried with an element of BS(1,{g.n})")
    return _interval_sign(eps, c, r)


def compare_to_rat(eps: BasePoint, q: Fraction) -> SignResult:
    """Sign of eps - q."""
    q = Fraction(q)
    if isinstance(eps, Rational):
        return _to_sign(sign_of(eps.value - q))
    if isinstance(eps, Quadratic):
        return _to_sign(quadratic_sign(eps.u - q, eps.v, eps.d))
    return _interval_sign(eps, Fraction(1), -q)


def floor_value(eps: BasePoint) -> int:
    if isinstance(eps, Rational):
        return floor(eps.value)
    if isinstance(eps, Quadratic):
        return quadratic_floor(eps.u, eps.v, eps.d)
    return eps.integer_part


def rational_expansion(q: Fraction, n: int) -> tuple[list[int], list[int]]:
    """
    Base-n digits of the fractional part of q as (preperiod, period).

    Long division; the first repeated remainder closes the period, so the
    preperiod is minimal and the period primitive. Terminating expansions end
    in the period [0].
    """
    q = Fraction(q)
    remainder = q.numerator - floor(q) * q.denominator
    seen: dict[int, int] = {}
    digits: list[int] = []
    while remainder not in seen:
        seen[remainder] = len(digits)
        remainder *= n
        digits.append(remainder // q.denominator)
        remainder %= q.denominator
    start = seen[remainder]
    return digits[:start], digits[start:]


def digits(eps: BasePoint, count: int, n: Optional[int] = None) -> list[int]:
    """
    First `count` base-n digits of the fractional part of eps.

    Raises:
        BudgetExhaustedError: if a stream is asked for more digits than its budget
    """
    if isinstance(eps, DigitStream):
        if n is not None and n != eps.n:
            raise BaseMismatchError(f"base-{eps.n} stream asked for base-{n} digits")
        if count > eps.budget:
            raise BudgetExhaustedError(f"{count} digits requested from {eps} with budget {eps.budget}")
        return [eps.oracle(i) for i in range(count)]
    if n is None:
        raise ValueError("the base n is required for exact base points")
    if isinstance(eps, Rational):
        pre, period = rational_expansion(eps.value, n)
        out = list(pre[:count])
        while len(out) < count:
            out.extend(period)
        return out[:count]
    # F_k = floor(n^k * eps); digit k is F_k - n * F_{k-1}
    out = []
    previous = quadratic_floor(eps.u, eps.v, eps.d)
    scale = 1
    for _ in range(count):
        scale *= n
        current = quadratic_floor(eps.u * scale, eps.v * scale, eps.d)
        out.append(current - n * previous)
        previous = current
    return out


# =============================================================================
# NAMED STREAMS
# =============================================================================

def stream_from_point(eps: BasePoint, n: int, budget: Optional[int] = None, name: str = "") -> DigitStream:
    """Wrap an exact base point as a digit stream (its digits computed exactly)."""
    if isinstance(eps, DigitStream):
        return eps

    def digit_fn(index: int) -> int:
        return digits(eps, index + 1, n)[index]

    oracle = DigitOracle(digit_fn, n, name or str(eps))
    return DigitStream(floor_value(eps), oracle, budget or settings.digit_budget)


def _liouville(n: int, budget: int) -> DigitStream:
    factorials = set()
    k = 1
    while factorial(k) <= budget + 1:
        factorials.add(factorial(k))
        k += 1

    def digit_fn(index: int) -> int:
        return 1 if index + 1 in factorials else 0

    return DigitStream(0, DigitOracle(digit_fn, n, "liouville"), budget)


STREAMS: dict[str, Callable[[int, int], DigitStream]] = {
    "liouville": _liouville,
    "sqrt2": lambda n, budget: stream_from_point(Quadratic(0, 1, 2), n, budget, "sqrt2"),
    "sqrt3": lambda n, budget: stream_from_point(Quadratic(0, 1, 3), n, budget, "sqrt3"),
}


def named_stream(name: str, n: int, budget: Optional[int] = None) -> DigitStream:
    """Look up a registered stream by the name used in `stream:<name>` literals."""
    if name not in STREAMS:
        raise KeyError(f"unknown stream {name!r}; known: {', '.join(sorted(STREAMS))}")
    return STREAMS[name](n, budget or settings.digit_budget)
