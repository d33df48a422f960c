"""
Exact arithmetic in Z[1/n] and Q.

NAdic values are stored as (m, k) with value m / n^k and the exponent k kept
minimal. For composite n minimality is the canonical condition, not
coprimality: 5/10 has minimal exponent 1 although gcd(5, 10) = 5.

Rationals are plain fractions.Fraction values (aliased Rat).
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import gcd
from typing import Optional, Union

from .errors import BaseMismatchError, ExponentError

Rat = Fraction

NADIC_TEXT = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*(?:\^\s*(\d+))?)?\s*$")


# =============================================================================
# NADIC
# =============================================================================

@total_ordering
@dataclass(frozen=True, slots=True)
class NAdic:
    """An element m / n^k of Z[1/n], always stored with minimal k."""

    m: int
    k: int
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"base n must be at least 2, got {self.n}")
        if self.k < 0:
            raise ValueError(f"exponent k must be non-negative, got {self.k}")
        m, k = self.m, self.k
        if m == 0:
            k = 0
        while k > 0 and m % self.n == 0:
            m //= self.n
            k -= 1
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "k", k)

    def __str__(self) -> str:
        return f"{self.m}/{self.n}^{self.k}"

    def __add__(self, other: "NAdic") -> "NAdic":
        return nadic_add(self, other)

    def __sub__(self, other: "NAdic") -> "NAdic":
        return nadic_sub(self, other)

    def __neg__(self) -> "NAdic":
        return nadic_neg(self)

    def __mul__(self, other: "NAdic") -> "NAdic":
        return nadic_mul(self, other)

    def __lt__(self, other: "NAdic") -> bool:
        return nadic_cmp(self, other) < 0

    def is_zero(self) -> bool:
        return self.m == 0

    def sign(self) -> int:
        return (self.m > 0) - (self.m < 0)

    def to_fraction(self) -> Fraction:
        return Fraction(self.m, self.n ** self.k)


def _check_base(x: NAdic, y: NAdic) -> None:
    if x.n != y.n:
        raise BaseMismatchError(f"cannot combine Z[1/{x.n}] with Z[1/{y.n}]")


def nadic_normalize(m: int, k: int, n: int) -> NAdic:
    """Canonical form of m / n^k (minimal exponent, zero at exponent 0)."""
    return NAdic(m, k, n)


def nadic_zero(n: int) -> NAdic:
    return NAdic(0, 0, n)


def nadic_add(x: NAdic, y: NAdic) -> NAdic:
    _check_base(x, y)
    k = max(x.k, y.k)
    return NAdic(x.m * x.n ** (k - x.k) + y.m * y.n ** (k - y.k), k, x.n)


def nadic_neg(x: NAdic) -> NAdic:
    return NAdic(-x.m, x.k, x.n)


def nadic_sub(x: NAdic, y: NAdic) -> NAdic:
    return nadic_add(x, nadic_neg(y))


def nadic_mul(x: NAdic, y: NAdic) -> NAdic:
    _check_base(x, y)
    return NAdic(x.m * y.m, x.k + y.k, x.n)


def nadic_to_rat(x: NAdic) -> Fraction:
    return x.to_fraction()


def nadic_cmp(x: NAdic, y: NAdic) -> int:
    """Sign of x - y as -1, 0 or 1."""
    _check_base(x, y)
    k = max(x.k, y.k)
    left = x.m * x.n ** (k - x.k)
    right = y.m * y.n ** (k - y.k)
    return (left > right) - (left < right)


def nadic_scale_pow(x: NAdic, e: int) -> NAdic:
    """x * n^e for any integer e."""
    if e >= 0:
        return NAdic(x.m * x.n ** e, x.k, x.n)
    return NAdic(x.m, x.k - e, x.n)


# =============================================================================
# RATIONAL HELPERS
# =============================================================================

def coprime_part(q: int, n: int) -> int:
    """Largest divisor of q sharing no prime factor with n."""
    q = abs(q)
    g = gcd(q, n)
    while g > 1:
        while q % g == 0:
            q //= g
        g = gcd(q, n)
    return q


def is_nadic(value: Union[Fraction, int], n: int) -> bool:
    """Whether a rational lies in Z[1/n]."""
    return coprime_part(Fraction(value).denominator, n) == 1


def nadic_from_rat(value: Union[Fraction, int], n: int) -> NAdic:
    """Exact conversion of a rational into Z[1/n]."""
    value = Fraction(value)
    den = value.denominator
    if coprime_part(den, n) != 1:
        raise ExponentError(f"{value} is not in Z[1/{n}]")
    k, power = 0, 1
    while power % den != 0:
        power *= n
        k += 1
    return NAdic(value.numerator * (power // den), k, n)


def power_of_n(e: int, n: int) -> Fraction:
    """n^e as an exact rational, e may be negative."""
    return Fraction(n ** e) if e >= 0 else Fraction(1, n ** (-e))


def exact_log(value: Fraction, n: int) -> Optional[int]:
    """The integer e with value = n^e, or None when value is not a power of n."""
    value = Fraction(value)
    if value <= 0:
        return None
    if value.denominator == 1:
        num, sign = value.numerator, 1
    elif value.numerator == 1:
        num, sign = value.denominator, -1
    else:
        return None
    e = 0
    while num % n == 0:
        num //= n
        e += 1
    return sign * e if num == 1 else None


def sign_of(value: Union[Fraction, int]) -> int:
    return (value > 0) - (value < 0)


# =============================================================================
# TEXT
# =============================================================================

def parse_nadic(text: str, n: int) -> NAdic:
    """
    Parse "m/n^k", "m/d" (d a divisor of a power of n) or an integer "m".

    Raises:
        ExponentError: if the text is malformed, the stated base is not n,
            or the value is outside Z[1/n]
    """
    match = NADIC_TEXT.match(text)
    if not match:
        raise ExponentError(f"not a Z[1/{n}] literal: {text!r}")
    numerator, denominator, exponent = match.groups()
    if denominator is None:
        return NAdic(int(numerator), 0, n)
    if exponent is not None:
        if int(denominator) != n:
            raise ExponentError(f"literal {text!r} is written over base {denominator}, expected {n}")
        return NAdic(int(numerator), int(exponent), n)
    if int(denominator) == 0:
        raise ExponentError(f"zero denominator in {text!r}")
    return nadic_from_rat(Fraction(int(numerator), int(denominator)), n)


def rat_text(value: Fraction) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
