"""
Orbit equivalence of reals reduced to tail equivalence of base-n digits.

x and y lie in one orbit exactly when the base-n expansions of their fractional
parts agree after shifting each by some amount: A(p + k) = B(q + k) for all k.
For rationals both directions are exact: a shift witness (p, q) turns back
into the group element a^{t/n^q} b^{q-p} with t = n^q y - n^p x.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from ..core.action import act
from ..core.config import settings
from ..core.errors import InvalidWitnessError, UnsupportedRepresentationError
from ..core.group import GroupElement, element
from ..core.models import NotEquivalent, RoundtripReport, Unknown, Verdict, digit_text
from ..core.reals import BasePoint, DigitStream, Rational, as_base_point, digits, rational_expansion

logger = logging.getLogger(__name__)


# =============================================================================
# DIGIT WORDS
# =============================================================================

@dataclass(frozen=True)
class DigitWord:
    """
    Base-n digits of a fractional part.

    Eventually periodic words keep a minimal preperiod and a primitive period.
    Words without a period are finite prefixes of a longer expansion;
    `irrational` marks prefixes known to come from an irrational number.
    """

    n: int
    pre: tuple[int, ...]
    period: tuple[int, ...] = ()
    irrational: bool = False

    @property
    def periodic(self) -> bool:
        return bool(self.period)

    @property
    def necklace(self) -> tuple[int, ...]:
        """Least rotation of the period."""
        if not self.period:
            return ()
        return min(self.period[i:] + self.period[:i] for i in range(len(self.period)))

    def __len__(self) -> int:
        """Number of known digits for prefixes; preperiod plus one period otherwise."""
        return len(self.pre) + len(self.period)

    def digit(self, k: int) -> int:
        if k < len(self.pre):
            return self.pre[k]
        if not self.period:
            raise IndexError(f"digit {k} beyond a known prefix of {len(self.pre)}")
        return self.period[(k - len(self.pre)) % len(self.period)]

    def truncate(self, k: int) -> Fraction:
        """Value of the first k digits."""
        value = Fraction(0)
        for i in range(k):
            value += Fraction(self.digit(i), self.n ** (i + 1))
        return value

    def to_json(self) -> dict:
        out = {"pre": digit_text(list(self.pre), self.n), "period": digit_text(list(self.period), self.n)}
        if not self.periodic:
            out["prefix_only"] = True
        return out


def digit_word(pre: Sequence[int], period: Sequence[int], n: int) -> DigitWord:
    """Canonical eventually periodic word: primitive period, minimal preperiod."""
    pre, period = list(pre), list(period)
    if not period:
        raise ValueError("an eventually periodic word needs a nonempty period")
    for size in range(1, len(period) + 1):
        if len(period) % size == 0 and period[:size] * (len(period) // size) == period:
            period = period[:size]
            break
    while pre and pre[-1] == period[-1]:
        period = [pre.pop()] + period[:-1]
    return DigitWord(n, tuple(pre), tuple(period))


@dataclass(frozen=True, slots=True)
class TailWitness:
    """Shifts with A(p + k) = B(q + k); uncertified when read off finite prefixes."""

    p: int
    q: int
    certified: bool = True

    def as_tuple(self) -> tuple[int, int]:
        return (self.p, self.q)


# =============================================================================
# OPERATIONS
# =============================================================================

def reduce(x: Union[BasePoint, Fraction, int], n: int, budget: Optional[int] = None) -> DigitWord:
    """
    Digits of the fractional part of x: exact for rationals, a prefix of
    `budget` digits otherwise.
    """
    x = as_base_point(x)
    if isinstance(x, Rational):
        pre, period = rational_expansion(x.value, n)
        return digit_word(pre, period, n)
    if isinstance(x, DigitStream):
        return DigitWord(n, tuple(digits(x, budget or x.budget, n)))
    return DigitWord(n, tuple(digits(x, budget or settings.digit_budget, n)), irrational=True)


def tail_equivalent(A: DigitWord, B: DigitWord) -> Union[TailWitness, Verdict]:
    """
    Minimal (by p + q, then p) shift witness, NotEquivalent, or Unknown.

    Two periodic words are decided exactly. A periodic word never matches a
    known irrational one. Anything else is a bounded search over prefixes.
    """
    if A.n != B.n:
        raise ValueError(f"digit words in bases {A.n} and {B.n}")
    if A.periodic and B.periodic:
        return _periodic_witness(A, B)
    if (A.periodic and B.irrational) or (B.periodic and A.irrational):
        return NotEquivalent
    return _prefix_witness(A, B)


def _periodic_witness(A: DigitWord, B: DigitWord) -> Union[TailWitness, Verdict]:
    if A.necklace != B.necklace:
        return NotEquivalent
    period = len(A.period)
    bound = len(A.pre) + len(B.pre) + 2 * period
    for total in range(bound + 1):
        for p in range(total + 1):
            q = total - p
            span = max(len(A.pre) - p, len(B.pre) - q, 0) + period
            if all(A.digit(p + k) == B.digit(q + k) for k in range(span)):
                return TailWitness(p, q)
    raise AssertionError("equal necklaces always align within the search bound")


def _prefix_witness(A: DigitWord, B: DigitWord) -> Union[TailWitness, Verdict]:
    reach = min(len(w) for w in (A, B) if not w.periodic) // 4
    match = 3 * reach
    if reach == 0:
        return Unknown
    for total in range(2 * reach + 1):
        for p in range(max(0, total - reach), min(total, reach) + 1):
            q = total - p
            if all(A.digit(p + k) == B.digit(q + k) for k in range(match)):
                logger.debug(f"prefixes agree at shifts ({p}, {q}) over {match} digits")
                return TailWitness(p, q, certified=False)
    logger.warning(f"no shift up to {reach} matches {match} digits; tail equivalence unknown")
    return Unknown


def _rational(x) -> Fraction:
    x = as_base_point(x)
    if not isinstance(x, Rational):
        raise UnsupportedRepresentationError(f"witness_to_group needs rational points, got {x}")
    return x.value


def witness_to_group(x, y, w: TailWitness, n: int) -> GroupElement:
    """
    The element g with rho(g)(x) = y encoded by a shift witness.

    Raises:
        InvalidWitnessError: if n^q y - n^p x is not an integer
    """
    x, y = _rational(x), _rational(y)
    t = n ** w.q * y - n ** w.p * x
    if t.denominator != 1:
        raise InvalidWitnessError(f"shifts ({w.p}, {w.q}) leave the non-integer residual {t}")
    g = element(t / n ** w.q, w.q - w.p, n)
    if act(g, x) != y:
        raise AssertionError(f"reconstructed {g} does not send {x} to {y}")
    return g


def orbit_equivalent_by_digits(x, y, n: int) -> Union[GroupElement, Verdict]:
    """Orbit equivalence of two rationals decided through their digit words."""
    x, y = _rational(x), _rational(y)
    witness = tail_equivalent(reduce(x, n), reduce(y, n))
    if not isinstance(witness, TailWitness):
        return witness
    return witness_to_group(x, y, witness, n)


def reduction_roundtrip_check(x, g: GroupElement, n: Optional[int] = None) -> RoundtripReport:
    """Send x to y = g(x), find a shift witness, and rebuild an element sending x to y."""
    n = n or g.n
    value = _rational(x)
    y = act(g, value)
    report = RoundtripReport(x=str(value), g=str(g), y=str(y))
    witness = tail_equivalent(reduce(value, n), reduce(y, n))
    if not isinstance(witness, TailWitness):
        report.passed = False
        report.detail = f"digit words judged {witness.value}"
        return report
    report.witness = witness.as_tuple()
    rebuilt = witness_to_group(value, y, witness, n)
    report.reconstructed = str(rebuilt)
    report.passed = act(rebuilt, value) == y
    return report
