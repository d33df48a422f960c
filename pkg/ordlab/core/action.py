"""
The affine action of BS(1,n) on the line: a^r b^s acts as x -> n^-s x + r.

Evaluation is exact for every representation except digit streams, which only
support the sign queries in reals.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from sympy.ntheory import n_order

from .errors import BaseMismatchError, NoFixedPointError, UnsupportedRepresentationError
from .group import GroupElement, element, identity
from .models import NotEquivalent, Verdict
from .numeric import NAdic, coprime_part, exact_log, is_nadic, nadic_from_rat, nadic_scale_pow, power_of_n
from .reals import DigitStream, Quadratic, Rational, is_exact

logger = logging.getLogger(__name__)

Point = Union[Rational, Quadratic, Fraction, NAdic, int]


# =============================================================================
# AFFINE MAPS
# =============================================================================

@dataclass(frozen=True, slots=True)
class AffineMap:
    """x -> slope * x + intercept, with slope a power of n."""

    slope: Fraction
    intercept: NAdic

    @property
    def n(self) -> int:
        return self.intercept.n

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self after other."""
        intercept = self.intercept + nadic_from_rat(self.slope * other.intercept.to_fraction(), self.n)
        return AffineMap(self.slope * other.slope, intercept)

    def evaluate(self, x: Point) -> Point:
        return _apply(self.slope, self.intercept, x)

    def to_element(self) -> GroupElement:
        s = exact_log(self.slope, self.n)
        if s is None:
            raise ValueError(f"slope {self.slope} is not a power of {self.n}")
        return GroupElement(self.intercept, -s)


def affine_map(g: GroupElement) -> AffineMap:
    return AffineMap(power_of_n(-g.s, g.n), g.r)


def _apply(slope: Fraction, intercept: NAdic, x: Point) -> Point:
    r = intercept.to_fraction()
    if isinstance(x, Rational):
        return Rational(slope * x.value + r)
    if isinstance(x, Quadratic):
        return Quadratic(slope * x.u + r, slope * x.v, x.d)
    if isinstance(x, NAdic):
        if x.n != intercept.n:
            raise BaseMismatchError(f"cannot act by an element of BS(1,{intercept.n}) on Z[1/{x.n}]")
        # slope is n^e, so scaling keeps x inside Z[1/n]
        return nadic_scale_pow(x, exact_log(slope, x.n)) + intercept
    if isinstance(x, DigitStream):
        raise UnsupportedRepresentationError("digit streams support sign queries only, not evaluation")
    return slope * Fraction(x) + r


# =============================================================================
# OPERATIONS
# =============================================================================

def act(g: GroupElement, x: Point) -> Point:
    """rho(g)(x), returned in the representation of x."""
    return _apply(power_of_n(-g.s, g.n), g.r, x)


def fixed_point(g: GroupElement) -> Fraction:
    """
    The unique fixed point r / (1 - n^-s) of an element with s != 0.

    Raises:
        NoFixedPointError: for translations and the identity
    """
    if g.s == 0:
        raise NoFixedPointError(f"{g} acts as a translation and has no unique fixed point")
    return g.r.to_fraction() / (1 - power_of_n(-g.s, g.n))


def stabilizer_generator(x: Union[Fraction, Rational, int], n: int) -> GroupElement:
    """
    Generator a^r b^-s of the stabilizer of a rational x.

    s is the order of n modulo the n-coprime part Q of the denominator of x
    (1 when Q = 1) and r = x(1 - n^s), so the element acts as n^s x + r.
    """
    value = x.value if isinstance(x, Rational) else Fraction(x)
    q = coprime_part(value.denominator, n)
    s = n_order(n, q) if q > 1 else 1
    gamma = element(nadic_from_rat(value * (1 - n ** s), n), -s, n)
    if act(gamma, value) != value:
        raise AssertionError(f"stabilizer recipe failed at {value} in BS(1,{n})")
    logger.debug(f"stabilizer of {value} in BS(1,{n}) generated by {gamma}")
    return gamma


def orbit_witness(eps: Point, delta: Point, n: int) -> Union[GroupElement, Verdict]:
    """
    Some g with rho(g)(eps) = delta, or NotEquivalent.

    Rational points: the witnesses form a coset of a stabilizer, so the one
    minimizing (|s|, |r|) is returned. Quadratic points need equal d, a power
    of n as the ratio of the sqrt(d) coefficients and an n-adic translation.

    Raises:
        UnsupportedRepresentationError: for streams or mixed kinds
    """
    eps, delta = _exact_point(eps), _exact_point(delta)
    if type(eps) is not type(delta):
        raise UnsupportedRepresentationError(
            f"orbit_witness needs two points of one kind, got {type(eps).__name__} and {type(delta).__name__}"
        )
    if isinstance(eps, Rational):
        return _rational_witness(eps.value, delta.value, n)
    return _quadratic_witness(eps, delta, n)


def _exact_point(x: Point) -> Union[Rational, Quadratic]:
    if isinstance(x, DigitStream):
        raise UnsupportedRepresentationError("orbit equivalence of digit streams is not decidable")
    if is_exact(x):
        return x
    if isinstance(x, NAdic):
        return Rational(x.to_fraction())
    return Rational(Fraction(x))


def _rational_witness(x: Fraction, y: Fraction, n: int) -> Union[GroupElement, Verdict]:
    q = coprime_part(x.denominator, n)
    if q != coprime_part(y.denominator, n):
        return NotEquivalent
    order = n_order(n, q) if q > 1 else 1
    best = None
    for s in range(-order, order + 1):
        r = y - power_of_n(-s, n) * x
        if not is_nadic(r, n):
            continue
        key = (abs(s), abs(r), -s)
        if best is None or key < best[0]:
            best = (key, element(r, s, n))
    if best is None:
        return NotEquivalent
    return best[1]


def _quadratic_witness(eps: Quadratic, delta: Quadratic, n: int) -> Union[GroupElement, Verdict]:
    if eps.d != delta.d:
        return NotEquivalent
    ratio = delta.v / eps.v
    e = exact_log(ratio, n)
    if e is None:
        return NotEquivalent
    r = delta.u - ratio * eps.u
    if not is_nadic(r, n):
        return NotEquivalent
    if e == 0 and r == 0:
        return identity(n)
    return element(r, -e, n)
