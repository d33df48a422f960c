"""
The ten positive cones of BS(1,n) as membership oracles.

Tags (ASCII; "∞" and the unicode minus are accepted on input):

    Pinf<s><r>   bi-orderings: sign of s decides, then sign of r when s = 0
    P+, P-       rho(g)(eps) > eps   (resp. <), eps irrational
    Q<x><y>      sign x of rho(g)(eps) - eps; when g fixes eps, y = '+' means
                 rho(g)(eps + 1) > eps + 1, i.e. s(g) < 0

Conjugation moves the base point: g(P_eps) = P_{rho(g)(eps)}, and fixes the
four bi-orderings.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Optional, Protocol, Union

from ..core.action import act, orbit_witness
from ..core.errors import ConeTypeError, InsufficientPointsError, UnsupportedRepresentationError
from ..core.group import GroupElement, ball, identity, inv, mul
from ..core.models import ConeCheckReport, Membership, NotEquivalent, SignResult, Verdict, Violation
from ..core.reals import BasePoint, DigitStream, Quadratic, Rational, as_base_point, sign_affine_form

logger = logging.getLogger(__name__)


# =============================================================================
# TAGS AND DESCRIPTORS
# =============================================================================

class ConeTag(str, Enum):
    PINF_PP = "Pinf++"
    PINF_PM = "Pinf+-"
    PINF_MP = "Pinf-+"
    PINF_MM = "Pinf--"
    P_PLUS = "P+"
    P_MINUS = "P-"
    Q_PP = "Q++"
    Q_PM = "Q+-"
    Q_MP = "Q-+"
    Q_MM = "Q--"

    @classmethod
    def parse(cls, text: str) -> "ConeTag":
        cleaned = text.strip().replace("∞", "inf").replace("−", "-").replace("P_inf", "Pinf")
        try:
            return cls(cleaned)
        except ValueError:
            known = ", ".join(tag.value for tag in cls)
            raise ConeTypeError(f"unknown cone tag {text!r}; expected one of {known}") from None

    @property
    def family(self) -> str:
        return self.value.rstrip("+-")

    @property
    def signs(self) -> str:
        return self.value[len(self.family):]

    def reversed(self) -> "ConeTag":
        flipped = self.signs.translate(str.maketrans("+-", "-+"))
        return ConeTag(self.family + flipped)


PINF_TAGS = (ConeTag.PINF_PP, ConeTag.PINF_PM, ConeTag.PINF_MP, ConeTag.PINF_MM)
Q_TAGS = (ConeTag.Q_PP, ConeTag.Q_PM, ConeTag.Q_MP, ConeTag.Q_MM)


@dataclass(frozen=True)
class ConeDescriptor:
    """One of the ten cone types together with its base point."""

    tag: ConeTag
    base: Optional[BasePoint] = None

    def __post_init__(self):
        tag = self.tag if isinstance(self.tag, ConeTag) else ConeTag.parse(self.tag)
        object.__setattr__(self, "tag", tag)
        family = tag.family
        if family == "Pinf":
            if self.base is not None:
                raise ConeTypeError(f"{tag.value} takes no base point")
            return
        if self.base is None:
            raise ConeTypeError(f"{tag.value} needs a base point")
        base = as_base_point(self.base)
        object.__setattr__(self, "base", base)
        if family == "P" and isinstance(base, Rational):
            raise ConeTypeError(f"{tag.value} needs an irrational base, got {base}")
        if family == "Q" and not isinstance(base, Rational):
            raise ConeTypeError(f"{tag.value} needs a rational base, got {base}")

    def __str__(self) -> str:
        return self.tag.value if self.base is None else f"{self.tag.value}[{self.base}]"


def cone(tag: Union[str, ConeTag], base=None) -> ConeDescriptor:
    """Shorthand constructor accepting text tags and plain numbers as bases."""
    return ConeDescriptor(ConeTag.parse(tag) if isinstance(tag, str) else tag, base)


# =============================================================================
# MEMBERSHIP
# =============================================================================

def _sign_matches(sign: SignResult, wanted: str) -> Membership:
    if sign is SignResult.UNKNOWN:
        return Membership.UNKNOWN
    return Membership.of(sign is (SignResult.POSITIVE if wanted == "+" else SignResult.NEGATIVE))


def member(c: ConeDescriptor, g: GroupElement) -> Membership:
    """Whether g lies in the cone; the identity never does."""
    if g.is_identity():
        return Membership.NO
    signs = c.tag.signs
    if c.tag.family == "Pinf":
        if g.s != 0:
            return Membership.of((g.s > 0) == (signs[0] == "+"))
        return Membership.of((g.r.sign() > 0) == (signs[1] == "+"))

    sign = sign_affine_form(c.base, g)
    if c.tag.family == "P" or sign is not SignResult.ZERO:
        return _sign_matches(sign, signs[0])
    # g fixes eps, so rho(g)(eps + 1) - (eps + 1) has the sign of slope - 1
    return Membership.of((g.s < 0) == (signs[1] == "+"))


def literal_member(c: ConeDescriptor, g: GroupElement) -> Membership:
    """member, with the Q fixed-point clause evaluated at eps + 1 directly."""
    if c.tag.family != "Q" or g.is_identity():
        return member(c, g)
    sign = sign_affine_form(c.base, g)
    if sign is not SignResult.ZERO:
        return _sign_matches(sign, c.tag.signs[0])
    shifted = Rational(c.base.value + 1)
    return _sign_matches(sign_affine_form(shifted, g), c.tag.signs[1])


def reverse(c: ConeDescriptor) -> ConeDescriptor:
    """Cone of the reversed ordering."""
    return ConeDescriptor(c.tag.reversed(), c.base)


def conjugate(c: ConeDescriptor, g: GroupElement) -> ConeDescriptor:
    """g(P) = P^{g^-1}: the base point moves to rho(g)(eps)."""
    if c.base is None:
        return c
    if isinstance(c.base, DigitStream):
        raise UnsupportedRepresentationError("cannot move a digit-stream base point")
    return ConeDescriptor(c.tag, act(g, c.base))


def ses_cone(quotient_sign: str, kernel_sign: str) -> ConeDescriptor:
    """
    Cone built from 0 -> Z[1/n] -> BS(1,n) -> Z -> 0 by ordering the
    quotient Z and the kernel Z[1/n] independently.
    """
    for sign in (quotient_sign, kernel_sign):
        if sign not in ("+", "-"):
            raise ConeTypeError(f"sign must be '+' or '-', got {sign!r}")
    return ConeDescriptor(ConeTag(f"Pinf{quotient_sign}{kernel_sign}"))


def ses_member(quotient_sign: str, kernel_sign: str, g: GroupElement) -> Membership:
    """The extension rule read literally: pi(g) positive, or g in the kernel and positive there."""
    if g.s != 0:
        return Membership.of((g.s > 0) == (quotient_sign == "+"))
    if g.r.is_zero():
        return Membership.NO
    return Membership.of((g.r.sign() > 0) == (kernel_sign == "+"))


def cones_conjugate(c1: ConeDescriptor, c2: ConeDescriptor, n: int) -> Union[GroupElement, Verdict]:
    """Some h with conjugate(c1, h) = c2, or NotEquivalent."""
    if c1.tag != c2.tag:
        return NotEquivalent
    if c1.base is None:
        return identity(n)
    return orbit_witness(c1.base, c2.base, n)


# =============================================================================
# ORACLES
# =============================================================================

class ConeOracle(Protocol):
    name: str

    def __call__(self, g: GroupElement) -> Membership:
        ...


class DescriptorOracle:
    """Membership oracle of a descriptor, counting queries."""

    def __init__(self, c: ConeDescriptor):
        self.cone = c
        self.name = str(c)
        self.queries = 0

    def __call__(self, g: GroupElement) -> Membership:
        self.queries += 1
        return member(self.cone, g)


class FunctionOracle:
    """Wraps any callable returning Membership or bool."""

    def __init__(self, fn: Callable[[GroupElement], Union[Membership, bool]], name: str = "oracle"):
        self._fn = fn
        self.name = name
        self.queries = 0

    def __call__(self, g: GroupElement) -> Membership:
        self.queries += 1
        if g.is_identity():
            return Membership.NO
        answer = self._fn(g)
        return Membership.of(answer) if isinstance(answer, bool) else Membership(answer)


def as_oracle(o: Union[ConeDescriptor, ConeOracle, Callable]) -> ConeOracle:
    if isinstance(o, ConeDescriptor):
        return DescriptorOracle(o)
    if isinstance(o, (DescriptorOracle, FunctionOracle)):
        return o
    return FunctionOracle(o, getattr(o, "__name__", "oracle"))


# =============================================================================
# AXIOMS AND ORDER
# =============================================================================

def cone_axioms_check(o: Union[ConeDescriptor, ConeOracle, Callable], L: int, n: int) -> ConeCheckReport:
    """
    Check P ∩ P^-1 = ∅, PP ⊆ P and P ∪ P^-1 ∪ {id} = G on ball(L).

    Products are only checked when they land inside the ball. Unknown answers
    make the report inconclusive instead of failing it.
    """
    if L < 1:
        raise ValueError(f"radius must be at least 1, got {L}")
    oracle = as_oracle(o)
    elements = ball(L, n).nontrivial()
    answers = {g: oracle(g) for g in elements}
    report = ConeCheckReport(cone=oracle.name, radius=L, checked=len(elements))

    for g in elements:
        mine, theirs = answers[g], answers[inv(g)]
        if Membership.UNKNOWN in (mine, theirs):
            report.unknown_elements.append(str(g))
            continue
        if mine == theirs == Membership.YES:
            return _fail(report, "disjointness", [g, inv(g)], "both g and g^-1 are members")
        if mine == theirs == Membership.NO:
            return _fail(report, "trichotomy", [g], "neither g nor g^-1 is a member")

    members = [g for g in elements if answers[g] is Membership.YES]
    for g in members:
        for h in members:
            product = mul(g, h)
            if answers.get(product) is Membership.NO:
                return _fail(report, "closure", [g, h], f"product {product} is not a member")

    report.inconclusive = bool(report.unknown_elements)
    if report.inconclusive:
        logger.warning(f"{oracle.name}: {len(report.unknown_elements)} undecided elements in ball({L})")
    return report


def _fail(report: ConeCheckReport, kind: str, elements: list[GroupElement], detail: str) -> ConeCheckReport:
    report.passed = False
    report.violation = Violation(kind=kind, elements=[str(g) for g in elements], detail=detail)
    logger.info(f"{report.cone}: {kind} violation at {', '.join(report.violation.elements)}")
    return report


def order_compare(c: Union[ConeDescriptor, ConeOracle], g: GroupElement, h: GroupElement) -> Optional[int]:
    """
    -1 if g < h, 0 if equal, 1 if g > h, where g < h iff g^-1 h is in the cone.

    Returns None when membership is undecided.
    """
    if g == h:
        return 0
    query = (lambda x: member(c, x)) if isinstance(c, ConeDescriptor) else c
    answer = query(mul(inv(g), h))
    if answer is Membership.UNKNOWN:
        return None
    return -1 if answer is Membership.YES else 1


def cone_from_action(points: Iterable[BasePoint], g: GroupElement) -> Membership:
    """
    Membership in the cone read off an action from a sequence of points:
    the first point g moves decides, by the direction it moves.

    Raises:
        InsufficientPointsError: if g != id fixes every point
    """
    if g.is_identity():
        return Membership.NO
    points = [as_base_point(x) for x in points]
    if len(set(points)) != len(points):
        raise ValueError("cone_from_action needs pairwise distinct points")
    for x in points:
        sign = sign_affine_form(x, g)
        if sign is SignResult.UNKNOWN:
            return Membership.UNKNOWN
        if sign is not SignResult.ZERO:
            return Membership.of(sign is SignResult.POSITIVE)
    raise InsufficientPointsError(f"{g} fixes every point of {[str(x) for x in points]}")


def sample_descriptors(irrationals: Iterable[Quadratic], rationals: Iterable[Fraction]) -> list[ConeDescriptor]:
    """All ten types: the P-inf cones, P+/P- at each irrational, Q tags at each rational."""
    out = [ConeDescriptor(tag) for tag in PINF_TAGS]
    for eps in irrationals:
        out += [ConeDescriptor(ConeTag.P_PLUS, eps), ConeDescriptor(ConeTag.P_MINUS, eps)]
    for eps in rationals:
        out += [ConeDescriptor(tag, Rational(eps)) for tag in Q_TAGS]
    return out
