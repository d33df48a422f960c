"""
Reading a cone's base point off a black-box membership oracle, and back.

A cone and its base point carry the same information: members with s > 0
contract toward a fixed point right of eps, members with s < 0 expand away
from a fixed point left of eps. Finitely many queries therefore bracket eps
between fixed points; member_from_cuts goes the other way.
"""

import logging
from fractions import Fraction
from math import ceil, floor
from typing import Callable, Optional, Union

from ..core.action import fixed_point, stabilizer_generator
from ..core.config import settings
from ..core.errors import InconsistentOracleError
from ..core.group import GroupElement, ball, element, gen_a, gen_b, inv, mul, power
from ..core.models import IdentificationResult, Membership
from ..core.numeric import NAdic, power_of_n, rat_text, sign_of
from .cones import ConeDescriptor, ConeOracle, ConeTag, as_oracle

logger = logging.getLogger(__name__)


class _Frame:
    """Oracle answers seen through the positive frame (a is a member)."""

    def __init__(self, oracle: ConeOracle, polarity: str):
        self._oracle = oracle
        self.polarity = polarity
        self._cache: dict[GroupElement, Membership] = {}

    def raw(self, g: GroupElement) -> Membership:
        if g not in self._cache:
            self._cache[g] = self._oracle(g)
        return self._cache[g]

    def pos(self, g: GroupElement) -> Membership:
        return self.raw(g) if self.polarity == "+" else self.raw(inv(g))

    @property
    def queries(self) -> int:
        return len(self._cache)


def identify(
    o: Union[ConeDescriptor, ConeOracle, Callable],
    L: int,
    precision: int,
    n: int,
    stabilizer_depth: Optional[int] = None,
) -> IdentificationResult:
    """
    Classify a cone from its answers on ball(L).

    Args:
        o: membership oracle (or a descriptor, queried as an oracle)
        L: ball radius to query
        precision: the interval counts as resolved at width n^-precision
        n: the group BS(1,n)
        stabilizer_depth: conjugation powers tried before accepting a rational endpoint as the base

    Returns:
        IdentificationResult with tag candidates and the bracketing interval;
        a rational endpoint that passes the conjugation test is reported as
        exact_base together with the distance it is certified to

    Raises:
        InconsistentOracleError: if the answers contradict the cone axioms
    """
    depth = stabilizer_depth if stabilizer_depth is not None else settings.stabilizer_depth
    frame = _Frame(as_oracle(o), "+")
    elements = ball(L, n).nontrivial()

    decided = []
    for g in elements:
        mine, theirs = frame.raw(g), frame.raw(inv(g))
        if Membership.UNKNOWN in (mine, theirs):
            continue
        if mine == theirs:
            raise InconsistentOracleError(
                f"{g} and its inverse are {'both' if mine is Membership.YES else 'neither'} members"
            )
        decided.append(g)
    undecided = len(elements) - len(decided)
    if undecided:
        logger.warning(f"{undecided} of {len(elements)} elements undecided by the oracle")

    members = [g for g in decided if frame.raw(g) is Membership.YES]
    quotient_sign = "+" if frame.raw(gen_b(n)) is Membership.YES else "-"
    if not any((g.s > 0) != (quotient_sign == "+") for g in members if g.s != 0):
        kernel_sign = "+" if frame.raw(gen_a(n)) is Membership.YES else "-"
        tag = ConeTag(f"Pinf{quotient_sign}{kernel_sign}")
        logger.info(f"identified bi-ordering {tag.value} from {frame.queries} queries")
        return IdentificationResult(tags=[tag.value], resolved=True, queries=frame.queries)

    frame.polarity = "+" if frame.raw(gen_a(n)) is Membership.YES else "-"
    positive = [g for g in decided if frame.pos(g) is Membership.YES and g.s != 0]
    lower = [(fixed_point(g), g) for g in positive if g.s < 0]
    upper = [(fixed_point(g), g) for g in positive if g.s > 0]
    if not lower or not upper:
        logger.warning(f"ball({L}) answers do not bracket the base point on both sides")
        candidates = [ConeTag.P_PLUS, *(ConeTag(f"Q+{x}") for x in "+-")]
        if frame.polarity == "-":
            candidates = [tag.reversed() for tag in candidates]
        return IdentificationResult(tags=[tag.value for tag in candidates], queries=frame.queries)
    lo = max(f for f, _ in lower)
    hi = min(f for f, _ in upper)
    if lo > hi:
        raise InconsistentOracleError(f"members bracket the base point in the empty interval [{lo}, {hi}]")
    pins = [g for f, g in lower if f == lo] + [g for f, g in upper if f == hi]

    result = IdentificationResult(
        interval=(rat_text(lo), rat_text(hi)),
        grid_interval=_grid(lo, hi, precision, n),
        pins=[str(g) for g in pins],
    )
    for endpoint in dict.fromkeys((lo, hi)):
        gamma = stabilizer_generator(endpoint, n)
        if _is_exact_base(frame, gamma, endpoint, pins, hi - lo, depth):
            second = "+" if frame.pos(gamma) is Membership.YES else "-"
            result.exact_base = rat_text(endpoint)
            result.certified_within = rat_text(_certified_radius(gamma, hi - lo, depth))
            # a P cone at an irrational closer than certified_within gives the same answers
            candidates = [ConeTag(f"Q+{second}")]
            if lo != hi:
                candidates.append(ConeTag.P_PLUS)
            result.resolved = lo == hi
            break
    else:
        candidates = [ConeTag.P_PLUS]
        result.resolved = hi - lo <= power_of_n(-precision, n)

    if frame.polarity == "-":
        candidates = [tag.reversed() for tag in candidates]
    result.tags = [tag.value for tag in candidates]
    result.queries = frame.queries
    if result.exact_base is not None and not result.resolved:
        logger.info(f"base {result.exact_base} certified to within {result.certified_within}")
    elif not result.resolved:
        logger.warning(f"base point only bracketed to [{lo}, {hi}] by ball({L})")
    logger.info(f"identified {result.tags} from {result.queries} queries")
    return result


def _is_exact_base(
    frame: _Frame,
    gamma: GroupElement,
    endpoint: Fraction,
    pins: list[GroupElement],
    width: Fraction,
    depth: int,
) -> bool:
    """
    Whether conjugating by powers of the stabilizer of `endpoint` leaves the
    cone unchanged on a test set, which holds exactly when eps = endpoint.

    gamma^m pushes any other base point away from the endpoint, past the
    fixed points endpoint +/- k of the shifted stabilizers a^k gamma a^-k.
    """
    n = gamma.n
    if frame.pos(gamma) is Membership.UNKNOWN:
        return False
    reach = ceil(width) + 1
    tests = list(pins)
    for k in range(1, reach + 1):
        shift = element(k, 0, n)
        tests.append(mul(mul(shift, gamma), inv(shift)))
        tests.append(mul(mul(inv(shift), gamma), shift))
    for m in range(1, depth + 1):
        step = power(gamma, m)
        for h in tests:
            conjugated = mul(mul(inv(step), h), step)
            if frame.pos(h) != frame.pos(conjugated):
                logger.debug(f"{endpoint} is not the base: {h} changes under conjugation by {step}")
                return False
    return True


def _certified_radius(gamma: GroupElement, width: Fraction, depth: int) -> Fraction:
    """
    Largest |eps - endpoint| that can survive the conjugation test.

    gamma stretches distances from the endpoint by n^|s| per power, and the
    test set has a fixed point within ceil(width) + 1 of the endpoint on both
    sides, so any base farther than that divided by n^(|s| depth) is caught.
    """
    reach = ceil(width) + 1
    return min(width, Fraction(reach, gamma.n ** (abs(gamma.s) * depth)))


def _grid(lo: Fraction, hi: Fraction, precision: int, n: int) -> tuple[str, str]:
    scale = n ** precision
    return str(NAdic(floor(lo * scale), precision, n)), str(NAdic(ceil(hi * scale), precision, n))


def member_from_cuts(tag: Union[str, ConeTag], left: Fraction, right: Fraction, g: GroupElement) -> Membership:
    """
    Membership in the cone with the given tag whose base lies in [left, right].

    Decided when g is a translation or its fixed point lies outside the
    interval; for Q tags a degenerate interval [eps, eps] decides everything.
    """
    tag = ConeTag.parse(tag) if isinstance(tag, str) else tag
    left, right = Fraction(left), Fraction(right)
    if left > right:
        raise ValueError(f"empty interval [{left}, {right}]")
    if g.is_identity():
        return Membership.NO
    signs = tag.signs
    if tag.family == "Pinf":
        if g.s != 0:
            return Membership.of((g.s > 0) == (signs[0] == "+"))
        return Membership.of((g.r.sign() > 0) == (signs[1] == "+"))
    if g.s == 0:
        return Membership.of((g.r.sign() > 0) == (signs[0] == "+"))

    fix = fixed_point(g)
    if left <= fix <= right:
        if tag.family == "Q" and left == right:
            return Membership.of((g.s < 0) == (signs[1] == "+"))
        return Membership.UNKNOWN
    # rho(g)(eps) - eps = (n^-s - 1)(eps - fix)
    side = 1 if fix < left else -1
    moved = sign_of(power_of_n(-g.s, g.n) - 1) * side
    return Membership.of((moved > 0) == (signs[0] == "+"))
