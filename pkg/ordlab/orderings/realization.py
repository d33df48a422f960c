"""
Finite stages of the dynamical realization of a left-ordering.

Elements g_0 = id, g_1, ... of the fixed enumeration are tagged one at a time:
t(g_0) = 0, a new maximum gets max + 1, a new minimum gets min - 1, and an
element falling between two tagged neighbours gets the midpoint of their tags.
Tags never change once assigned, so stage N is a prefix of every later stage.
The induced partial action is g(t(g_i)) = t(g g_i).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..core.errors import UndecidedComparisonError
from ..core.group import GroupElement, element_at, identity, inv, mul
from ..core.models import FreeOrbitReport, Membership, Violation
from .cones import ConeDescriptor, order_compare

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RealizationStage:
    """Tags of g_0 .. g_{N-1} and the cone whose order they embed."""

    cone: ConeDescriptor
    n: int
    elements: tuple[GroupElement, ...]
    tags: dict[GroupElement, Fraction] = field(compare=False)
    ordered: tuple[GroupElement, ...] = field(default=(), compare=False)

    @property
    def N(self) -> int:
        return len(self.elements)

    def tag(self, g: GroupElement) -> Optional[Fraction]:
        return self.tags.get(g)


def initial_stage(c: ConeDescriptor, n: int) -> RealizationStage:
    origin = identity(n)
    return RealizationStage(c, n, (origin,), {origin: Fraction(0)}, (origin,))


def extend(st: RealizationStage, N: int) -> RealizationStage:
    """
    Tag elements up to g_{N-1}, keeping every existing tag.

    Raises:
        UndecidedComparisonError: when the cone cannot order two elements
    """
    elements = list(st.elements)
    tags = dict(st.tags)
    ordered = list(st.ordered)
    for i in range(st.N, N):
        g = element_at(i, st.n)
        position = _insertion_point(st.cone, ordered, g)
        if position == len(ordered):
            tags[g] = tags[ordered[-1]] + 1
        elif position == 0:
            tags[g] = tags[ordered[0]] - 1
        else:
            tags[g] = (tags[ordered[position - 1]] + tags[ordered[position]]) / 2
        ordered.insert(position, g)
        elements.append(g)
    logger.debug(f"realization of {st.cone} extended from {st.N} to {len(elements)} elements")
    return RealizationStage(st.cone, st.n, tuple(elements), tags, tuple(ordered))


def _insertion_point(c: ConeDescriptor, ordered: list[GroupElement], g: GroupElement) -> int:
    lo, hi = 0, len(ordered)
    while lo < hi:
        mid = (lo + hi) // 2
        comparison = order_compare(c, ordered[mid], g)
        if comparison is None:
            raise UndecidedComparisonError(f"cannot order {ordered[mid]} and {g} under {c}")
        if comparison < 0:
            lo = mid + 1
        else:
            hi = mid
    return lo


def build(c: ConeDescriptor, N: int, n: int) -> RealizationStage:
    """Stage N of the realization of c."""
    if N < 1:
        raise ValueError(f"stage size must be at least 1, got {N}")
    return extend(initial_stage(c, n), N)


def partial_act(st: RealizationStage, g: GroupElement, i: int) -> Optional[Fraction]:
    """t(g g_i), or None when g g_i is not tagged yet."""
    if not 0 <= i < st.N:
        raise IndexError(f"index {i} outside stage of size {st.N}")
    return st.tags.get(mul(g, st.elements[i]))


def recover_cone(st: RealizationStage, g: GroupElement) -> Optional[Membership]:
    """g is positive iff it moves t(id) = 0 up; None when g is untagged."""
    if g not in st.tags:
        return None
    return Membership.of(st.tags[g] > 0)


def recover_conjugate(st: RealizationStage, g: GroupElement, h: GroupElement) -> Optional[Membership]:
    """Membership of g in P^h = h^-1 P h, read as D(g)(t(h^-1)) > t(h^-1)."""
    h_inv = inv(h)
    base, moved = st.tags.get(h_inv), st.tags.get(mul(g, h_inv))
    if base is None or moved is None:
        return None
    return Membership.of(moved > base)


def check_free_orbit(st: RealizationStage) -> FreeOrbitReport:
    """No tagged g != id may share the tag of the identity."""
    origin = identity(st.n)
    report = FreeOrbitReport(stage=st.N)
    origin_tag = st.tags.get(origin)
    for g in st.elements:
        if g != origin and st.tags[g] == origin_tag:
            report.passed = False
            report.violation = Violation(kind="free_orbit", elements=[str(g)], detail=f"t({g}) = t(id) = {origin_tag}")
            break
    return report


def check_order_embedding(st: RealizationStage) -> list[Violation]:
    """Tags must be distinct, start at t(id) = 0 and sort like the cone's order."""
    violations = []
    if st.tags.get(identity(st.n)) != 0:
        violations.append(Violation(kind="origin", detail="t(id) is not 0"))
    ranked = sorted(st.elements, key=lambda g: st.tags[g])
    for lower, upper in zip(ranked, ranked[1:]):
        if st.tags[lower] == st.tags[upper]:
            violations.append(Violation(kind="duplicate_tag", elements=[str(lower), str(upper)]))
        elif order_compare(st.cone, lower, upper) != -1:
            violations.append(
                Violation(
                    kind="order_embedding",
                    elements=[str(lower), str(upper)],
                    detail=f"t = {st.tags[lower]} < {st.tags[upper]} but the cone does not order them so",
                )
            )
    return violations


def stage_rows(st: RealizationStage) -> list[dict]:
    """One row per tagged element in enumeration order; tags as exact text."""
    return [{"index": i, "element": str(g), "tag": str(st.tags[g])} for i, g in enumerate(st.elements)]
