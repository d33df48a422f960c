"""
Test the ten positive cones: membership, axioms, reversal, conjugation and
the order they induce.
"""

from fractions import Fraction

import pytest

from ordlab.core.action import act
from ordlab.core.errors import ConeTypeError, InsufficientPointsError, UnsupportedRepresentationError
from ordlab.core.group import ball, conjugate_element, element, gen_a, gen_b, identity, inv, mul
from ordlab.core.models import Membership, NotEquivalent
from ordlab.core.reals import Quadratic, Rational, named_stream
from ordlab.orderings.cones import (
    ConeDescriptor,
    ConeTag,
    DescriptorOracle,
    FunctionOracle,
    cone,
    cone_axioms_check,
    cone_from_action,
    cones_conjugate,
    conjugate,
    literal_member,
    member,
    order_compare,
    reverse,
    ses_cone,
    ses_member,
)


# =============================================================================
# TAGS AND DESCRIPTORS
# =============================================================================

def test_tag_parsing():
    assert ConeTag.parse("P∞+−") is ConeTag.PINF_PM
    assert ConeTag.parse("P_inf--") is ConeTag.PINF_MM
    assert ConeTag.parse(" Q-+ ") is ConeTag.Q_MP
    assert ConeTag.Q_PM.family == "Q"
    assert ConeTag.PINF_PM.signs == "+-"
    with pytest.raises(ConeTypeError):
        ConeTag.parse("R+")


def test_descriptor_validation(sqrt2):
    with pytest.raises(ConeTypeError):
        ConeDescriptor(ConeTag.P_PLUS, Rational(1))
    with pytest.raises(ConeTypeError):
        ConeDescriptor(ConeTag.Q_PP, sqrt2)
    with pytest.raises(ConeTypeError):
        ConeDescriptor(ConeTag.PINF_PP, Rational(0))
    with pytest.raises(ConeTypeError):
        ConeDescriptor(ConeTag.Q_MM)
    assert cone("Q+-", Fraction(1, 3)) == ConeDescriptor(ConeTag.Q_PM, Rational(Fraction(1, 3)))


# =============================================================================
# MEMBERSHIP
# =============================================================================

def test_member_examples(sqrt2):
    a, b = gen_a(2), gen_b(2)
    assert member(ConeDescriptor(ConeTag.PINF_PP), a) is Membership.YES
    assert member(ConeDescriptor(ConeTag.P_PLUS, sqrt2), b) is Membership.NO
    assert member(ConeDescriptor(ConeTag.P_MINUS, sqrt2), b) is Membership.YES
    assert member(ConeDescriptor(ConeTag.Q_PP, Rational(0)), b) is Membership.NO
    assert member(ConeDescriptor(ConeTag.Q_PM, Rational(0)), b) is Membership.YES
    assert member(ConeDescriptor(ConeTag.PINF_MP), b) is Membership.NO
    assert member(ConeDescriptor(ConeTag.PINF_MP), a) is Membership.YES
    print("[OK] Membership examples")


def test_identity_is_never_a_member(sample_cones):
    for c in sample_cones:
        assert member(c, identity(2)) is Membership.NO


def test_literal_fixed_point_clause(n):
    """The eps + 1 shortcut agrees with evaluating the action there."""
    for x in (Fraction(0), Fraction(1, 3), Fraction(5, 6)):
        for tag in (ConeTag.Q_PP, ConeTag.Q_PM, ConeTag.Q_MP, ConeTag.Q_MM):
            c = ConeDescriptor(tag, Rational(x))
            for g in ball(4, n):
                assert literal_member(c, g) == member(c, g)


def test_ses_construction(n):
    for quotient_sign in "+-":
        for kernel_sign in "+-":
            c = ses_cone(quotient_sign, kernel_sign)
            assert c.tag is ConeTag(f"Pinf{quotient_sign}{kernel_sign}")
            for g in ball(3, n):
                assert ses_member(quotient_sign, kernel_sign, g) == member(c, g)
    with pytest.raises(ConeTypeError):
        ses_cone("0", "+")


# =============================================================================
# AXIOMS
# =============================================================================

def test_cone_axioms(n, small_cones):
    for c in small_cones:
        report = cone_axioms_check(c, 4, n)
        assert report.passed, f"{c}: {report.violation}"
        assert not report.inconclusive
    print(f"[OK] Cone axioms for {len(small_cones)} cones in BS(1,{n})")


def test_cone_axioms_catch_bad_oracles():
    everything = cone_axioms_check(FunctionOracle(lambda g: True, "everything"), 2, 2)
    assert not everything.passed
    assert everything.violation.kind == "disjointness"

    upward = cone_axioms_check(FunctionOracle(lambda g: g.s > 0, "upward"), 2, 2)
    assert not upward.passed
    assert upward.violation.kind == "trichotomy"
    assert upward.violation.elements[0] in (str(gen_a(2)), str(inv(gen_a(2))))

    # s > 0, plus a and every negative translation except a^-1:
    # trichotomy holds on ball(2) but a * a = a^2 is missing
    def patchy(g):
        if g.s != 0:
            return g.s > 0
        return g == gen_a(2) or g.r.sign() < 0 and g != inv(gen_a(2))

    broken = cone_axioms_check(FunctionOracle(patchy, "patchy"), 2, 2)
    assert not broken.passed
    assert broken.violation.kind == "closure"


def test_cone_axioms_unknown_answers_are_inconclusive():
    half = named_stream("sqrt2", 2, 16)
    report = cone_axioms_check(ConeDescriptor(ConeTag.P_PLUS, half), 2, 2)
    assert report.passed
    wobbly = FunctionOracle(lambda g: Membership.UNKNOWN if g.s == 2 else (g.s > 0 or g.s == 0 and g.r.sign() > 0))
    report = cone_axioms_check(wobbly, 2, 2)
    assert report.passed
    assert report.inconclusive
    assert report.unknown_elements


# =============================================================================
# REVERSAL AND CONJUGATION
# =============================================================================

def test_reverse(n, small_cones):
    assert reverse(ConeDescriptor(ConeTag.PINF_PP)).tag is ConeTag.PINF_MM
    for c in small_cones:
        assert reverse(reverse(c)) == c
        flipped = reverse(c)
        for g in ball(4, n).nontrivial():
            assert member(flipped, g) == member(c, g).negated()
            assert member(flipped, g) == member(c, inv(g))


def test_conjugate_examples(sqrt2):
    pinf = ConeDescriptor(ConeTag.PINF_PM)
    assert conjugate(pinf, element(Fraction(5, 2), 3, 2)) == pinf
    moved = conjugate(ConeDescriptor(ConeTag.P_PLUS, sqrt2), gen_b(2))
    assert moved == ConeDescriptor(ConeTag.P_PLUS, Quadratic(0, Fraction(1, 2), 2))
    with pytest.raises(UnsupportedRepresentationError):
        conjugate(ConeDescriptor(ConeTag.P_PLUS, named_stream("sqrt2", 2, 32)), gen_b(2))


def test_conjugation_coherence(n, small_cones):
    """member(g P, h) = member(P, g^-1 h g), and conjugation is a left action."""
    sample = list(ball(3, n))
    for c in small_cones:
        for g in sample:
            moved = conjugate(c, g)
            for h in sample:
                assert member(moved, h) == member(c, conjugate_element(h, g))
        for g in sample[:9]:
            for h in sample[:9]:
                assert conjugate(conjugate(c, h), g) == conjugate(c, mul(g, h))


def test_cones_conjugate(sqrt2, sqrt3):
    source = ConeDescriptor(ConeTag.P_PLUS, sqrt2)
    target = ConeDescriptor(ConeTag.P_PLUS, Quadratic(Fraction(3, 4), Fraction(1, 4), 2))
    h = cones_conjugate(source, target, 2)
    assert h == element(Fraction(3, 4), 2, 2)
    assert conjugate(source, h) == target
    assert cones_conjugate(source, reverse(target), 2) is NotEquivalent
    assert cones_conjugate(source, ConeDescriptor(ConeTag.P_PLUS, sqrt3), 2) is NotEquivalent
    pinf = ConeDescriptor(ConeTag.PINF_MM)
    assert cones_conjugate(pinf, pinf, 2) == identity(2)


# =============================================================================
# ORDER
# =============================================================================

def test_order_compare(n, small_cones):
    a, b = gen_a(n), gen_b(n)
    pinf = ConeDescriptor(ConeTag.PINF_PP)
    assert order_compare(pinf, a, b) == -1
    assert order_compare(pinf, b, a) == 1
    assert order_compare(pinf, a, a) == 0
    sample = list(ball(2, n))
    for c in small_cones:
        for f in sample:
            for g in sample:
                for h in sample:
                    assert order_compare(c, g, h) == order_compare(c, mul(f, g), mul(f, h))


def test_order_compare_with_oracle():
    oracle = DescriptorOracle(ConeDescriptor(ConeTag.PINF_PP))
    assert order_compare(oracle, identity(2), gen_a(2)) == -1
    assert oracle.queries == 1


def test_cone_from_action(n):
    b = gen_b(n)
    assert cone_from_action([Fraction(0), Fraction(1)], b) is Membership.NO
    assert cone_from_action([Quadratic(0, 1, 2)], gen_a(n)) is Membership.YES
    with pytest.raises(InsufficientPointsError):
        cone_from_action([Fraction(0)], b)
    with pytest.raises(ValueError):
        cone_from_action([Fraction(0), Fraction(0)], b)

    c = ConeDescriptor(ConeTag.Q_PP, Rational(0))
    for g in ball(4, n):
        assert cone_from_action([Fraction(0), Fraction(1)], g) == member(c, g)


def test_action_cone_is_moved_by_conjugation(n):
    """Reading the cone off the action at rho(g)(x) gives the conjugated cone."""
    c = ConeDescriptor(ConeTag.Q_PP, Rational(Fraction(1, 3)))
    for g in ball(2, n):
        x = act(g, Fraction(1, 3))
        for h in ball(3, n):
            assert cone_from_action([x, x + 1], h) == member(conjugate(c, g), h)
