"""
Test the affine action: evaluation, fixed points, stabilizers and orbit witnesses.
"""

from fractions import Fraction

import pytest

from ordlab.core.action import AffineMap, act, affine_map, fixed_point, orbit_witness, stabilizer_generator
from ordlab.core.errors import BaseMismatchError, NoFixedPointError, UnsupportedRepresentationError
from ordlab.core.group import ball, element, gen_a, gen_b, identity, is_power_of, mul
from ordlab.core.models import NotEquivalent
from ordlab.core.numeric import NAdic
from ordlab.core.reals import Quadratic, Rational, named_stream
from ordlab.core.words import parse_word


def test_act_examples(sqrt2):
    assert act(parse_word("a b", 2), Fraction(0)) == 1
    assert act(element(Fraction(3, 4), 2, 2), sqrt2) == Quadratic(Fraction(3, 4), Fraction(1, 4), 2)
    assert act(gen_b(3), Rational(Fraction(1))) == Rational(Fraction(1, 3))
    assert act(gen_a(2), NAdic(1, 1, 2)) == NAdic(3, 1, 2)
    print("[OK] Action examples")


def test_action_axiom(n, sqrt2):
    """rho(gh) = rho(g) rho(h) on rationals, n-adics and quadratics."""
    points = [Fraction(0), Fraction(2, 7), NAdic(3, 1, n), sqrt2]
    sample = list(ball(3, n))
    for g in sample:
        for h in sample[:20]:
            for x in points:
                assert act(mul(g, h), x) == act(g, act(h, x))


def test_streams_cannot_be_moved():
    with pytest.raises(UnsupportedRepresentationError):
        act(gen_a(2), named_stream("sqrt2", 2, 32))


def test_affine_maps(n):
    for g in ball(2, n):
        assert affine_map(g).to_element() == g
        for h in ball(2, n):
            assert affine_map(mul(g, h)) == affine_map(g).compose(affine_map(h))
    with pytest.raises(ValueError):
        AffineMap(Fraction(3, 2), NAdic(0, 0, 2)).to_element()


# =============================================================================
# FIXED POINTS AND STABILIZERS
# =============================================================================

def test_fixed_points():
    assert fixed_point(element(1, 1, 2)) == 2
    assert fixed_point(element(0, 5, 2)) == 0
    g = element(-1, -2, 3)
    assert act(g, fixed_point(g)) == fixed_point(g)
    with pytest.raises(NoFixedPointError):
        fixed_point(gen_a(2))
    with pytest.raises(NoFixedPointError):
        fixed_point(identity(2))


def test_stabilizer_examples():
    assert stabilizer_generator(Fraction(1, 3), 2) == element(-1, -2, 2)
    assert stabilizer_generator(Fraction(0), 2) == element(0, -1, 2)
    gamma = stabilizer_generator(Fraction(1, 7), 10)
    assert gamma.s == -6
    assert gamma == element(-142857, -6, 10)
    assert stabilizer_generator(Rational(Fraction(5, 6)), 2) == element(Fraction(-5, 2), -2, 2)
    print("[OK] Stabilizer generators")


def test_stabilizer_generates(n):
    """Within ball(6), the elements fixing x are exactly the powers of its generator."""
    wide = list(ball(6, n))
    for x in (Fraction(0), Fraction(1, 3), Fraction(5, 6), Fraction(-3, 4)):
        gamma = stabilizer_generator(x, n)
        assert act(gamma, x) == x
        for g in wide:
            fixes = act(g, x) == x
            expected = is_power_of(g, gamma) if g.s else g.is_identity()
            assert fixes == expected


def test_irrational_orbits_are_free(n, sqrt2, sqrt3):
    for g in ball(5, n).nontrivial():
        assert act(g, sqrt2) != sqrt2
        assert act(g, sqrt3) != sqrt3


# =============================================================================
# ORBIT WITNESSES
# =============================================================================

def test_orbit_witness_examples(sqrt2, sqrt3):
    target = Quadratic(Fraction(3, 4), Fraction(1, 4), 2)
    assert orbit_witness(sqrt2, target, 2) == element(Fraction(3, 4), 2, 2)
    assert orbit_witness(sqrt2, sqrt3, 2) is NotEquivalent
    assert orbit_witness(Fraction(1, 3), Fraction(2, 3), 2) == element(0, -1, 2)
    assert orbit_witness(Fraction(1, 3), Fraction(1, 5), 2) is NotEquivalent
    assert orbit_witness(Fraction(1, 7), Fraction(3, 7), 2) is NotEquivalent
    assert orbit_witness(Fraction(1, 3), Fraction(1, 3), 2) == identity(2)
    assert orbit_witness(sqrt2, Quadratic(0, 3, 2), 2) is NotEquivalent


def test_orbit_witness_sends_x_to_y(n, rng, sqrt2):
    sample = list(ball(4, n))
    for _ in range(100):
        x = Fraction(rng.randint(-40, 40), rng.randint(1, 30))
        g = rng.choice(sample)
        y = act(g, x)
        witness = orbit_witness(x, y, n)
        assert witness is not NotEquivalent
        assert act(witness, x) == y
        moved = act(g, sqrt2)
        assert act(orbit_witness(sqrt2, moved, n), sqrt2) == moved


def test_orbit_witness_rejects_streams_and_mixed_kinds(sqrt2):
    with pytest.raises(UnsupportedRepresentationError):
        orbit_witness(named_stream("sqrt2", 2, 32), sqrt2, 2)
    with pytest.raises(UnsupportedRepresentationError):
        orbit_witness(Fraction(1, 3), sqrt2, 2)


def test_nadic_points_keep_their_base():
    assert act(element(1, 1, 2), NAdic(1, 0, 2)) == NAdic(3, 1, 2)
    with pytest.raises(BaseMismatchError):
        act(gen_b(2), NAdic(1, 0, 3))
    with pytest.raises(BaseMismatchError):
        act(gen_a(10), NAdic(1, 1, 2))
