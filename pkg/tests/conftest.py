"""Pytest configuration for ordlab tests."""

import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from ordlab.core.reals import Quadratic, Rational  # noqa: E402
from ordlab.orderings.cones import ConeDescriptor, ConeTag, sample_descriptors  # noqa: E402


SQRT2 = Quadratic(0, 1, 2)
SQRT3 = Quadratic(0, 1, 3)


@pytest.fixture(params=[2, 3, 10])
def n(request):
    """Each test using `n` runs for BS(1,2), BS(1,3) and BS(1,10)."""
    return request.param


@pytest.fixture
def rng():
    """Seeded random source; never the global RNG."""
    return random.Random(20240611)


@pytest.fixture
def sqrt2():
    return SQRT2


@pytest.fixture
def sqrt3():
    return SQRT3


@pytest.fixture
def sample_cones():
    """All ten cone types at the sampled bases."""
    return sample_descriptors([SQRT2, SQRT3], [Fraction(0), Fraction(1, 3), Fraction(5, 6)])


@pytest.fixture
def small_cones():
    """One cone of every type, for the expensive checks."""
    return sample_descriptors([SQRT2], [Fraction(1, 3)])


@pytest.fixture
def q_cone_third():
    return ConeDescriptor(ConeTag.Q_PP, Rational(Fraction(1, 3)))
