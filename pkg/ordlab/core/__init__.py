"""Core modules for ordlab: arithmetic, the group, base points and the action."""

from .config import settings, SessionConfig
from .errors import OrdlabError
from .numeric import NAdic
from .group import GroupElement, ball, element, identity, inv, mul
from .words import parse_word
from .reals import DigitStream, Quadratic, Rational
from .action import act, fixed_point, orbit_witness, stabilizer_generator
from .models import Membership, NotEquivalent, SignResult, Unknown

__all__ = [
    "settings",
    "SessionConfig",
    "OrdlabError",
    "NAdic",
    "GroupElement",
    "ball",
    "element",
    "identity",
    "inv",
    "mul",
    "parse_word",
    "DigitStream",
    "Quadratic",
    "Rational",
    "act",
    "fixed_point",
    "orbit_witness",
    "stabilizer_generator",
    "Membership",
    "NotEquivalent",
    "SignResult",
    "Unknown",
]
