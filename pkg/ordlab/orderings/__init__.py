"""Positive cones, identification, dynamical realizations and the digit reduction."""

from .cones import ConeDescriptor, ConeTag, conjugate, member, reverse
from .identification import identify
from .realization import build
from .equivalence import reduce, tail_equivalent, witness_to_group

__all__ = [
    "ConeDescriptor",
    "ConeTag",
    "conjugate",
    "member",
    "reverse",
    "identify",
    "build",
    "reduce",
    "tail_equivalent",
    "witness_to_group",
]
