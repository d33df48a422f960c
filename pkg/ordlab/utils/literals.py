"""
Literal syntax used on the command line.

Base points:  rat:p/q | quad:u,v,d | stream:<name> | a bare rational "p/q"
Cones:        a tag (P+, Q+-, Pinf++, ...) plus an optional base literal
"""

import re
from fractions import Fraction
from typing import Optional

from ..core.errors import ConeTypeError
from ..core.reals import BasePoint, Quadratic, Rational, named_stream
from ..orderings.cones import ConeDescriptor, ConeTag

RATIONAL_TEXT = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse "p", "p/q" or a decimal-free rational, raising ValueError otherwise."""
    if not RATIONAL_TEXT.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


def parse_base_point(text: str, n: int, budget: Optional[int] = None) -> BasePoint:
    """
    Parse a base-point literal.

    Raises:
        ValueError: for malformed literals
        KeyError: for unknown stream names
    """
    kind, _, body = text.partition(":")
    if not body:
        return Rational(parse_rational(text))
    kind = kind.strip().lower()
    if kind == "rat":
        return Rational(parse_rational(body))
    if kind == "quad":
        parts = [part.strip() for part in body.split(",")]
        if len(parts) != 3:
            raise ValueError(f"quad literal needs u,v,d: {text!r}")
        return Quadratic(parse_rational(parts[0]), parse_rational(parts[1]), int(parts[2]))
    if kind == "stream":
        return named_stream(body.strip(), n, budget)
    raise ValueError(f"unknown base-point kind {kind!r} in {text!r}")


def parse_cone(tag: str, base: Optional[str], n: int, budget: Optional[int] = None) -> ConeDescriptor:
    """Build a descriptor from a tag and an optional base literal."""
    cone_tag = ConeTag.parse(tag)
    if cone_tag.family == "Pinf":
        if base:
            raise ConeTypeError(f"{cone_tag.value} takes no base point")
        return ConeDescriptor(cone_tag)
    if not base:
        raise ConeTypeError(f"{cone_tag.value} needs --base")
    return ConeDescriptor(cone_tag, parse_base_point(base, n, budget))
