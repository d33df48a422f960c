"""
Word grammar for BS(1,n) elements.

    word := term*
    term := gen exp?
    gen  := "a" | "A" | "b" | "B"          (capitals are inverses)
    exp  := "^" (integer | "{" nadic "}")

Exponents on a may be any element of Z[1/n]; exponents on b must be integers.
The product is taken left to right.
"""

import logging
from functools import lru_cache

import pyparsing as pp

from .errors import ExponentError, WordSyntaxError
from .group import GroupElement, element, identity, mul
from .numeric import NAdic, parse_nadic

logger = logging.getLogger(__name__)


@lru_cache(maxsize=1)
def _grammar() -> pp.ParserElement:
    integer = pp.Regex(r"[+-]?\d+")
    nadic = pp.Regex(r"[+-]?\d+(\s*/\s*\d+(\s*\^\s*\d+)?)?")
    braced = pp.Suppress("{") + nadic("nadic") + pp.Suppress("}")
    exponent = pp.Suppress("^") + (braced | integer("integer"))
    generator = pp.Char("aAbB")("gen")
    term = pp.Group(generator + pp.Optional(exponent))
    return pp.ZeroOrMore(term) + pp.StringEnd()


def parse_word(text: str, n: int) -> GroupElement:
    """
    Parse a word and return the normal form of its product.

    Raises:
        WordSyntaxError: when the text does not match the grammar
        ExponentError: for exponents outside Z[1/n] or non-integer b exponents
    """
    try:
        terms = _grammar().parse_string(text, parse_all=True)
    except pp.ParseException as e:
        raise WordSyntaxError(f"cannot parse word {text!r}: {e.msg}", e.loc) from e

    result = identity(n)
    for term in terms:
        result = mul(result, _term_element(term, n))
    logger.debug(f"parsed {text!r} -> {result}")
    return result


def _term_element(term: pp.ParseResults, n: int) -> GroupElement:
    gen = term["gen"]
    if "nadic" in term:
        exponent = parse_nadic(term["nadic"], n)
    elif "integer" in term:
        exponent = NAdic(int(term["integer"]), 0, n)
    else:
        exponent = NAdic(1, 0, n)

    if gen in "aA":
        r = exponent if gen == "a" else -exponent
        return element(r, 0, n)

    if exponent.k != 0:
        raise ExponentError(f"b^{{{exponent}}} is not a group element: exponents on b must be integers")
    s = exponent.m if gen == "b" else -exponent.m
    return element(0, s, n)
