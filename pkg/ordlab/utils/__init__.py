"""Utility modules for ordlab."""

from .literals import parse_base_point, parse_cone
from .output import render

__all__ = ["parse_base_point", "parse_cone", "render"]
