"""
Shared enums and pydantic report models for ordlab.

Algebraic values (NAdic, GroupElement, base points, cones) are frozen
dataclasses living next to their operations; everything that is reported,
printed or serialized goes through the models here.
"""

from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, Field


# =============================================================================
# ENUMS
# =============================================================================

class SignResult(str, Enum):
    """Sign of an exact or budgeted real quantity."""
    NEGATIVE = "negative"
    ZERO = "zero"
    POSITIVE = "positive"
    UNKNOWN = "unknown"  # digit budget exhausted

    @property
    def decided(self) -> bool:
        return self is not SignResult.UNKNOWN


class Membership(str, Enum):
    """Answer of a cone membership query."""
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, flag: bool) -> "Membership":
        return cls.YES if flag else cls.NO

    def negated(self) -> "Membership":
        if self is Membership.UNKNOWN:
            return self
        return Membership.NO if self is Membership.YES else Membership.YES


class Verdict(str, Enum):
    """Negative or inconclusive outcomes of decision procedures."""
    NOT_EQUIVALENT = "not_equivalent"
    UNKNOWN = "unknown"


NotEquivalent = Verdict.NOT_EQUIVALENT
Unknown = Verdict.UNKNOWN


class PipelineStage(str, Enum):
    """Invariant suite stage status."""
    PENDING = "pending"
    RUNNING = "running"
    COMPLETE = "complete"
    FAILED = "failed"
    INCONCLUSIVE = "inconclusive"


# =============================================================================
# CHECK REPORTS
# =============================================================================

class Violation(BaseModel):
    """One counterexample found by a check."""
    kind: str  # disjointness, closure, trichotomy, ...
    elements: list[str] = Field(default_factory=list)
    detail: str = ""


class ConeCheckReport(BaseModel):
    """Result of checking the positive-cone axioms on a ball."""
    cone: str
    radius: int
    checked: int = 0
    passed: bool = True
    inconclusive: bool = False
    violation: Optional[Violation] = None
    unknown_elements: list[str] = Field(default_factory=list)


class FreeOrbitReport(BaseModel):
    """Whether the orbit of the origin is free on a realization stage."""
    stage: int
    passed: bool = True
    violation: Optional[Violation] = None


class RoundtripReport(BaseModel):
    """Forward and backward halves of the digit reduction for one (x, g)."""
    x: str
    g: str
    y: str
    witness: Optional[tuple[int, int]] = None
    reconstructed: Optional[str] = None
    passed: bool = True
    detail: str = ""


class IdentificationResult(BaseModel):
    """What a finite number of membership queries reveal about a cone."""
    tags: list[str] = Field(default_factory=list)
    interval: Optional[tuple[str, str]] = None  # exact rationals as text
    grid_interval: Optional[tuple[str, str]] = None  # n-adic cuts at the requested precision
    exact_base: Optional[str] = None
    certified_within: Optional[str] = None  # bound on |eps - exact_base| the conjugation test rules out beyond
    resolved: bool = False
    queries: int = 0
    pins: list[str] = Field(default_factory=list)  # members attaining the interval endpoints


# =============================================================================
# SUITE STATUS
# =============================================================================

class StageInfo(BaseModel):
    """Outcome of one invariant family."""
    name: str
    status: PipelineStage = PipelineStage.PENDING
    checked: int = 0
    violations: list[Violation] = Field(default_factory=list)
    message: Optional[str] = None


class SuiteReport(BaseModel):
    """Everything check-all found."""
    n: int
    radius: int
    seed: int
    status: PipelineStage = PipelineStage.PENDING
    stages: list[StageInfo] = Field(default_factory=list)

    @property
    def violation_count(self) -> int:
        return sum(len(stage.violations) for stage in self.stages)

    @property
    def inconclusive(self) -> bool:
        return any(stage.status == PipelineStage.INCONCLUSIVE for stage in self.stages)


# =============================================================================
# WIRE ENCODINGS
# =============================================================================

def encode_nadic(x) -> dict[str, Any]:
    return {"m": str(x.m), "k": x.k}


def encode_element(g) -> dict[str, Any]:
    return {"r": str(g.r), "s": g.s}


def encode_base_point(eps) -> dict[str, Any]:
    kind = type(eps).__name__
    if kind == "Rational":
        return {"kind": "rat", "p": str(eps.value.numerator), "q": str(eps.value.denominator)}
    if kind == "Quadratic":
        return {"kind": "quad", "u": str(eps.u), "v": str(eps.v), "d": eps.d}
    return {"kind": "stream", "ref": eps.name}


def encode_cone(c) -> dict[str, Any]:
    out: dict[str, Any] = {"tag": c.tag.value}
    if c.base is not None:
        out["base"] = encode_base_point(c.base)
    return out


def digit_text(digits: list[int], n: int) -> Any:
    """One ASCII digit per symbol for n <= 10, a list of integers otherwise."""
    if n <= 10:
        return "".join(str(d) for d in digits)
    return list(digits)
