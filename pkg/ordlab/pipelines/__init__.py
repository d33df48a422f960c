"""Long-running check pipelines."""

from .invariants import InvariantSuitePipeline

__all__ = ["InvariantSuitePipeline"]
