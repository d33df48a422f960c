"""Tests for ordlab."""
