"""
Error types shared across domainlab.
"""

from __future__ import annotations


class DomainError(ValueError):
    """Malformed domain, tree or rule input, or a violated structural invariant."""


class BudgetExceeded(RuntimeError):
    """An evaluation / node budget ran out before a search finished."""

    def __init__(self, stage: str, spent: int, limit: int):
        super().__init__(f"budget exhausted in {stage}: {spent:,} > {limit:,}")
        self.stage = stage
        self.spent = spent
        self.limit = limit


class VerificationFailed(RuntimeError):
    """A constructed rule failed an axiom it is guaranteed to satisfy."""
