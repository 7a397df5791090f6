"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class RootLimitsError(Exception):
    """Base class for all library errors."""


class DomainError(RootLimitsError):
    """Invalid mathematical input (bad rank, dimension mismatch, ...)."""


class ResourceLimitError(RootLimitsError):
    """Computation refused because it would exceed a configured bound."""


class TheoremViolationError(RootLimitsError):
    """A certified identity failed; indicates an implementation bug.

    Raised when a test that is guaranteed by a theorem (divisibility,
    restriction surjectivity, projective-system coherence, ...) does not
    hold on concrete data.
    """

    def __init__(self, message: str, details: dict | None = None):
        super().__init__(message)
        self.details = details or {}
