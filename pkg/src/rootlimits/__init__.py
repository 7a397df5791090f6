"""rootlimits: exact root-system, Weyl-group and Paley-Wiener tower calculus
for the classical families A, B, C, D and BC.

Everything is exact rational arithmetic; analytic growth data is carried as
metadata.  See the per-module docstrings for the conventions (simple-root
numbering, propagation embeddings, skew characters).
"""

from .errors import (
    DomainError,
    ResourceLimitError,
    RootLimitsError,
    TheoremViolationError,
)

__all__ = [
    "DomainError",
    "ResourceLimitError",
    "RootLimitsError",
    "TheoremViolationError",
]

__version__ = "0.1.0"
