"""Exact Jacobsthal arithmetic, identity checks and divisibility scans."""

from jacobsthal.sequence import (
    SequencePair,
    is_jacobsthal,
    jacobsthal,
    jacobsthal_by_recurrence,
    jacobsthal_lucas,
    jacobsthal_pair,
)

__all__ = [
    "SequencePair",
    "is_jacobsthal",
    "jacobsthal",
    "jacobsthal_by_recurrence",
    "jacobsthal_lucas",
    "jacobsthal_pair",
]

__version__ = "0.1.0"
