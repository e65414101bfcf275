"""Jacobsthal numbers J_k and Jacobsthal-Lucas numbers j_k.

Three independent routes to J_k are provided:

* :func:`jacobsthal` -- closed form ``(2**k - (-1)**k) / 3`` using a shift
  and an exact division.  This is the canonical path.
* :func:`jacobsthal_pair` -- fast doubling, O(log k) big-integer steps.
* :func:`jacobsthal_by_recurrence` -- plain iteration of
  ``J[k+2] = J[k+1] + 2*J[k]``, kept as the slow reference.

>>> [jacobsthal(k) for k in range(9)]
[0, 1, 1, 3, 5, 11, 21, 43, 85]
"""

from __future__ import annotations

from typing import NamedTuple

#: Indices past this are documented as unsupported (values have ~3 million digits).
MAX_SUPPORTED_INDEX = 10**7


class SequencePair(NamedTuple):
    """Consecutive values ``(J_k, J_{k+1})``."""

    jk: int
    jk1: int


def _check_index(k: int) -> None:
    if k < 0:
        raise ValueError(f"index must be non-negative, got {k}")


def exact_div3(value: int) -> int:
    """Divide by 3, asserting that the division is exact."""
    q, r = divmod(value, 3)
    if r:
        raise AssertionError(f"internal invariant broken: {value} is not divisible by 3")
    return q


def jacobsthal(k: int) -> int:
    """Return J_k via the closed form."""
    _check_index(k)
    sign = 1 if k % 2 == 0 else -1
    return exact_div3((1 << k) - sign)


def jacobsthal_lucas(k: int) -> int:
    """Return j_k = 2**k + (-1)**k."""
    _check_index(k)
    return (1 << k) + (1 if k % 2 == 0 else -1)


def jacobsthal_by_recurrence(k: int) -> int:
    """Return J_k by iterating the defining recurrence from J_0 = 0, J_1 = 1."""
    _check_index(k)
    a, b = 0, 1
    for _ in range(k):
        a, b = b, b + 2 * a
    return a


def jacobsthal_pair(k: int) -> SequencePair:
    """Return ``(J_k, J_{k+1})`` by fast doubling.

    Uses J_{2n} = J_n * (2*J_{n+1} - J_n) and J_{2n+1} = J_{n+1}**2 + 2*J_n**2.
    """
    _check_index(k)
    a, b = 0, 1  # (J_n, J_{n+1}) with n = 0
    for bit in bin(k)[2:]:
        even = a * (2 * b - a)
        odd = b * b + 2 * a * a
        if bit == "1":
            a, b = odd, odd + 2 * even
        else:
            a, b = even, odd
    return SequencePair(a, b)


def is_jacobsthal(n: int) -> int | None:
    """Return the smallest k with J_k == n, or None.

    Works from the bit length of 3n: an odd index needs ``3n - 1 == 2**k``,
    an even one ``3n + 1 == 2**k``.
    """
    if n < 0:
        return None
    if n == 0:
        return 0
    candidates = []
    below = 3 * n - 1
    if below & (below - 1) == 0:
        k = below.bit_length() - 1
        if k % 2 == 1:
            candidates.append(k)
    above = 3 * n + 1
    if above & (above - 1) == 0:
        k = above.bit_length() - 1
        if k % 2 == 0:
            candidates.append(k)
    return min(candidates) if candidates else None
