"""Residues of Jacobsthal numbers, computed without building J_k.

J_k mod n is obtained by reducing ``2**k - (-1)**k`` modulo ``3n`` and then
dividing by 3.  Since 3 always divides ``2**k - (-1)**k``, the reduced value
is a multiple of 3 as well, so one code path covers every modulus,
including multiples of 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from jacobsthal.factorization import Budget, FactorCache, factorize, is_probable_prime, proper_divisors
from jacobsthal.sequence import exact_div3, jacobsthal


@dataclass(frozen=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1 or not 0 <= self.value < self.modulus:
            raise ValueError(f"invalid residue {self.value} mod {self.modulus}")

    def __int__(self) -> int:
        return self.value


def jacobsthal_mod(k: int, n: int) -> Residue:
    """J_k mod n.

    >>> jacobsthal_mod(171, 171).value
    0
    """
    if k < 0:
        raise ValueError(f"index must be non-negative, got {k}")
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    big = 3 * n
    sign = 1 if k % 2 == 0 else -1
    t = (pow(2, k, big) - sign) % big
    return Residue(exact_div3(t), n)


def prime_index_residue(p: int) -> Residue:
    """J_p mod p for a prime p > 3 (always 1, by Fermat's little theorem)."""
    if p <= 3:
        raise ValueError(f"p must exceed 3, got {p}")
    if not is_probable_prime(p).is_prime:
        raise ValueError(f"{p} is not prime")
    return Residue(jacobsthal_mod(p, p).value, p)


@dataclass(frozen=True)
class UnitWitness:
    """A prime Q | J_q whose class mod q is a unit, with x = Q^-1 mod q."""

    q: int
    residue_m: int
    big_q: int
    x: int

    def verify(self) -> bool:
        return (
            jacobsthal_mod(self.q, self.big_q).value == 0
            and math.gcd(self.big_q % self.q, self.q) == 1
            and self.x * self.big_q % self.q == 1
            and self.residue_m == jacobsthal_mod(self.q, self.q).value
            and self.residue_m not in (0, 1)
        )

    def to_dict(self) -> dict:
        return {"q": self.q, "M": self.residue_m, "Q": str(self.big_q), "x": self.x}


@dataclass
class WitnessSearch:
    """Outcome of :func:`unit_witness` for one index.

    ``status`` is ``"witness"``, ``"absent"`` (with a ``reason``) or
    ``"inconclusive"`` when factoring ran out of budget.
    ``divisor_residues`` lists ``(Q, Q mod q, x)`` for every unit prime
    divisor, so stronger readings of the x = 1 conjecture can be checked.
    """

    q: int
    status: str
    reason: str | None = None
    residue_m: int | None = None
    witness: UnitWitness | None = None
    divisor_residues: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def x_is_one(self) -> bool | None:
        return None if self.witness is None else self.witness.x == 1

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "status": self.status,
            "reason": self.reason,
            "M": self.residue_m,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "x_is_one": self.x_is_one,
            "divisor_residues": [[str(big_q), r, x] for big_q, r, x in self.divisor_residues],
        }


def _extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        quot, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - quot * x1
        y0, y1 = y1, y0 - quot * y1
    return a, x0, y0


def inverse_mod(a: int, n: int) -> int:
    """Inverse of a modulo n by the extended Euclidean algorithm."""
    g, x, _ = _extended_gcd(a % n, n)
    if g != 1:
        raise ValueError(f"{a} is not invertible modulo {n}")
    return x % n


def unit_witness(q: int, budget: Budget = Budget(), *, seed: int = 0, cache: FactorCache | None = None) -> WitnessSearch:
    """Look for a prime Q | J_q that is a unit mod q, with x = Q^-1 mod q.

    Applies only when J_q is composite and J_q mod q is neither 0 nor 1.
    Prefers the smallest Q with x = 1, falling back to the smallest unit Q.
    """
    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}")
    m = jacobsthal_mod(q, q).value
    if m == 0:
        return WitnessSearch(q, "absent", "residue_is_zero", m)
    if m == 1:
        return WitnessSearch(q, "absent", "residue_is_one", m)
    value = jacobsthal(q)
    if is_probable_prime(value).is_prime:
        return WitnessSearch(q, "absent", "value_is_prime", m)

    hints = [jacobsthal(d) for d in proper_divisors(q) if d > 2]
    fac = factorize(value, budget, seed=seed, hints=hints, cache=cache)
    if not fac.complete:
        return WitnessSearch(q, "inconclusive", "budget_exhausted", m)

    residues = []
    for big_q in fac.primes:
        r = big_q % q
        if math.gcd(r, q) == 1:
            residues.append((big_q, r, inverse_mod(r, q)))
    if not residues:
        return WitnessSearch(q, "absent", "no_unit_divisor", m)
    ones = [entry for entry in residues if entry[2] == 1]
    big_q, _, x = (ones or residues)[0]
    witness = UnitWitness(q, m, big_q, x)
    assert witness.verify()
    return WitnessSearch(q, "witness", None, m, witness, residues)
