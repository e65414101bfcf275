"""Divisibility-sequence laws for the Jacobsthal numbers.

J is a strong divisibility sequence, gcd(J_m, J_n) = J_gcd(m, n).  The
"n | m iff J_n | J_m" law holds for n >= 3 only: J_1 = J_2 = 1 divide
everything, so for n = 2 the backward direction fails (J_2 | J_3, 2 does
not divide 3).  :func:`index_divisibility_exceptions` reports those pairs.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from jacobsthal.factorization import Budget, FactorCache, is_probable_prime, proper_divisors, smallest_prime_factor
from jacobsthal.modular import jacobsthal_mod
from jacobsthal.sequence import is_jacobsthal, jacobsthal


@dataclass
class Verdict:
    """Outcome of a proposition check: ``holds``, ``fails`` or ``inconclusive``."""

    name: str
    index: int | tuple[int, ...]
    status: str
    detail: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    def to_dict(self) -> dict:
        index = list(self.index) if isinstance(self.index, tuple) else self.index
        return {"name": self.name, "index": index, "status": self.status, **self.detail}


def gcd_jacobsthal(m: int, n: int) -> int:
    """gcd(J_m, J_n) by Euclid on the values, asserted equal to J_gcd(m, n)."""
    if m < 1 or n < 1:
        raise ValueError("indices must be positive")
    g = math.gcd(jacobsthal(m), jacobsthal(n))
    assert g == jacobsthal(math.gcd(m, n)), (m, n)
    return g


def gcd_law_sample(samples: int, lo: int, hi: int, seed: int = 0) -> tuple[int, list[tuple[int, int]]]:
    """Check the gcd law on ``samples`` seeded random pairs in [lo, hi].

    Returns the number of pairs checked and the pairs that failed.
    """
    rng = random.Random(seed)
    values = {}
    failures = []
    for _ in range(samples):
        m, n = rng.randint(lo, hi), rng.randint(lo, hi)
        for k in (m, n, math.gcd(m, n)):
            if k not in values:
                values[k] = jacobsthal(k)
        if math.gcd(values[m], values[n]) != values[math.gcd(m, n)]:
            failures.append((m, n))
    return samples, failures


def divides_index(n: int, m: int) -> bool:
    """Whether J_n divides J_m, by a big-integer remainder test."""
    if n < 1 or m < 1:
        raise ValueError("indices must be positive")
    return jacobsthal(m) % jacobsthal(n) == 0


def index_divisibility_exceptions(n_range: range, m_range: range) -> list[Verdict]:
    """Pairs where "n | m iff J_n | J_m" fails as literally stated.

    Each verdict carries ``expected``: True when n is 1 or 2 (J_n = 1), the
    known exceptions; False would be a genuine counterexample.
    """
    out = []
    for n in n_range:
        jn = jacobsthal(n)
        for m in m_range:
            value_div = jacobsthal(m) % jn == 0
            index_div = m % n == 0
            if value_div != index_div:
                out.append(
                    Verdict(
                        "divisibility-iff",
                        (n, m),
                        "fails",
                        {"value_divides": value_div, "index_divides": index_div, "expected": n <= 2},
                    )
                )
    return out


def divisor_closure(m: int) -> list[tuple[int, int]]:
    """Proper divisors a of m paired with J_a; each J_a divides J_m."""
    if m < 2:
        raise ValueError(f"m must be at least 2, got {m}")
    jm = jacobsthal(m)
    out = []
    for a in proper_divisors(m):
        ja = jacobsthal(a)
        assert jm % ja == 0, (a, m)
        out.append((a, ja))
    return out


def _smallest_prime_factor_small(n: int) -> int:
    for p in range(2, math.isqrt(n) + 1):
        if n % p == 0:
            return p
    return n


@dataclass(frozen=True)
class Decomposition:
    """J_q = lcm(J_m, J_k) * cofactor, with m the largest proper divisor of q
    and k its smallest prime factor."""

    q: int
    m: int
    k: int
    cofactor: int

    def to_dict(self) -> dict:
        return {"q": self.q, "m": self.m, "k": self.k, "R": str(self.cofactor)}


def decompose(q: int) -> Decomposition:
    """Split J_q around its largest proper divisor index.

    The literal product J_m * J_k need not divide J_q (it does not when
    gcd(m, k) > 1, e.g. q = 9), so the lcm is divided out instead.

    >>> decompose(15)
    Decomposition(q=15, m=5, k=3, cofactor=331)
    """
    if q <= 4:
        raise ValueError(f"q must exceed 4, got {q}")
    k = _smallest_prime_factor_small(q)
    if k == q:
        raise ValueError(f"q must be composite, {q} is prime")
    m = q // k
    jm, jk = jacobsthal(m), jacobsthal(k)
    lcm = jm * jk // jacobsthal(math.gcd(m, k))
    cofactor, r = divmod(jacobsthal(q), lcm)
    assert r == 0, q
    return Decomposition(q, m, k, cofactor)


def _v3(n: int) -> int:
    e = 0
    while n % 3 == 0:
        n //= 3
        e += 1
    return e


@dataclass(frozen=True)
class ValuationResult:
    """3-adic valuation of J_k, by repeated division and by the index formula.

    ``cofactor`` is J_k / 3**exponent.
    """

    k: int
    prime: int
    exponent: int
    formula_exponent: int
    cofactor: int

    @property
    def agrees(self) -> bool:
        return self.exponent == self.formula_exponent

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "prime": self.prime,
            "exponent": self.exponent,
            "formula_exponent": self.formula_exponent,
            "agrees": self.agrees,
        }


def v3_valuation(k: int) -> ValuationResult:
    """v_3(J_k) by dividing the big integer, checked against v_3(k).

    >>> v3_valuation(27).exponent
    3
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    value, e = jacobsthal(k), 0
    while value % 3 == 0:
        value //= 3
        e += 1
    result = ValuationResult(k, 3, e, _v3(k), value)
    assert result.agrees, k
    return result


def family_index(base: int, n: int, kind: str = "linear") -> int:
    """Index of a divisibility family member.

    ``linear``: base * 3**n.  ``power``: base**n * 3**(n + 2).
    """
    if base < 1 or n < 0:
        raise ValueError("need base >= 1 and n >= 0")
    if kind == "linear":
        return base * 3**n
    if kind == "power":
        return base**n * 3 ** (n + 2)
    raise ValueError(f"unknown family kind {kind!r}")


def check_index_family(base: int, n: int, kind: str = "linear") -> bool:
    """Whether f | J_f for the family index f, via modular exponentiation."""
    f = family_index(base, n, kind)
    return jacobsthal_mod(f, f).value == 0


def family_predicted(base: int, n: int, kind: str = "linear") -> bool:
    """Whether f | J_f is guaranteed for this family member.

    Linear family: guaranteed when base divides J_{3^j} for some j < n.
    Power family: always guaranteed.
    """
    if kind == "power":
        return True
    return any(jacobsthal_mod(3**j, base).value == 0 for j in range(n))


def max_divisor_is_non_jacobsthal(
    q: int,
    budget: Budget = Budget(),
    *,
    seed: int = 0,
    cache: FactorCache | None = None,
) -> Verdict:
    """Check that J_q / spf(J_q), the largest proper divisor of J_q, is not a
    Jacobsthal number.  ``inconclusive`` when the budget cannot find spf(J_q)."""
    if q <= 4:
        raise ValueError(f"q must exceed 4, got {q}")
    if _smallest_prime_factor_small(q) == q:
        raise ValueError(f"q must be composite, {q} is prime")
    value = jacobsthal(q)
    if is_probable_prime(value).is_prime:
        raise ValueError(f"J_{q} is prime")
    hints = [jacobsthal(d) for d in proper_divisors(q) if d > 2]
    p = smallest_prime_factor(value, budget, seed=seed, hints=hints, cache=cache)
    if p is None:
        return Verdict("max-divisor", q, "inconclusive", {"reason": "budget_exhausted"})
    d = value // p
    k = is_jacobsthal(d)
    return Verdict(
        "max-divisor",
        q,
        "holds" if k is None else "fails",
        {"spf": str(p), "max_divisor": str(d), "jacobsthal_index": k},
    )
