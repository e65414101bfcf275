"""Primality testing, budgeted factoring and the Jacobsthal prime scan.

Work is bounded by a :class:`Budget` counted in abstract units (trial
division bound plus Pollard-rho iterations) rather than wall-clock time, so
the same inputs always give the same factorization, complete or not.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from jacobsthal.sequence import jacobsthal

#: Miller-Rabin with the first 13 prime bases is deterministic below this bound
#: (Sorenson & Webster, 2015).
DETERMINISTIC_LIMIT = 3317044064679887385961981
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

DEFAULT_SEED = 0


class Primality(str, Enum):
    PRIME = "prime"
    PROBABLE_PRIME = "probable-prime"
    COMPOSITE = "composite"

    @property
    def is_prime(self) -> bool:
        return self is not Primality.COMPOSITE


@dataclass(frozen=True)
class Budget:
    """Deterministic cap on factoring work.

    ``rho_iterations`` is shared by every Pollard-rho call made while
    factoring one value; ``trial_bound`` is the trial division limit.
    """

    rho_iterations: int = 1_000_000
    trial_bound: int = 100_000

    def __post_init__(self):
        if self.rho_iterations < 0 or self.trial_bound < 2:
            raise ValueError("budget must have rho_iterations >= 0 and trial_bound >= 2")


MINIMAL_BUDGET = Budget(rho_iterations=0, trial_bound=2)


@lru_cache(maxsize=8)
def primes_below(limit: int) -> tuple[int, ...]:
    """Primes p < limit by the sieve of Eratosthenes."""
    if limit < 3:
        return ()
    sieve = bytearray([1]) * limit
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit - 1) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, limit, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _strong_probable_prime(n: int, base: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("n must be odd and positive")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _half(x: int, n: int) -> int:
    # x / 2 mod n for odd n
    return (x if x % 2 == 0 else x + n) // 2 % n


def _strong_lucas_probable_prime(n: int) -> bool:
    """Strong Lucas test with Selfridge parameters (odd n > 2, not a square)."""
    d_param = 5
    while True:
        j = jacobi(d_param, n)
        if j == -1:
            break
        if j == 0 and abs(d_param) != n:
            return False
        d_param = -d_param - 2 if d_param > 0 else -d_param + 2
    p, q = 1, (1 - d_param) // 4

    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    u, v, qk = 1, p, q % n
    for bit in bin(d)[3:]:
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = _half(p * u + v, n), _half(d_param * u + p * v, n)
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if v == 0:
            return True
    return False


def is_probable_prime(n: int) -> Primality:
    """Classify ``n``.

    Below :data:`DETERMINISTIC_LIMIT` the answer is proven (``PRIME`` or
    ``COMPOSITE``).  Above it, a value passing Miller-Rabin on all of
    :data:`MR_BASES` and a strong Lucas test is reported as
    ``PROBABLE_PRIME`` and never upgraded.  0 and 1 are ``COMPOSITE``.
    """
    if n < 2:
        return Primality.COMPOSITE
    for p in MR_BASES:
        if n == p:
            return Primality.PRIME
        if n % p == 0:
            return Primality.COMPOSITE
    if n < 43 * 43:
        return Primality.PRIME
    if not all(_strong_probable_prime(n, b) for b in MR_BASES):
        return Primality.COMPOSITE
    if n < DETERMINISTIC_LIMIT:
        return Primality.PRIME
    if math.isqrt(n) ** 2 == n or not _strong_lucas_probable_prime(n):
        return Primality.COMPOSITE
    return Primality.PROBABLE_PRIME


@dataclass
class Factorization:
    """``n = prod(p**e for p, e in factors) * (cofactor or 1)``."""

    n: int
    factors: list[tuple[int, int]] = field(default_factory=list)
    cofactor: int | None = None

    @property
    def complete(self) -> bool:
        return self.cofactor is None

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def product(self) -> int:
        total = self.cofactor or 1
        for p, e in self.factors:
            total *= p**e
        return total

    def validate(self) -> None:
        """Raise ValueError if any structural invariant is broken."""
        if self.product() != self.n:
            raise ValueError(f"factors of {self.n} multiply to {self.product()}")
        primes = self.primes
        if primes != sorted(set(primes)):
            raise ValueError("primes must be strictly increasing")
        for p, e in self.factors:
            if e < 1 or not is_probable_prime(p).is_prime:
                raise ValueError(f"bad factor {p}^{e}")
        if self.cofactor is not None and (self.cofactor < 2 or is_probable_prime(self.cofactor).is_prime):
            raise ValueError(f"cofactor {self.cofactor} must be composite")

    def to_dict(self) -> dict:
        return {
            "n": str(self.n),
            "factors": [[str(p), e] for p, e in self.factors],
            "cofactor": None if self.cofactor is None else str(self.cofactor),
            "complete": self.complete,
        }

    @classmethod
    def from_parts(cls, n: int, primes: list[int], leftovers: list[int]) -> "Factorization":
        counts: dict[int, int] = {}
        for p in primes:
            counts[p] = counts.get(p, 0) + 1
        cofactor = math.prod(leftovers) if leftovers else None
        return cls(n, sorted(counts.items()), cofactor)


class FactorCache:
    """Thread-safe map from a value to its best known factorization.

    Persistence lives in :mod:`jacobsthal.cache`.
    """

    def __init__(self, entries: dict[int, Factorization] | None = None):
        self._entries: dict[int, Factorization] = dict(entries or {})
        self._new: dict[int, Factorization] = {}
        self._lock = threading.Lock()

    def get(self, n: int) -> Factorization | None:
        with self._lock:
            return self._entries.get(n)

    def put(self, fac: Factorization) -> None:
        with self._lock:
            old = self._entries.get(fac.n)
            if old is None or (fac.complete and not old.complete):
                self._entries[fac.n] = fac
                self._new[fac.n] = fac

    def drain_new(self) -> list[Factorization]:
        """Entries stored since the previous call, oldest first."""
        with self._lock:
            new, self._new = list(self._new.values()), {}
            return new

    def entries(self) -> dict[int, Factorization]:
        with self._lock:
            return dict(self._entries)

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)


class _Work:
    def __init__(self, budget: Budget):
        self.remaining = budget.rho_iterations


def _brent_rho(n: int, c: int, y0: int, work: _Work, batch: int = 128) -> int | None:
    """One Brent cycle-finding run with polynomial x**2 + c.

    Returns a non-trivial divisor, ``n`` on cycle failure, or None when the
    budget runs out.
    """
    y, r, q = y0, 1, 1
    g = 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            steps = min(batch, r - k)
            if work.remaining < steps:
                work.remaining = 0
                return None
            work.remaining -= steps
            for _ in range(steps):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += steps
        r *= 2
    if g == n:
        # backtrack one step at a time from the last saved point
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g


def _rho_split(n: int, work: _Work, seed: int) -> int | None:
    y0 = 2 + seed % (n - 3) if n > 4 else 2
    c = 1
    while work.remaining > 0:
        g = _brent_rho(n, c, y0, work)
        if g is None:
            return None
        if 1 < g < n:
            return g
        c += 1
    return None


def _perfect_power(n: int) -> tuple[int, int] | None:
    for e in range(2, n.bit_length() + 1):
        r = round(n ** (1.0 / e)) if n < 2**1000 else _iroot(n, e)
        for cand in (r - 1, r, r + 1):
            if cand > 1 and cand**e == n:
                return cand, e
    return None


def _iroot(n: int, e: int) -> int:
    lo, hi = 1, 1 << (n.bit_length() // e + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**e <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _split_fully(n: int, work: _Work, seed: int, primes: list[int], leftovers: list[int]) -> None:
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m).is_prime:
            primes.append(m)
            continue
        power = _perfect_power(m)
        if power is not None:
            stack.extend([power[0]] * power[1])
            continue
        d = _rho_split(m, work, seed)
        if d is None:
            leftovers.append(m)
            continue
        stack.extend([d, m // d])


def _refine(pieces: list[int], hints) -> list[int]:
    for h in hints:
        refined = []
        for piece in pieces:
            g = math.gcd(piece, h)
            if 1 < g < piece:
                refined.extend([g, piece // g])
            else:
                refined.append(piece)
        pieces = refined
    return pieces


def factorize(
    n: int,
    budget: Budget = Budget(),
    *,
    seed: int = DEFAULT_SEED,
    hints=(),
    cache: FactorCache | None = None,
) -> Factorization:
    """Factor ``n`` within ``budget``.

    Trial division by primes below ``budget.trial_bound`` comes first, then
    Brent's variant of Pollard rho on what is left.  ``hints`` are integers
    believed to share factors with ``n`` (e.g. J_d for d | q when factoring
    J_q); gcds with them split ``n`` before any rho work.  When the budget
    runs out the unsplit remainder is returned as ``cofactor``.

    >>> factorize(178956971).factors
    [(59, 1), (3033169, 1)]
    """
    if n < 1:
        raise ValueError(f"can only factor positive integers, got {n}")
    if cache is not None:
        hit = cache.get(n)
        if hit is not None and hit.complete:
            return hit

    primes: list[int] = []
    leftovers: list[int] = []
    rest = n
    for p in primes_below(budget.trial_bound):
        if p * p > rest:
            break
        while rest % p == 0:
            primes.append(p)
            rest //= p
    if rest > 1 and rest < budget.trial_bound**2:
        primes.append(rest)
        rest = 1

    work = _Work(budget)
    for piece in _refine([rest], hints):
        _split_fully(piece, work, seed, primes, leftovers)

    fac = Factorization.from_parts(n, primes, leftovers)
    if cache is not None:
        cache.put(fac)
    return fac


def smallest_prime_factor(n: int, budget: Budget = Budget(), **kwargs) -> int | None:
    """Smallest prime factor of ``n``, or None if the budget cannot settle it.

    With an incomplete factorization the smallest found prime is still the
    answer when it lies below the trial bound, since every prime below that
    bound has already been divided out of the cofactor.
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    fac = factorize(n, budget, **kwargs)
    if not fac.factors:
        return None
    p = fac.factors[0][0]
    if fac.complete or p < budget.trial_bound:
        return p
    return None


@dataclass
class ScanRecord:
    q: int
    index_class: str
    value_digits: int
    value_class: str
    factors: Factorization | None = None
    notes: str = ""
    elapsed: float | None = None

    def to_dict(self, timing: bool = False) -> dict:
        row = {
            "q": self.q,
            "index_class": self.index_class,
            "value_digits": self.value_digits,
            "value_class": self.value_class,
            "factors": None if self.factors is None else self.factors.to_dict(),
            "notes": self.notes,
        }
        if timing:
            row["elapsed"] = self.elapsed
        return row


def proper_divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted({d for d in small} | {n // d for d in small} - {n})


def scan_index(q: int, budget: Budget = Budget(), *, seed: int = DEFAULT_SEED, cache: FactorCache | None = None) -> ScanRecord:
    """Classify q and J_q, attaching a (possibly partial) factorization."""
    value = jacobsthal(q)
    index_class = "prime" if q >= 2 and is_probable_prime(q).is_prime else "composite"
    record = ScanRecord(q, index_class, len(str(value)), "composite")
    if value < 2:
        record.notes = "unit value, not prime"
        return record
    record.value_class = is_probable_prime(value).value
    if record.value_class != "composite":
        record.factors = Factorization(value, [(value, 1)])
        return record
    # J_d divides J_q for every d | q; those gcds split J_q algebraically first
    hints = [jacobsthal(d) for d in proper_divisors(q) if d > 2]
    record.factors = factorize(value, budget, seed=seed, hints=hints, cache=cache)
    if not record.factors.complete:
        record.notes = "budget exhausted, cofactor unfactored"
    return record


def jacobsthal_prime_scan(
    start: int,
    stop: int,
    budget: Budget = Budget(),
    *,
    seed: int = DEFAULT_SEED,
    cache: FactorCache | None = None,
) -> list[ScanRecord]:
    """One :class:`ScanRecord` per index in ``start..stop`` inclusive."""
    return [scan_index(q, budget, seed=seed, cache=cache) for q in range(start, stop + 1)]
