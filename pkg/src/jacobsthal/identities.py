"""Numerical verification of the algebraic identities between J_k and j_k.

Each ``check_*`` function evaluates both sides of one identity independently
and returns an :class:`IdentityVerdict`.  :func:`sweep_identity` runs a check
over an index range and keeps every failure.

The triple-index identity is checked in two forms.  The ``literal`` form
``J_{3M} = J_M * (3*J_{2M} - 3*J_M + 1)`` does not hold for any odd M: its
right-hand side falls short by exactly ``2*J_M``.  The ``corrected`` form
``J_{3M} = 3*J_M*(J_{2M} - J_M + 1)`` holds for every odd M.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from jacobsthal.sequence import exact_div3, jacobsthal, jacobsthal_lucas

IDENTITY_NAMES = (
    "double",
    "triple-literal",
    "triple-corrected",
    "cofactor",
    "alt-geometric",
    "geometric",
)

#: Identities whose every check is expected to fail.
EXPECTED_TO_FAIL = frozenset({"triple-literal"})


@dataclass(frozen=True)
class IdentityVerdict:
    name: str
    index: int | tuple[int, int]
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        index = list(self.index) if isinstance(self.index, tuple) else self.index
        return {
            "name": self.name,
            "index": index,
            "holds": self.holds,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "difference": str(self.lhs - self.rhs),
        }


@dataclass
class IdentityReport:
    name: str
    start: int
    stop: int
    checked: int = 0
    failures: list[IdentityVerdict] = field(default_factory=list)

    @property
    def expectation_met(self) -> bool:
        if self.name in EXPECTED_TO_FAIL:
            return len(self.failures) == self.checked
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "range": [self.start, self.stop],
            "checked": self.checked,
            "failures": len(self.failures),
            "expected_failures": self.name in EXPECTED_TO_FAIL,
            "expectation_met": self.expectation_met,
        }


def _require_odd(value: int, what: str) -> None:
    if value < 1 or value % 2 == 0:
        raise ValueError(f"{what} must be a positive odd integer, got {value}")


def cofactor_a(m: int) -> int:
    """Return a_M = (2**(2M) - 2**M + 1) / 3 for odd M (OEIS A345963).

    >>> [cofactor_a(m) for m in (1, 3, 5)]
    [1, 19, 331]
    """
    _require_odd(m, "M")
    a = exact_div3((1 << (2 * m)) - (1 << m) + 1)
    assert 3 * jacobsthal(m) * a == jacobsthal(3 * m)
    return a


def check_double_index(k: int) -> IdentityVerdict:
    """J_{2k} against J_k * j_k."""
    return IdentityVerdict("double", k, jacobsthal(2 * k), jacobsthal(k) * jacobsthal_lucas(k))


def check_cofactor(m: int) -> IdentityVerdict:
    """J_{3M} against 3 * J_M * a_M, with a_M taken from its own closed form."""
    _require_odd(m, "M")
    a = exact_div3((1 << (2 * m)) - (1 << m) + 1)
    return IdentityVerdict("cofactor", m, jacobsthal(3 * m), 3 * jacobsthal(m) * a)


def check_triple_index(m: int, mode: str = "corrected") -> IdentityVerdict:
    _require_odd(m, "M")
    jm, j2m = jacobsthal(m), jacobsthal(2 * m)
    if mode == "literal":
        rhs = jm * (3 * j2m - 3 * jm + 1)
    elif mode == "corrected":
        rhs = 3 * jm * (j2m - jm + 1)
    else:
        raise ValueError(f"mode must be 'literal' or 'corrected', got {mode!r}")
    return IdentityVerdict(f"triple-{mode}", m, jacobsthal(3 * m), rhs)


def _alt_sum(a: int, b: int, literal: bool = False) -> int:
    # partial sums alternate in sign, so keep signed ints until the end
    if literal:
        return sum((-2) ** (i * a) for i in range(b))
    return sum((-1) ** i << (i * a) for i in range(b))


def alt_geometric_factor(a: int, b: int) -> int:
    """Return sum_{i<b} (-1)**i * 2**(i*a), the cofactor of 2**a + 1 in 2**(ab) + 1.

    Only odd ``b`` is accepted; for even ``b`` the sum does not telescope to
    ``2**(ab) + 1``.  The terms equal ``(-2)**(i*a)`` only when ``a`` is odd;
    see :func:`check_alt_geometric` with ``literal=True`` for that form.

    >>> alt_geometric_factor(3, 3)
    57
    """
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    if b % 2 == 0:
        raise ValueError(f"b must be odd, got {b}")
    s = _alt_sum(a, b)
    if s <= 0:
        raise AssertionError(f"alternating sum is not positive for a={a}, b={b}")
    assert ((1 << a) + 1) * s == (1 << (a * b)) + 1
    return s


def geometric_factor(c: int, d: int) -> int:
    """Return sum_{i<d} 2**(i*c), the cofactor of 2**c - 1 in 2**(cd) - 1."""
    if c < 1 or d < 1:
        raise ValueError("c and d must be positive")
    s = sum(1 << (i * c) for i in range(d))
    assert ((1 << c) - 1) * s == (1 << (c * d)) - 1
    return s


def check_alt_geometric(a: int, b: int, literal: bool = False) -> IdentityVerdict:
    """(2**a + 1) * S against 2**(ab) + 1.

    With ``literal=True`` the sum is taken as sum (-2)**(i*a), which fails
    whenever ``a`` is even and ``b > 1`` because every term is then positive.
    """
    if a < 1 or b < 1 or b % 2 == 0:
        raise ValueError(f"need a >= 1 and odd b >= 1, got a={a}, b={b}")
    name = "alt-geometric-literal" if literal else "alt-geometric"
    return IdentityVerdict(name, (a, b), ((1 << a) + 1) * _alt_sum(a, b, literal), (1 << (a * b)) + 1)


def check_geometric(c: int, d: int) -> IdentityVerdict:
    if c < 1 or d < 1:
        raise ValueError(f"need c, d >= 1, got c={c}, d={d}")
    s = sum(1 << (i * c) for i in range(d))
    return IdentityVerdict("geometric", (c, d), ((1 << c) - 1) * s, (1 << (c * d)) - 1)


def _cases(name: str, start: int, stop: int):
    """Yield the argument tuples a sweep over ``start..stop`` (inclusive) visits.

    Single-index identities visit each admissible index.  The two geometric
    identities visit the square grid of admissible pairs.
    """
    if name == "double":
        return [(k,) for k in range(max(start, 0), stop + 1)]
    odd = [m for m in range(max(start, 1), stop + 1) if m % 2 == 1]
    if name in ("triple-literal", "triple-corrected", "cofactor"):
        return [(m,) for m in odd]
    positive = range(max(start, 1), stop + 1)
    if name == "alt-geometric":
        return [(a, b) for a in positive for b in odd]
    if name == "geometric":
        return [(c, d) for c in positive for d in positive]
    raise ValueError(f"unknown identity {name!r}; expected one of {', '.join(IDENTITY_NAMES)}")


_CHECKS = {
    "double": check_double_index,
    "triple-literal": lambda m: check_triple_index(m, "literal"),
    "triple-corrected": lambda m: check_triple_index(m, "corrected"),
    "cofactor": check_cofactor,
    "alt-geometric": check_alt_geometric,
    "geometric": check_geometric,
}


def sweep_identity(name: str, start: int, stop: int) -> IdentityReport:
    """Run identity ``name`` over ``start..stop`` inclusive, collecting all failures.

    >>> sweep_identity("triple-literal", 1, 99).checked
    50
    """
    cases = _cases(name, start, stop)
    if not cases:
        raise ValueError(f"range {start}..{stop} has no admissible indices for {name!r}")
    check = _CHECKS[name]
    report = IdentityReport(name, start, stop)
    for args in cases:
        verdict = check(*args)
        report.checked += 1
        if not verdict.holds:
            report.failures.append(verdict)
    return report
