import math
import random

import pytest

from jacobsthal.divisibility import (
    check_index_family,
    decompose,
    divides_index,
    divisor_closure,
    family_predicted,
    gcd_jacobsthal,
    gcd_law_sample,
    index_divisibility_exceptions,
    max_divisor_is_non_jacobsthal,
    v3_valuation,
)
from jacobsthal.factorization import MINIMAL_BUDGET, Budget
from jacobsthal.sequence import jacobsthal


def euclid(a, b):
    while b:
        a, b = b, a % b
    return a


@pytest.mark.parametrize("m, n, expected", [(12, 18, 21), (5, 5, 11), (7, 11, 1)])
def test_gcd_examples(m, n, expected):
    assert gcd_jacobsthal(m, n) == expected
    assert euclid(jacobsthal(m), jacobsthal(n)) == expected


def test_gcd_law_seeded_pairs():
    rng = random.Random(20240101)
    for _ in range(300):
        m, n = rng.randint(1, 2000), rng.randint(1, 2000)
        assert euclid(jacobsthal(m), jacobsthal(n)) == jacobsthal(math.gcd(m, n))
    checked, failures = gcd_law_sample(1000, 1, 2000, seed=7)
    assert checked == 1000 and failures == []


@pytest.mark.parametrize("n, m, expected", [(3, 9, True), (4, 10, False), (2, 3, True)])
def test_divides_index_examples(n, m, expected):
    assert divides_index(n, m) is expected


def test_index_divisibility_law_n_at_least_3():
    for n in range(3, 51):
        jn = jacobsthal(n)
        for m in range(1, 1001):
            assert (jacobsthal(m) % jn == 0) == (m % n == 0)
    assert index_divisibility_exceptions(range(3, 51), range(1, 301)) == []


def test_index_divisibility_exceptions_small_n():
    found = index_divisibility_exceptions(range(1, 4), range(1, 10))
    pairs = {v.index for v in found}
    assert (2, 3) in pairs
    assert all(v.detail["expected"] for v in found)
    assert all(n == 2 for n, _ in pairs)  # n = 1 divides every index


@pytest.mark.parametrize(
    "m, expected",
    [(6, [(1, 1), (2, 1), (3, 3)]), (9, [(1, 1), (3, 3)]), (5, [(1, 1)])],
)
def test_divisor_closure_examples(m, expected):
    assert divisor_closure(m) == expected


def test_divisor_closure_property():
    for m in range(4, 501):
        if all(m % p for p in range(2, math.isqrt(m) + 1)):
            continue
        jm = jacobsthal(m)
        for a, ja in divisor_closure(m):
            assert m % a == 0 and a < m and jm % ja == 0


@pytest.mark.parametrize("q, m, k, r", [(6, 3, 2, 7), (9, 3, 3, 57), (15, 5, 3, 331)])
def test_decompose_examples(q, m, k, r):
    d = decompose(q)
    assert (d.m, d.k, d.cofactor) == (m, k, r)


def test_decompose_consistency():
    for q in range(5, 201):
        if all(q % p for p in range(2, math.isqrt(q) + 1)):
            with pytest.raises(ValueError):
                decompose(q)
            continue
        d = decompose(q)
        jm, jk = jacobsthal(d.m), jacobsthal(d.k)
        lcm = jm * jk // math.gcd(jm, jk)
        assert lcm * d.cofactor == jacobsthal(q) and d.cofactor >= 1
        assert d.m * d.k == q


def test_literal_product_can_fail():
    # q = 25: m = k = 5 and J_5 * J_5 does not divide J_25, the lcm does
    assert jacobsthal(25) % (jacobsthal(5) ** 2) != 0
    assert decompose(25).cofactor * jacobsthal(5) == jacobsthal(25)


def test_decompose_rejects():
    for q in (4, 7, 3):
        with pytest.raises(ValueError):
            decompose(q)


@pytest.mark.parametrize("k, e", [(9, 2), (4, 0), (27, 3), (243, 5)])
def test_valuation_examples(k, e):
    assert v3_valuation(k).exponent == e


def test_valuation_law():
    for k in range(1, 3001):
        value, e = jacobsthal(k), 0
        while value % 3 == 0:
            value //= 3
            e += 1
        f, kk = 0, k
        while kk % 3 == 0:
            kk //= 3
            f += 1
        assert e == f
        assert v3_valuation(k).exponent == e
    assert v3_valuation(27).cofactor == 1657009


@pytest.mark.parametrize("base, n, expected", [(19, 2, True), (19, 1, False), (1, 3, True)])
def test_family_examples(base, n, expected):
    assert check_index_family(base, n) is expected


def test_family_law():
    for n in range(2, 7):
        assert check_index_family(19, n)
    for n in (1, 2):
        assert check_index_family(19, n, "power")


def test_family_against_big_integers():
    for base in (1, 5, 7, 19):
        for n in range(0, 4):
            f = base * 3**n
            assert check_index_family(base, n) == (jacobsthal(f) % f == 0)


def test_family_prediction():
    assert not family_predicted(19, 2)
    assert family_predicted(19, 3)
    assert family_predicted(19, 1, "power")


@pytest.mark.parametrize("q, d", [(6, 7), (8, 17), (12, 455)])
def test_max_divisor_examples(q, d):
    v = max_divisor_is_non_jacobsthal(q)
    assert v.status == "holds"
    assert v.detail["max_divisor"] == str(d)


def test_max_divisor_rejects_and_inconclusive():
    for q in (4, 7):
        with pytest.raises(ValueError):
            max_divisor_is_non_jacobsthal(q)
    # J_25 = 11 * 251 * 4051: the hint J_5 = 11 splits off 11, but with no rho
    # budget 251 * 4051 stays unfactored and 11 is above the trial bound
    v = max_divisor_is_non_jacobsthal(25, MINIMAL_BUDGET)
    assert v.status == "inconclusive"
    assert not v.holds
    # hints alone settle q = 6
    assert max_divisor_is_non_jacobsthal(6, MINIMAL_BUDGET).status == "holds"


def test_max_divisor_scan_small():
    for q in range(6, 61):
        if all(q % p for p in range(2, math.isqrt(q) + 1)):
            continue
        v = max_divisor_is_non_jacobsthal(q, Budget())
        assert v.status == "holds", q
