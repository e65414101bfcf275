import pytest
from hypothesis import given, strategies as st

from jacobsthal.identities import (
    alt_geometric_factor,
    check_alt_geometric,
    check_cofactor,
    check_double_index,
    check_geometric,
    check_triple_index,
    cofactor_a,
    geometric_factor,
    sweep_identity,
)
from jacobsthal.sequence import jacobsthal


@pytest.mark.parametrize("m, expected", [(1, 1), (3, 19), (5, 331)])
def test_cofactor_examples(m, expected):
    assert cofactor_a(m) == expected


def test_cofactor_rejects_even():
    with pytest.raises(ValueError):
        cofactor_a(4)


@pytest.mark.parametrize("k, lhs, rhs", [(1, 1, 1), (3, 21, 21), (8, 21845, 21845)])
def test_double_index(k, lhs, rhs):
    v = check_double_index(k)
    assert v.holds and (v.lhs, v.rhs) == (lhs, rhs)


def test_triple_examples():
    lit = check_triple_index(1, "literal")
    assert not lit.holds and (lit.lhs, lit.rhs) == (3, 1)
    assert check_triple_index(1, "corrected").holds
    v = check_triple_index(3, "corrected")
    assert v.holds and v.lhs == 171


def test_triple_rejects_even_and_bad_mode():
    with pytest.raises(ValueError):
        check_triple_index(2)
    with pytest.raises(ValueError):
        check_triple_index(3, "other")


@pytest.mark.parametrize("a, b, expected", [(1, 3, 3), (2, 1, 1), (3, 3, 57)])
def test_alt_geometric_examples(a, b, expected):
    assert alt_geometric_factor(a, b) == expected


def test_alt_geometric_rejects_even_b():
    with pytest.raises(ValueError):
        alt_geometric_factor(3, 4)


@pytest.mark.parametrize("c, d, expected", [(1, 4, 15), (5, 1, 1), (2, 3, 21)])
def test_geometric_examples(c, d, expected):
    assert geometric_factor(c, d) == expected


def test_errata_difference_is_two_jm():
    for m in range(1, 1000, 2):
        v = check_triple_index(m, "literal")
        assert not v.holds
        assert v.lhs - v.rhs == 2 * jacobsthal(m)


@given(st.integers(1, 32), st.integers(0, 7))
def test_alt_geometric_property(a, half):
    b = 2 * half + 1
    assert check_alt_geometric(a, b).holds


@given(st.integers(1, 32), st.integers(1, 16))
def test_geometric_property(c, d):
    assert check_geometric(c, d).holds


@given(st.integers(0, 499))
def test_cofactor_property(half):
    assert check_cofactor(2 * half + 1).holds


@pytest.mark.parametrize(
    "name, lo, hi, checked, failures",
    [
        ("double", 0, 100, 101, 0),
        ("triple-literal", 1, 99, 50, 50),
        ("triple-corrected", 1, 99, 50, 0),
        ("cofactor", 1, 1, 1, 0),
        ("alt-geometric", 1, 5, 15, 0),
        ("geometric", 1, 4, 16, 0),
    ],
)
def test_sweeps(name, lo, hi, checked, failures):
    report = sweep_identity(name, lo, hi)
    assert report.checked == checked
    assert len(report.failures) == failures
    assert report.expectation_met


def test_sweep_unknown_and_empty():
    with pytest.raises(ValueError):
        sweep_identity("nope", 0, 10)
    with pytest.raises(ValueError):
        sweep_identity("cofactor", 2, 2)


def test_sweep_failures_are_sorted_and_complete():
    report = sweep_identity("triple-literal", 1, 9)
    assert [v.index for v in report.failures] == [1, 3, 5, 7, 9]


def test_printed_alternating_sum_only_holds_for_odd_a():
    for a in range(1, 33):
        for b in range(1, 16, 2):
            literal = check_alt_geometric(a, b, literal=True)
            assert literal.holds == (a % 2 == 1 or b == 1), (a, b)
    assert check_alt_geometric(2, 3, literal=True).lhs == 105
