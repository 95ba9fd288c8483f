from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from millerzeros.intpoly import (
    count_real_roots_in, count_with_hints, fp_is_irreducible, fp_linear_times_irreducible, horner,
    poly_rem, sign_changes, taylor_shift,
)

X = sympy.Symbol("x")


def sympy_open_count(p, a, b):
    n = 0
    for f, e in sympy.factor_list(sympy.Poly(p, X))[1]:
        n += e * sum(1 for r in sympy.Poly(f, X).real_roots() if a < r < b)
    return n


def test_examples():
    assert count_real_roots_in([1, -720], 0, 1728) == 1
    assert count_real_roots_in([1, -720], 1000, 1728) == 0
    assert count_real_roots_in([1, -3, 2], 0, 3) == 2
    # open interval: roots at the endpoints are not counted
    assert count_real_roots_in([1, -3, 2], 1, 2) == 0
    assert count_real_roots_in([1, -2, 1], 0, 2) == 2


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=2, max_size=8),
       st.fractions(min_value=-20, max_value=20, max_denominator=7),
       st.fractions(min_value=-20, max_value=20, max_denominator=7))
def test_count_matches_sympy(p, a, b):
    assume(p[0] != 0 and a < b)
    assert count_real_roots_in(p, a, b) == sympy_open_count(p, a, b)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=1, max_size=7, unique=True))
def test_count_products_of_linears(rs):
    p = [1]
    for r in rs:
        p = [x - r * y for x, y in zip(p + [0], [0] + p)]
    want = sum(1 for r in rs if 0 < r < 25)
    assert count_real_roots_in(p, 0, 25) == want
    assert count_with_hints(p, 0, 25, [r + 0.5 for r in rs]) == want


def test_helpers():
    assert horner([1, 0, -2], 3) == 7
    assert sign_changes([1, 0, -1, -2, 3]) == 2
    assert taylor_shift([1, 0, 0], 1) == [1, 2, 1]
    assert poly_rem([1, 0, 1], [1, -1]) == [2]


@pytest.mark.parametrize("p,q,want", [([1, 0, 1], 3, True), ([1, 0, 1], 5, False), ([1, 1, 1], 2, True),
                                      ([1, 0, 0, 2], 7, True), ([1, 0, 0, 1], 2, False)])
def test_irreducible_examples(p, q, want):
    assert fp_is_irreducible(p, q) is want


def _sympy_factor_degrees(p, q):
    f = sympy.Poly(p, X, modulus=q)
    _, fs = f.factor_list()
    return sorted(sympy.Poly(g, X, modulus=q).degree() for g, e in fs for _ in range(e))


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(0, 100), min_size=2, max_size=9), st.sampled_from([2, 3, 5, 7, 11, 13, 31, 97]))
def test_fp_kernels_match_sympy(tail, q):
    p = [1] + tail
    degs = _sympy_factor_degrees(p, q)
    n = len(p) - 1
    assert fp_is_irreducible(p, q) == (degs == [n])
    if n >= 3:
        assert fp_linear_times_irreducible(p, q) == (degs == [1, n - 1])


def test_linear_times_irreducible_examples():
    # x (x^2 + 1) mod 3 and x^2 (x + 1) mod 3
    assert fp_linear_times_irreducible([1, 0, 1, 0], 3)
    assert not fp_linear_times_irreducible([1, 1, 0, 0], 3)


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        count_real_roots_in([1, 0], 1, Fraction(1))
