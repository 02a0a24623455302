from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from regdyn.exactnum import (AlgebraicNumber, Place, abs_at_place_exact,
                             conjugates, find_expanding_place, is_root_of_unity,
                             product_formula_check, valuation)

rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4)


def test_place_construction():
    assert Place.archimedean().is_finite is False
    assert Place.finite(7).prime == 7
    with pytest.raises(ValueError):
        Place.finite(6)


def test_valuation_oracles():
    assert valuation(F(12), 2) == 2
    assert valuation(F(12), 3) == 1
    assert valuation(F(1, 8), 2) == -3
    assert valuation(F(5, 7), 5) == 1


def test_abs_at_place_exact():
    assert abs_at_place_exact(F(12), Place.finite(2)) == F(1, 4)
    assert abs_at_place_exact(F(1, 9), Place.finite(3)) == 9
    assert abs_at_place_exact(F(-7, 3), Place.finite(5)) == 1


@given(rationals.filter(lambda q: q != 0))
def test_product_formula(q):
    assert product_formula_check(q).holds


def test_algebraic_rational_roundtrip():
    a = AlgebraicNumber.from_rational(F(3, 7))
    assert a.is_rational() and a.as_rational() == F(3, 7)


def test_algebraic_sqrt2():
    a = AlgebraicNumber([-2, 0, 1], 1)  # the positive root of x^2 - 2
    box = a.isolating_box(F(1, 10**12))
    # compare against a rational approximation tighter than the box itself
    from math import isqrt
    sqrt2 = F(isqrt(2 * 10**80), 10**40)
    assert box.re.lower <= sqrt2 <= box.re.upper + F(1, 10**39)
    assert abs(float(box.re.lower) - 2 ** 0.5) < 1e-10
    assert a.degree == 2


def test_conjugate_boxes_disjoint():
    a = AlgebraicNumber([-2, 0, 1], 0)
    boxes = conjugates(a)
    assert len(boxes) == 2
    assert boxes[0].disjoint(boxes[1])


def test_root_of_unity_detection():
    zeta3 = AlgebraicNumber([1, 1, 1], 0)  # x^2 + x + 1
    flag, n = is_root_of_unity(zeta3)
    assert flag and n == 3
    sqrt2 = AlgebraicNumber([-2, 0, 1], 1)
    assert is_root_of_unity(sqrt2)[0] is False
    one = AlgebraicNumber.from_rational(1)
    assert is_root_of_unity(one) == (True, 1)


def test_expanding_place_trichotomy():
    # 2: expanding at the Archimedean place
    w = find_expanding_place(AlgebraicNumber.from_rational(2))
    assert w is not None and not w.place.is_finite
    # 1/2: expanding at 2 (denominator)
    w = find_expanding_place(AlgebraicNumber.from_rational(F(1, 2)))
    assert w is not None and w.place.prime == 2
    # 2/3: |2/3|_3 = 3 > 1
    w = find_expanding_place(AlgebraicNumber.from_rational(F(2, 3)))
    assert w is not None and w.place.prime == 3
    # root of unity: no expanding place
    assert find_expanding_place(AlgebraicNumber([1, 1, 1], 0)) is None
    # Kronecker: sqrt(2) expands somewhere
    assert find_expanding_place(AlgebraicNumber([-2, 0, 1], 1)) is not None


@given(st.integers(min_value=2, max_value=50))
def test_roots_of_unity_recognized(n):
    import sympy as sp
    x = sp.Symbol("x")
    poly = sp.Poly(sp.cyclotomic_poly(n, x), x)
    a = AlgebraicNumber(poly, 0)
    flag, order = is_root_of_unity(a)
    assert flag and order == n
