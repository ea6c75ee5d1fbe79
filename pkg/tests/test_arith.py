from fractions import Fraction

import pytest

from hkbetti.arith import (
    BiPoly,
    UniLaurent,
    UniRatFun,
    big_binomial,
    kron_mul,
    poly_add,
    poly_mul,
    ratfun_reduce,
)


def L(d, var="q"):
    return UniLaurent(d, var)


def test_square_of_laurent():
    t = L({1: 1, -1: 1}, "t")
    assert t * t == L({2: 1, 0: 2, -2: 1}, "t")


def test_multiply_by_zero():
    assert (L({0: 3, 5: -2}) * L({})).is_zero()


def test_difference_of_squares():
    assert poly_mul(L({0: 1, 1: 1}), L({0: 1, 1: -1})) == L({0: 1, 2: -1})


def test_add_cancels_to_zero_without_stored_zeros():
    s = poly_add(L({1: 2, 3: 1}), L({1: -2}))
    assert s == L({3: 1})
    assert 1 not in s.coeffs


def test_variable_mismatch():
    with pytest.raises(ValueError):
        L({0: 1}, "q") + L({0: 1}, "t")


def test_reduce_common_factor():
    f = ratfun_reduce(UniRatFun(L({2: 1, 0: -1}), L({1: 1, 0: -1})))
    assert f.is_poly() and f.as_laurent() == L({1: 1, 0: 1})


def test_reduce_already_reduced():
    f = ratfun_reduce(UniRatFun(L({1: 1}), L({0: 1})))
    assert f.as_laurent() == L({1: 1})


def test_reduce_cancels_shared_linear_factor():
    num = L({1: 1, 0: -1}) * L({1: 1, 0: -2})
    den = L({1: 1, 0: -2}) * L({1: 1, 0: -3})
    f = ratfun_reduce(UniRatFun(num, den))
    assert f == UniRatFun(L({1: 1, 0: -1}), L({1: 1, 0: -3}))
    assert f.den[f.den.degree()] == 1


def test_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        UniRatFun(L({0: 1}), L({}))


def test_binomials():
    assert big_binomial(2, 1) == 2
    assert big_binomial(7, 0) == 1
    assert big_binomial(200, 100) == 90548514656103281165404177077484163874504589675413336841320


def test_binomial_200_by_pascal():
    row = [1]
    for _ in range(200):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    assert row[100] == big_binomial(200, 100)


def test_binomial_range():
    with pytest.raises(ValueError):
        big_binomial(3, 4)


def test_kronecker_product_matches_schoolbook():
    a = [3, -1, 0, 12345678901234567890, -7]
    b = [-2, 5, 1]
    school = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            school[i + j] += x * y
    assert kron_mul(a, b) == school


def test_taylor_shift():
    p = L({0: 1, 1: 1})
    assert (p ** 3).taylor_shift(1) == L({0: 8, 1: 12, 2: 6, 3: 1})


def test_bipoly_transpose_and_eval():
    H = BiPoly({(0, 3): 1, (2, 1): -2})
    assert H.transpose() == BiPoly({(3, 0): 1, (1, 2): -2})
    assert H(2, 3) == 27 - 2 * 4 * 3


def test_rational_coefficients_stay_exact():
    p = L({0: Fraction(1, 3)}) * L({1: Fraction(3, 2)})
    assert p == L({1: Fraction(1, 2)})
