from fractions import Fraction

import pytest

from hkbetti.arith import UniLaurent
from hkbetti.series import (
    TruncSeries,
    adams,
    moebius,
    pleth_exp,
    pleth_log,
    s_exp,
    s_inv,
    s_log,
)

q = lambda e=1: UniLaurent({e: 1}, "q")


def S(d, N=5):
    return TruncSeries(d, ("T",), caps=(N,))


def test_mul_truncates():
    assert S({0: 1, 1: 1}) * S({0: 1, 1: -1}) == S({0: 1, 2: -1})


def test_mul_identity():
    a = S({0: 2, 3: Fraction(1, 7)})
    assert a * S({0: 1}) == a


def test_telescoping_at_bound():
    assert S({n: 1 for n in range(6)}) * S({0: 1, 1: -1}) == S({0: 1})


def test_geometric_inverse():
    assert s_inv(S({0: 1, 1: -1})) == S({n: 1 for n in range(6)})


def test_inverse_of_one():
    assert s_inv(S({0: 1})) == S({0: 1})


def test_inverse_with_laurent_coefficients():
    inv = s_inv(S({0: 1, 1: -q()}))
    for n in range(6):
        assert inv[n] == q(n) or (n == 0 and inv[0] == 1)


def test_inverse_needs_unit():
    with pytest.raises((ValueError, ZeroDivisionError)):
        s_inv(S({1: 1}))


def test_log_of_geometric():
    L = s_log(S({n: 1 for n in range(6)}))
    assert all(L[n] == Fraction(1, n) for n in range(1, 6))


def test_exp_of_zero():
    assert s_exp(S({})) == S({0: 1})


def test_log_exp_round_trip():
    a = S({1: 1, 2: 1})
    assert s_log(s_exp(a)) == a


def test_log_needs_constant_one():
    with pytest.raises(ValueError):
        s_log(S({0: 2}))


def test_adams_moves_inner_variables():
    a = S({1: q()})
    assert adams(a, 2) == S({2: q(2)})
    assert adams(a, 1) == a


def test_adams_two_variables():
    z, w = UniLaurent({1: 1}, "z"), UniLaurent({1: 1}, "w")
    a = TruncSeries({(0,): z, (1,): w}, ("T",), caps=(5,))
    b = adams(a, 3)
    assert b[0] == UniLaurent({3: 1}, "z") and b[3] == UniLaurent({3: 1}, "w")


def test_adams_negative_exponents():
    a = S({1: UniLaurent({-2: 1}, "t")})
    assert adams(a, 3)[3] == UniLaurent({-6: 1}, "t")


def test_pleth_log_of_geometric():
    assert pleth_log(S({n: 1 for n in range(11)}, 10)) == S({1: 1}, 10)


def test_pleth_exp_matches_product_form():
    # Exp(qT/(1-q)) = prod_{k>=1} 1/(1 - q^k T) ... checked through Exp(qT) = prod over partitions
    N = 4
    f = S({1: q()}, N)
    E = pleth_exp(f)
    # Exp(qT) = 1/(1 - qT) (q is a single monomial)
    for n in range(N + 1):
        assert E[n] == (q(n) if n else 1)


def test_pleth_exp_geometric_in_q_is_partition_product():
    N = 4
    # f = sum_k q^k T, truncated in q at the range that matters
    f = S({1: UniLaurent({k: 1 for k in range(1, 6)}, "q")}, N)
    E = pleth_exp(f)
    # oracle: prod_{k=1..5} 1/(1 - q^k T)
    prod = S({0: 1}, N)
    for k in range(1, 6):
        prod = prod * s_inv(S({0: 1, 1: -q(k)}, N))
    assert E == prod


@pytest.mark.parametrize("k,mu", [(1, 1), (2, -1), (4, 0), (6, 1), (30, -1), (12, 0)])
def test_moebius(k, mu):
    assert moebius(k) == mu
