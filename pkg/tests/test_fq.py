from fractions import Fraction

import numpy as np
import pytest

from hkbetti.checks import fq_corpus
from hkbetti.families import Quiver, poincare_grassmannian, poincare_hilbert
from hkbetti.fq import (
    FqConfig,
    check_katz,
    count_fiber_bruteforce,
    count_fiber_fourier,
    e_polynomial,
    interpolate_rational,
    kernel_size,
)

TP1 = Quiver(1, [], (1,), (2,))
POINT = Quiver(1, [], (1,), (1,))


def test_bruteforce_examples():
    assert count_fiber_bruteforce(FqConfig(2, TP1, (1,))) == 6
    assert count_fiber_bruteforce(FqConfig(3, POINT, (1,))) == 2
    assert count_fiber_bruteforce(FqConfig(2, POINT, (0,))) == 3


def test_tp1_fibre_is_q3_minus_q():
    # i in F_q^2 nonzero, j on an affine line: (q^2 - 1) q
    pts = [(q, count_fiber_fourier(FqConfig(q, TP1, (1,)))) for q in (2, 3, 5, 7)]
    assert interpolate_rational(pts) == [0, -1, 0, 1]


@pytest.mark.parametrize("cfg", fq_corpus(), ids=str)
def test_fourier_equals_bruteforce(cfg):
    assert count_fiber_fourier(cfg) == count_fiber_bruteforce(cfg)


def test_fourier_zero_xi_is_plain_sum():
    cfg = FqConfig(3, POINT, (0,))
    count, S = count_fiber_fourier(cfg, return_sums=True)
    assert count == 3 ** cfg.dim_V() * sum(S) // 3 ** cfg.dim_g()


def test_kernel_sizes_are_q_powers():
    cfg = FqConfig(3, Quiver.loops(1, (2,), (1,)), (1,))
    rng = np.random.default_rng(0)
    for _ in range(20):
        X = [rng.integers(0, 3, size=(2, 2))]
        k = kernel_size(cfg, X)
        while k % 3 == 0:
            k //= 3
        assert k == 1


def test_state_cap():
    with pytest.raises(ValueError):
        count_fiber_bruteforce(FqConfig(7, Quiver.loops(1, (2,), (2,)), (1,)))


def test_prime_required():
    with pytest.raises(ValueError):
        FqConfig(4, POINT, (1,))


def test_katz_tp1():
    rep = check_katz(TP1, (1,), poincare_grassmannian(2, 1), primes=(2, 3, 5))
    assert rep["pass"] and rep["values"]["E"] == [0, 1, 1]


def test_katz_point():
    assert check_katz(POINT, (1,), poincare_grassmannian(1, 1), primes=(2, 3))["pass"]


def test_katz_jordan():
    rep = check_katz(Quiver.loops(1, (1,), (1,)), (1,), poincare_hilbert(1), primes=(2, 3, 5))
    assert rep["pass"] and rep["values"]["E"] == [0, 0, 1]


def test_e_polynomial_indexing():
    # T*P^2 has complex dimension 4: E = q^4 + q^3 + q^2
    assert e_polynomial(poincare_grassmannian(3, 1)) == [0, 0, 1, 1, 1]


def test_lagrange():
    assert interpolate_rational([(0, 1), (1, 3), (2, 7)]) == [1, 1, 1]
    assert interpolate_rational([(1, Fraction(1, 2)), (3, Fraction(3, 2))]) == [0, Fraction(1, 2)]
