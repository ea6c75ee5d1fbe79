"""The compiled kernels and the numpy fallback must agree bit for bit."""

import numpy as np
import pytest

from hkbetti import _kernels_py, kernels
from hkbetti.modular import BoxSeries, safe_prime

try:
    from hkbetti import _kernels as _cy
except ImportError:
    _cy = None

needs_cy = pytest.mark.skipif(_cy is None, reason="compiled extension not built")


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "numpy")


@needs_cy
@pytest.mark.parametrize("seed", range(3))
def test_series_kernels_agree(seed):
    p = safe_prime(seed)
    rng = np.random.default_rng(seed)
    box = BoxSeries((3, 4, 2))
    A = rng.integers(0, p, size=(box.n, 7), dtype=np.int64)
    B = rng.integers(0, p, size=(box.n, 7), dtype=np.int64)
    A[0] = 1
    ptr, ia, ib = box.mul_idx
    assert np.array_equal(_cy.series_mul(A, B, ptr, ia, ib, p), _kernels_py.series_mul(A, B, ptr, ia, ib, p))
    ptr, ia, ib = box.inv
    assert np.array_equal(_cy.series_inv1(A, ptr, ia, ib, p), _kernels_py.series_inv1(A, ptr, ia, ib, p))
    ptr, ia, ib, w = box.log
    d = box.invdeg(p)
    assert np.array_equal(_cy.series_log1(A, ptr, ia, ib, w, d, p),
                          _kernels_py.series_log1(A, ptr, ia, ib, w, d, p))


@needs_cy
def test_scalar_kernels_agree():
    p = safe_prime(0)
    rng = np.random.default_rng(7)
    x = rng.integers(1, p, size=300, dtype=np.int64)
    assert np.array_equal(_cy.powmod_vec(x, 12345, p), _kernels_py.powmod_vec(x, 12345, p))
    assert np.array_equal(_cy.inv_vec(x, p), _kernels_py.inv_vec(x, p))
    assert np.array_equal(_cy.pow_table(x, -5, 9, p), _kernels_py.pow_table(x, -5, 9, p))
    Y = rng.integers(0, p, size=(6, 20), dtype=np.int64)
    assert np.array_equal(_cy.newton_interp(Y, 11, p), _kernels_py.newton_interp(Y, 11, p))


def test_inverse_of_zero_raises():
    with pytest.raises(ArithmeticError):
        _kernels_py.inv_vec(np.array([3, 0]), safe_prime(0))
