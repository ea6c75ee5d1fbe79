import gmpy2
import numpy as np

from hkbetti.modular import (
    BoxSeries,
    balanced,
    crt_combine,
    interpolate_bipoly,
    interpolate_poly,
    safe_prime,
)


def test_safe_primes():
    for i in range(4):
        p = safe_prime(i)
        assert p < 2 ** 31 and gmpy2.is_prime(p) and gmpy2.is_prime((p - 1) // 2)
    assert safe_prime(0) > safe_prime(1) > safe_prime(2)


def test_crt_balanced_lift():
    p1, p2 = safe_prime(0), safe_prime(1)
    vals = [-5, 123456789012345678, 0]
    X, M = [v % p1 for v in vals], p1
    X, M = crt_combine(X, M, [v % p2 for v in vals], p2)
    assert balanced(X, M) == vals


def _evaluator(coeffs):
    def ev(xs, p):
        out = []
        for x in xs.tolist():
            acc = 0
            for c in reversed(coeffs):
                acc = (acc * x + c) % p
            out.append(acc)
        return np.array(out, dtype=np.int64)
    return ev


def test_interpolate_big_coefficients():
    coeffs = [3, -2 ** 80 + 1, 0, 7 * 10 ** 30, -1]
    assert interpolate_poly(_evaluator(coeffs), 4) == coeffs


def test_interpolate_recovers_from_low_bound():
    coeffs = [1] + [0] * 9 + [5]
    assert interpolate_poly(_evaluator(coeffs), 3) == coeffs


def test_thread_count_invariance():
    coeffs = [(-1) ** i * 10 ** (i + 12) for i in range(12)]
    assert interpolate_poly(_evaluator(coeffs), 11, threads=1) == \
        interpolate_poly(_evaluator(coeffs), 11, threads=3) == coeffs


def test_interpolate_bipoly():
    terms = {(0, 0): 1, (2, 1): -3, (1, 3): 10 ** 20}

    def ev(zs, ws, p):
        z, w = zs.astype(object), ws.astype(object)
        acc = np.zeros(z.shape, dtype=object)
        for (i, j), c in terms.items():
            acc = acc + c * z ** i * w ** j
        return (acc % p).astype(np.int64)

    assert interpolate_bipoly(ev, 3, 3) == terms


def test_box_series_ops():
    p = safe_prime(0)
    box = BoxSeries((3, 2))
    rng = np.random.default_rng(1)
    A = rng.integers(0, p, size=(box.n, 5), dtype=np.int64)
    A[0] = 1
    inv = box.inv1(A, p)
    prod = box.mul(A, inv, p)
    expect = np.zeros_like(prod)
    expect[0] = 1
    assert np.array_equal(prod, expect)
