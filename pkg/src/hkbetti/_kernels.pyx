# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular kernels; same contracts as _kernels_py."""

import numpy as np
cimport numpy as cnp

ctypedef long long i64

BACKEND = "cython"


cdef inline i64 _powmod(i64 x, i64 e, i64 p) noexcept nogil:
    cdef i64 r = 1
    x %= p
    while e:
        if e & 1:
            r = r * x % p
        x = x * x % p
        e >>= 1
    return r


def mulmod(a, b, p):
    return (a * b) % p


def powmod_vec(x, long long e, long long p):
    cdef cnp.ndarray[i64, ndim=1] xv = np.ascontiguousarray(np.asarray(x, dtype=np.int64) % p)
    cdef Py_ssize_t i, n = xv.shape[0]
    cdef cnp.ndarray[i64, ndim=1] out = np.empty(n, dtype=np.int64)
    with nogil:
        for i in range(n):
            out[i] = _powmod(xv[i], e, p)
    return out


def inv_vec(x, long long p):
    """Batch inversion (Montgomery's trick)."""
    cdef cnp.ndarray[i64, ndim=1] xv = np.ascontiguousarray(np.asarray(x, dtype=np.int64) % p)
    cdef Py_ssize_t i, n = xv.shape[0]
    cdef cnp.ndarray[i64, ndim=1] pre = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] out = np.empty(n, dtype=np.int64)
    cdef i64 acc = 1, inv
    cdef int bad = 0
    with nogil:
        for i in range(n):
            if xv[i] == 0:
                bad = 1
                break
            pre[i] = acc
            acc = acc * xv[i] % p
    if bad:
        raise ZeroDivisionError("inverse of zero residue")
    with nogil:
        inv = _powmod(acc, p - 2, p)
        for i in range(n - 1, -1, -1):
            out[i] = inv * pre[i] % p
            inv = inv * xv[i] % p
    return out


def pow_table(x, long long emin, long long emax, long long p):
    cdef cnp.ndarray[i64, ndim=1] xv = np.ascontiguousarray(np.asarray(x, dtype=np.int64) % p)
    cdef Py_ssize_t n = xv.shape[0], m = emax - emin + 1, i, e
    cdef cnp.ndarray[i64, ndim=2] out = np.empty((m, n), dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] start
    if emin >= 0:
        start = powmod_vec(xv, emin, p)
    else:
        start = powmod_vec(inv_vec(xv, p), -emin, p)
    with nogil:
        for i in range(n):
            out[0, i] = start[i]
        for e in range(1, m):
            for i in range(n):
                out[e, i] = out[e - 1, i] * xv[i] % p
    return out


def gather_prod(fac, ptr, idx, long long p):
    cdef cnp.ndarray[i64, ndim=2] F = np.ascontiguousarray(fac, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] P = np.ascontiguousarray(ptr, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] I = np.ascontiguousarray(idx, dtype=np.int64)
    cdef Py_ssize_t ng = P.shape[0] - 1, npts = F.shape[1], g, t, i
    cdef cnp.ndarray[i64, ndim=2] out = np.ones((ng, npts), dtype=np.int64)
    with nogil:
        for g in range(ng):
            for t in range(P[g], P[g + 1]):
                for i in range(npts):
                    out[g, i] = out[g, i] * F[I[t], i] % p
    return out


def term_accumulate(Py_ssize_t nslots, table, exps, slots, fac, idx, long long p):
    cdef cnp.ndarray[i64, ndim=2] Tb = np.ascontiguousarray(table, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] E = np.ascontiguousarray(exps, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] S = np.ascontiguousarray(slots, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=2] Fc = np.ascontiguousarray(fac, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=2] Ix = np.ascontiguousarray(idx, dtype=np.int64)
    cdef Py_ssize_t npts = Tb.shape[1], nt = E.shape[0], r = Ix.shape[1]
    cdef Py_ssize_t t, i, j
    cdef cnp.ndarray[i64, ndim=2] out = np.zeros((nslots, npts), dtype=np.int64)
    cdef i64 v
    with nogil:
        for t in range(nt):
            for i in range(npts):
                v = Tb[E[t], i]
                for j in range(r):
                    v = v * Fc[Ix[t, j], i] % p
                out[S[t], i] = (out[S[t], i] + v) % p
    return out


def series_mul(A, B, ptr, ia, ib, long long p):
    cdef cnp.ndarray[i64, ndim=2] Av = np.ascontiguousarray(A, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=2] Bv = np.ascontiguousarray(B, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] P = np.ascontiguousarray(ptr, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] IA = np.ascontiguousarray(ia, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] IB = np.ascontiguousarray(ib, dtype=np.int64)
    cdef Py_ssize_t n = P.shape[0] - 1, npts = Av.shape[1], u, t, i
    cdef cnp.ndarray[i64, ndim=2] C = np.zeros((n, npts), dtype=np.int64)
    with nogil:
        for u in range(n):
            for t in range(P[u], P[u + 1]):
                for i in range(npts):
                    C[u, i] = (C[u, i] + Av[IA[t], i] * Bv[IB[t], i]) % p
    return C


def series_inv1(A, ptr, ia, ib, long long p):
    cdef cnp.ndarray[i64, ndim=2] Av = np.ascontiguousarray(A, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] P = np.ascontiguousarray(ptr, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] IA = np.ascontiguousarray(ia, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] IB = np.ascontiguousarray(ib, dtype=np.int64)
    cdef Py_ssize_t n = P.shape[0] - 1, npts = Av.shape[1], u, t, i
    cdef cnp.ndarray[i64, ndim=2] B = np.zeros((n, npts), dtype=np.int64)
    with nogil:
        for i in range(npts):
            B[0, i] = 1
        for u in range(1, n):
            for t in range(P[u], P[u + 1]):
                for i in range(npts):
                    B[u, i] = (B[u, i] + Av[IA[t], i] * B[IB[t], i]) % p
            for i in range(npts):
                B[u, i] = (p - B[u, i]) % p
    return B


def series_log1(F, ptr, ia, ib, w, invdeg, long long p):
    cdef cnp.ndarray[i64, ndim=2] Fv = np.ascontiguousarray(F, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] P = np.ascontiguousarray(ptr, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] IA = np.ascontiguousarray(ia, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] IB = np.ascontiguousarray(ib, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] W = np.ascontiguousarray(w, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] ID = np.ascontiguousarray(invdeg, dtype=np.int64)
    cdef Py_ssize_t n = P.shape[0] - 1, npts = Fv.shape[1], u, t, i
    cdef cnp.ndarray[i64, ndim=2] L = np.zeros((n, npts), dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] acc = np.zeros(npts, dtype=np.int64)
    with nogil:
        for u in range(1, n):
            for i in range(npts):
                acc[i] = 0
            for t in range(P[u], P[u + 1]):
                for i in range(npts):
                    acc[i] = (acc[i] + (L[IA[t], i] * Fv[IB[t], i] % p) * W[t]) % p
            for i in range(npts):
                L[u, i] = (Fv[u, i] - acc[i] * ID[u] % p + p) % p
    return L


def newton_interp(Y, long long x0, long long p):
    cdef cnp.ndarray[i64, ndim=2] c = np.array(Y, dtype=np.int64, copy=True, order="C") % p
    cdef Py_ssize_t m = c.shape[0], n = c.shape[1], r, j, i, k
    cdef cnp.ndarray[i64, ndim=1] invs = inv_vec(np.arange(1, max(n, 2), dtype=np.int64), p)
    cdef cnp.ndarray[i64, ndim=2] P = np.zeros((m, n), dtype=np.int64)
    cdef i64 xk
    with nogil:
        for r in range(m):
            for j in range(1, n):
                for i in range(n - 1, j - 1, -1):
                    c[r, i] = (c[r, i] - c[r, i - 1] + p) % p * invs[j - 1] % p
            P[r, 0] = c[r, n - 1]
            for k in range(n - 2, -1, -1):
                xk = (x0 + k) % p
                # P <- P * (x - xk) + c[k], in place from the top
                for i in range(n - 1 - k, 0, -1):
                    P[r, i] = (P[r, i - 1] + p - P[r, i] * xk % p) % p
                P[r, 0] = (c[r, k] + p - P[r, 0] * xk % p) % p
    return P


def horner(C, x, long long p):
    cdef cnp.ndarray[i64, ndim=2] Cv = np.ascontiguousarray(C, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] xv = np.ascontiguousarray(np.asarray(x, dtype=np.int64) % p)
    cdef Py_ssize_t m = Cv.shape[0], n = Cv.shape[1], nx = xv.shape[0], r, k, i
    cdef cnp.ndarray[i64, ndim=2] out = np.zeros((m, nx), dtype=np.int64)
    with nogil:
        for r in range(m):
            for i in range(nx):
                for k in range(n - 1, -1, -1):
                    out[r, i] = (out[r, i] * xv[i] + Cv[r, k]) % p
    return out
