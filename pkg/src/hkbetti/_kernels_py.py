"""Pure numpy versions of the modular kernels.

All arrays are int64, residues lie in [0, p) and p < 2^31, so every
product of two residues fits in a signed 64-bit integer.  Arrays that
carry evaluation points keep the point axis last.
"""

import numpy as np

BACKEND = "numpy"


def mulmod(a, b, p):
    return (a * b) % p


def powmod_vec(x, e, p):
    """x**e mod p elementwise for a scalar exponent e >= 0."""
    x = np.asarray(x, dtype=np.int64) % p
    out = np.ones_like(x)
    while e:
        if e & 1:
            out = (out * x) % p
        x = (x * x) % p
        e >>= 1
    return out


def inv_vec(x, p):
    """Elementwise inverse by Fermat; zeros raise."""
    x = np.asarray(x, dtype=np.int64) % p
    if np.any(x == 0):
        raise ZeroDivisionError("inverse of zero residue")
    return powmod_vec(x, p - 2, p)


def pow_table(x, emin, emax, p):
    """T[e - emin, i] = x[i]**e for emin <= e <= emax."""
    x = np.asarray(x, dtype=np.int64) % p
    n = emax - emin + 1
    out = np.empty((n, x.shape[0]), dtype=np.int64)
    start = powmod_vec(x if emin >= 0 else inv_vec(x, p), abs(emin), p)
    out[0] = start
    for i in range(1, n):
        out[i] = (out[i - 1] * x) % p
    return out


def gather_prod(fac, ptr, idx, p):
    """out[g] = prod_{t in ptr[g]:ptr[g+1]} fac[idx[t]]."""
    ng = ptr.shape[0] - 1
    out = np.ones((ng, fac.shape[1]), dtype=np.int64)
    for g in range(ng):
        acc = out[g]
        for t in range(ptr[g], ptr[g + 1]):
            acc = (acc * fac[idx[t]]) % p
        out[g] = acc
    return out


def term_accumulate(nslots, table, exps, slots, fac, idx, p):
    """out[slot[t]] += table[exps[t]] * prod_j fac[idx[t, j]]."""
    npts = table.shape[1]
    out = np.zeros((nslots, npts), dtype=np.int64)
    r = idx.shape[1]
    # group by slot so each output row is touched in one pass
    order = np.argsort(slots, kind="stable")
    s_sorted = slots[order]
    bounds = np.flatnonzero(np.diff(s_sorted)) + 1
    starts = np.concatenate(([0], bounds))
    ends = np.concatenate((bounds, [len(order)]))
    for a, b in zip(starts, ends):
        terms = order[a:b]
        acc = np.zeros(npts, dtype=np.int64)
        # chunk the terms to bound memory
        for c in range(0, len(terms), 256):
            chunk = terms[c:c + 256]
            v = table[exps[chunk]]
            for j in range(r):
                v = (v * fac[idx[chunk, j]]) % p
            acc = (acc + v.sum(axis=0) % p) % p
        out[s_sorted[a]] = acc
    return out


def series_mul(A, B, ptr, ia, ib, p):
    """C[u] = sum over the pair list of u of A[ia] * B[ib]."""
    n = ptr.shape[0] - 1
    C = np.zeros((n, A.shape[1]), dtype=np.int64)
    for u in range(n):
        a, b = ptr[u], ptr[u + 1]
        if a == b:
            continue
        v = (A[ia[a:b]] * B[ib[a:b]]) % p
        C[u] = v.sum(axis=0) % p
    return C


def series_inv1(A, ptr, ia, ib, p):
    """Inverse of a series with constant term 1 (pairs exclude ia == 0)."""
    n = ptr.shape[0] - 1
    B = np.zeros_like(A)
    B[0] = 1
    for u in range(1, n):
        a, b = ptr[u], ptr[u + 1]
        if a == b:
            continue
        v = (A[ia[a:b]] * B[ib[a:b]]) % p
        B[u] = (-v.sum(axis=0)) % p
    return B


def series_log1(F, ptr, ia, ib, w, invdeg, p):
    """log of a series with constant term 1.

    deg(u) L[u] = deg(u) F[u] - sum deg(a) L[a] F[b] over pairs a+b=u,
    a, b nonzero; w holds deg(a) and invdeg[u] = 1/deg(u) mod p.
    """
    n = ptr.shape[0] - 1
    L = np.zeros_like(F)
    for u in range(1, n):
        a, b = ptr[u], ptr[u + 1]
        acc = F[u].copy()
        if a != b:
            v = (L[ia[a:b]] * F[ib[a:b]]) % p
            v = (v * w[a:b, None]) % p
            s = (v.sum(axis=0) % p) * invdeg[u] % p
            acc = (acc - s) % p
        L[u] = acc
    return L


def newton_interp(Y, x0, p):
    """Monomial coefficients of the polynomials through (x0 + i, Y[:, i]).

    Nodes are consecutive residues, so every divided difference
    denominator is a small integer.
    """
    Y = np.array(Y, dtype=np.int64, copy=True) % p
    m, n = Y.shape
    invs = inv_vec(np.arange(1, max(n, 2), dtype=np.int64), p)
    c = Y
    for j in range(1, n):
        c[:, j:] = ((c[:, j:] - c[:, j - 1:-1]) % p) * invs[j - 1] % p
    xs = (x0 + np.arange(n, dtype=np.int64)) % p
    P = np.zeros((m, n), dtype=np.int64)
    P[:, 0] = c[:, n - 1]
    deg = 0
    for k in range(n - 2, -1, -1):
        # P <- P * (x - xs[k]) + c[k]
        newP = np.zeros_like(P)
        newP[:, 1:deg + 2] = P[:, 0:deg + 1]
        newP[:, 0:deg + 1] = (newP[:, 0:deg + 1] - P[:, 0:deg + 1] * xs[k]) % p
        newP[:, 0] = (newP[:, 0] + c[:, k]) % p
        P = newP
        deg += 1
    return P


def horner(C, x, p):
    """Evaluate rows of C (low degree first) at each x; returns (m, len(x))."""
    C = np.asarray(C, dtype=np.int64)
    x = np.asarray(x, dtype=np.int64) % p
    out = np.zeros((C.shape[0], x.shape[0]), dtype=np.int64)
    for k in range(C.shape[1] - 1, -1, -1):
        out = (out * x[None, :] + C[:, k:k + 1]) % p
    return out
