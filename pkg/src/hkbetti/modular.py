"""Evaluation/interpolation engine over word-size prime fields.

A generating-function coefficient that is known to be a polynomial of
bounded degree is evaluated mod p at consecutive nodes, interpolated,
checked at extra random points, and lifted to Z by balanced CRT over
several primes until the lift stops changing.

Primes are safe primes just below 2^31: the only roots of unity of small
order are then +-1, so the factors 1 - x^j of the partition sums never
vanish at nodes away from 0 and +-1.  Bivariate factors z^a - w^b can
vanish by accident; that is caught and the nodes are moved.
"""

from concurrent.futures import ThreadPoolExecutor
from itertools import product
from math import gcd

import gmpy2
import numpy as np

from . import kernels as K
from .errors import BadPoint, BugTrap, VerificationError
from .partitions import cells_arm_leg, enum_partitions, pairing_n
from .series import moebius

# ---------------------------------------------------------------------------
# primes and CRT

_SAFE_PRIMES = []


def safe_prime(i):
    """The i-th safe prime below 2^31 (descending)."""
    cache = _SAFE_PRIMES
    cand = cache[-1] - 2 if cache else (1 << 31) - 1
    while len(cache) <= i:
        while True:
            if gmpy2.is_prime(cand) and gmpy2.is_prime((cand - 1) // 2):
                cache.append(int(cand))
                cand -= 2
                break
            cand -= 2
    return cache[i]


def crt_combine(X, M, r, p):
    """Lift residues X mod M and r mod p to residues mod M*p (lists)."""
    inv = pow(M % p, -1, p)
    out = []
    for x, y in zip(X, r):
        t = ((int(y) - x) * inv) % p
        out.append(x + M * t)
    return out, M * p


def balanced(X, M):
    h = M // 2
    return [x - M if x > h else x for x in X]


# ---------------------------------------------------------------------------
# univariate and bivariate interpolation drivers

_CHUNK = 4096


def _eval_chunked(evaluate, pts, p):
    out = []
    for a in range(0, len(pts[0]), _CHUNK):
        out.append(np.asarray(evaluate(*(x[a:a + _CHUNK] for x in pts), p), dtype=np.int64))
    return np.concatenate(out) % p


def _solve_uni(evaluate, deg, p, nverify=4):
    n = deg + 1
    rng = np.random.default_rng(p)
    for attempt in range(20):
        x0 = 2 + attempt * (n + 17) + int(rng.integers(0, 1 << 20))
        xs = (x0 + np.arange(n, dtype=np.int64)) % p
        try:
            ys = _eval_chunked(evaluate, (xs,), p)
            coeffs = K.newton_interp(ys[None, :], x0, p)[0]
            xv = rng.integers(1 << 24, p - 2, nverify).astype(np.int64)
            yv = _eval_chunked(evaluate, (xv,), p)
        except (BadPoint, ZeroDivisionError):
            continue
        if not np.array_equal(K.horner(coeffs[None, :], xv, p)[0], yv):
            raise VerificationError(f"degree bound {deg} too small")
        return coeffs
    raise BugTrap("could not find admissible interpolation nodes")


def _solve_bi(evaluate, degz, degw, p, nverify=4):
    nz, nw = degz + 1, degw + 1
    rng = np.random.default_rng(p)
    for attempt in range(20):
        z0 = 2 + int(rng.integers(0, 1 << 24))
        w0 = (1 << 25) + int(rng.integers(0, 1 << 24))
        zs = (z0 + np.arange(nz, dtype=np.int64)) % p
        ws = (w0 + np.arange(nw, dtype=np.int64)) % p
        Z = np.tile(zs, nw)
        W = np.repeat(ws, nz)
        try:
            V = _eval_chunked(evaluate, (Z, W), p).reshape(nw, nz)
            Cz = K.newton_interp(V, z0, p)             # rows: w nodes, cols: z degree
            C = K.newton_interp(np.ascontiguousarray(Cz.T), w0, p)  # rows: z degree
            zv = rng.integers(1 << 26, p - 2, nverify).astype(np.int64)
            wv = rng.integers(1 << 26, p - 2, nverify).astype(np.int64)
            yv = _eval_chunked(evaluate, (zv, wv), p)
        except (BadPoint, ZeroDivisionError):
            continue
        # evaluate C at the check points
        inner = K.horner(C, wv, p)                     # (nz, nverify): poly in w per z-degree
        got = np.zeros(nverify, dtype=np.int64)
        for k in range(nverify):
            got[k] = K.horner(inner[:, k][None, :], zv[k:k + 1], p)[0, 0]
        if not np.array_equal(got, yv):
            raise VerificationError(f"bidegree bound ({degz},{degw}) too small")
        return C
    raise BugTrap("could not find admissible interpolation nodes")


def _lift(solve, threads=1, min_primes=2, max_primes=200):
    """Run solve(p) over primes until the balanced CRT lift is stable."""
    X, M, prev = None, 1, None
    i = 0
    pool = ThreadPoolExecutor(threads) if threads and threads > 1 else None
    try:
        while i < max_primes:
            batch = [safe_prime(i + k) for k in range(threads if pool else 1)]
            if pool:
                results = list(pool.map(solve, batch))
            else:
                results = [solve(batch[0])]
            for p, res in zip(batch, results):
                flat = np.asarray(res, dtype=np.int64).ravel()
                if X is None:
                    X, M = [int(v) for v in flat], p
                else:
                    X, M = crt_combine(X, M, flat, p)
                i += 1
                cur = balanced(X, M)
                if prev is not None and cur == prev and i >= min_primes:
                    return cur, np.asarray(res).shape
                prev = cur
    finally:
        if pool:
            pool.shutdown()
    raise BugTrap("CRT lift did not stabilise")


def interpolate_poly(evaluate, degree, threads=1, max_doublings=6):
    """Integer coefficients (low first) of a polynomial of degree <= degree.

    evaluate(xs, p) returns the values mod p at the int64 array xs.
    """
    deg = max(int(degree), 0)
    for _ in range(max_doublings + 1):
        try:
            coeffs, _ = _lift(lambda p: _solve_uni(evaluate, deg, p), threads)
        except VerificationError:
            deg = 2 * deg + 1
            continue
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return coeffs
    raise BugTrap("value is not a polynomial within the degree bounds tried")


def interpolate_bipoly(evaluate, degz, degw, threads=1, max_doublings=4):
    """Integer coefficient matrix C[i][j] of z^i w^j for a bounded bivariate polynomial."""
    dz, dw = max(int(degz), 0), max(int(degw), 0)
    for _ in range(max_doublings + 1):
        try:
            flat, shape = _lift(lambda p: _solve_bi(evaluate, dz, dw, p), threads)
        except VerificationError:
            dz, dw = 2 * dz + 1, 2 * dw + 1
            continue
        return {(i, j): flat[i * shape[1] + j] for i in range(shape[0]) for j in range(shape[1])
                if flat[i * shape[1] + j]}
    raise BugTrap("value is not a polynomial within the bidegree bounds tried")


# ---------------------------------------------------------------------------
# box-truncated multivariate series at many points

class BoxSeries:
    """Index bookkeeping for series truncated to the box 0 <= u <= caps."""

    def __init__(self, caps):
        self.caps = tuple(int(c) for c in caps)
        strides, s = [], 1
        for c in reversed(self.caps):
            strides.append(s)
            s *= c + 1
        self.strides = tuple(reversed(strides))
        self.n = s
        self.mons = [self.unindex(i) for i in range(s)]
        self.deg = np.array([sum(m) for m in self.mons], dtype=np.int64)
        self._build()

    def index(self, u):
        return sum(a * b for a, b in zip(u, self.strides))

    def unindex(self, i):
        out = []
        for s in self.strides:
            out.append(i // s)
            i %= s
        return tuple(out)

    def _sub_monomials(self, u):
        return product(*[range(x + 1) for x in u])

    def _build(self):
        mul_ptr, mul_a, mul_b = [0], [], []
        inv_ptr, inv_a, inv_b = [0], [], []
        log_ptr, log_a, log_b, log_w = [0], [], [], []
        for ui, u in enumerate(self.mons):
            for a in self._sub_monomials(u):
                b = tuple(x - y for x, y in zip(u, a))
                ia, ib = self.index(a), self.index(b)
                mul_a.append(ia)
                mul_b.append(ib)
                if ia != 0:
                    inv_a.append(ia)
                    inv_b.append(ib)
                    if ib != 0:
                        log_a.append(ia)
                        log_b.append(ib)
                        log_w.append(sum(a))
            mul_ptr.append(len(mul_a))
            inv_ptr.append(len(inv_a))
            log_ptr.append(len(log_a))
        a = lambda x: np.asarray(x, dtype=np.int64)
        self.mul_idx = (a(mul_ptr), a(mul_a), a(mul_b))
        self.inv = (a(inv_ptr), a(inv_a), a(inv_b))
        self.log = (a(log_ptr), a(log_a), a(log_b), a(log_w))

    def invdeg(self, p):
        d = self.deg.copy()
        d[0] = 1
        return K.inv_vec(d, p)

    def log1(self, F, p):
        ptr, ia, ib, w = self.log
        return K.series_log1(F, ptr, ia, ib, w, self.invdeg(p), p)

    def inv1(self, A, p):
        ptr, ia, ib = self.inv
        return K.series_inv1(A, ptr, ia, ib, p)

    def mul(self, A, B, p):
        ptr, ia, ib = self.mul_idx
        return K.series_mul(A, B, ptr, ia, ib, p)


class HuaSum:
    """The partition-tuple sum

        sum_pi x^{sum_E n(pi^i, pi^j) - sum_i n(pi^i, pi^i) + sum_i c_i l(pi^i)}
               / prod_i b_{pi^i}(1/x)  T^{|pi|}

    with b_lam(y) = prod_k prod_{j <= m_k(lam)} (1 - y^j), truncated to the box caps.
    Both Hua's formula (c = 0) and the framed numerator (c = w) have this shape.
    """

    def __init__(self, r, edges, caps, lin=None):
        self.r = r
        self.caps = tuple(caps)
        self.box = BoxSeries(caps)
        lin = list(lin) if lin is not None else [0] * r
        parts = []
        for i in range(r):
            lst = []
            for m in range(self.caps[i] + 1):
                lst.extend(enum_partitions(m))
            parts.append(lst)
        self.parts = parts
        offsets, off = [], 0
        for lst in parts:
            offsets.append(off)
            off += len(lst)
        self.nfac = off
        # exponent grid by broadcasting
        shape = [len(lst) for lst in parts]
        expo = np.zeros(shape, dtype=np.int64)
        cache = {}

        def nmat(i, j):
            key = (i, j)
            if key not in cache:
                cache[key] = np.array([[pairing_n(a, b) for b in parts[j]] for a in parts[i]],
                                      dtype=np.int64)
            return cache[key]

        def along(vec, i):
            sh = [1] * r
            sh[i] = len(vec)
            return np.asarray(vec, dtype=np.int64).reshape(sh)

        for (i, j) in edges:
            if i == j:
                expo = expo + along(np.diag(nmat(i, i)), i)
            else:
                expo = expo + _broadcast_pair(nmat(i, j), i, j, r)
        for i in range(r):
            selfn = np.array([pairing_n(a, a) for a in parts[i]], dtype=np.int64)
            lens = np.array([len(a) for a in parts[i]], dtype=np.int64)
            expo = expo + along(-selfn + lin[i] * lens, i)
        grids = np.meshgrid(*[np.arange(s) for s in shape], indexing="ij")
        sizes = [np.array([sum(a) for a in lst], dtype=np.int64) for lst in parts]
        slot = np.zeros(shape, dtype=np.int64)
        idx = []
        for i in range(r):
            slot = slot + sizes[i][grids[i]] * self.box.strides[i]
            idx.append((grids[i] + offsets[i]).ravel())
        self.exps = expo.ravel()
        self.emin = int(self.exps.min())
        self.emax = int(self.exps.max())
        self.slots = slot.ravel()
        self.idx = np.stack(idx, axis=1) if idx else np.zeros((1, 0), dtype=np.int64)
        # b-factor structure: list of j's per partition
        ptr, jl = [0], []
        maxj = 1
        for lst in parts:
            for lam in lst:
                mult = {}
                for a in lam:
                    mult[a] = mult.get(a, 0) + 1
                for m in mult.values():
                    for j in range(1, m + 1):
                        jl.append(j - 1)
                        maxj = max(maxj, j)
                ptr.append(len(jl))
        self.bptr = np.asarray(ptr, dtype=np.int64)
        self.bidx = np.asarray(jl, dtype=np.int64)
        self.maxj = maxj

    def evaluate(self, xs, p):
        """(nslots, npts) array of series coefficients at the points xs."""
        xs = np.asarray(xs, dtype=np.int64) % p
        y = K.inv_vec(xs, p)
        ypow = K.pow_table(y, 1, self.maxj, p)
        one_minus = (1 - ypow) % p
        if np.any(one_minus == 0):
            raise BadPoint("1 - x^-j vanished")
        b = K.gather_prod(one_minus, self.bptr, self.bidx, p)
        fac = K.inv_vec(b.ravel(), p).reshape(b.shape)
        table = K.pow_table(xs, self.emin, self.emax, p)
        return K.term_accumulate(self.box.n, table, self.exps - self.emin, self.slots,
                                 fac, self.idx, p)


def _broadcast_pair(m, i, j, r):
    """Reshape m[a, b] (a on axis i, b on axis j) for an r-dim grid."""
    if i > j:
        m, i, j = m.T, j, i
    sh = [1] * r
    sh[i], sh[j] = m.shape
    return m.reshape(sh)


def euler_form(r, edges, v):
    """<v, v> = sum v_i^2 - sum_E v_i v_j (loops count v_i^2)."""
    return sum(x * x for x in v) - sum(v[i] * v[j] for i, j in edges)


def kac_evaluator(r, edges, v):
    hs = HuaSum(r, edges, v)
    g = 0
    for x in v:
        g = gcd(g, x)
    box = hs.box
    terms = []
    for k in range(1, g + 1):
        if g % k == 0 and moebius(k):
            terms.append((k, moebius(k), box.index(tuple(x // k for x in v))))

    def evaluate(xs, p):
        xs = np.asarray(xs, dtype=np.int64) % p
        total = np.zeros(len(xs), dtype=np.int64)
        for k, mu, slot in terms:
            xk = K.powmod_vec(xs, k, p)
            L = box.log1(hs.evaluate(xk, p), p)
            coef = (mu * pow(k, -1, p)) % p
            total = (total + L[slot] * coef) % p
        return total * ((xs - 1) % p) % p

    return evaluate


def nakajima_evaluator(r, edges, v, w):
    num = HuaSum(r, edges, v, lin=w)
    den = HuaSum(r, edges, v)
    box = num.box
    target = box.index(tuple(v))
    ptr, ia, ib = box.mul_idx
    a, b = ptr[target], ptr[target + 1]
    pa, pb = ia[a:b], ib[a:b]

    def evaluate(xs, p):
        N = num.evaluate(xs, p)
        D = den.evaluate(xs, p)
        Dinv = box.inv1(D, p)
        acc = np.zeros(N.shape[1], dtype=np.int64)
        for s, t in zip(pa, pb):
            acc = (acc + N[s] * Dinv[t]) % p
        return acc

    return evaluate


class HiggsSum:
    """sum_lam prod_cells (z^{2l+1} - w^{2a+1})^{2g} / ((z^{2l+2} - w^{2a})(z^{2l} - w^{2a+2})) T^|lam|
    evaluated at point pairs, truncated at T^n."""

    def __init__(self, n, g):
        self.n, self.g = n, g
        self.box = BoxSeries([n])
        cells = {}
        ptr, idx = [0], []
        self.sizes = []
        for m in range(n + 1):
            for lam in enum_partitions(m):
                for al in cells_arm_leg(lam):
                    idx.append(cells.setdefault(al, len(cells)))
                ptr.append(len(idx))
                self.sizes.append(m)
        self.cells = sorted(cells, key=cells.get)
        self.ptr = np.asarray(ptr, dtype=np.int64)
        self.idx = np.asarray(idx, dtype=np.int64)
        self.sizes = np.asarray(self.sizes, dtype=np.int64)
        top = 2 * n + 2
        self.top = top

    def evaluate(self, zs, ws, p):
        zp = K.pow_table(zs, 0, self.top, p)
        wp = K.pow_table(ws, 0, self.top, p)
        npts = zp.shape[1]
        num = np.empty((len(self.cells), npts), dtype=np.int64)
        den = np.empty_like(num)
        for c, (a, l) in enumerate(self.cells):
            base = (zp[2 * l + 1] - wp[2 * a + 1]) % p
            num[c] = K.powmod_vec(base, 2 * self.g, p)
            den[c] = (zp[2 * l + 2] - wp[2 * a]) % p * ((zp[2 * l] - wp[2 * a + 2]) % p) % p
        if np.any(den == 0):
            raise BadPoint("cell denominator vanished")
        fac = num * K.inv_vec(den.ravel(), p).reshape(den.shape) % p
        prods = K.gather_prod(fac, self.ptr, self.idx, p)
        F = np.zeros((self.n + 1, npts), dtype=np.int64)
        for m in range(self.n + 1):
            sel = self.sizes == m
            F[m] = prods[sel].sum(axis=0) % p
        return F


def higgs_evaluator(n, g):
    """Point values of H_n(z, w)."""
    sums = {}
    terms = []
    for k in range(1, n + 1):
        if n % k == 0 and moebius(k):
            m = n // k
            if m not in sums:
                sums[m] = HiggsSum(m, g)
            terms.append((k, moebius(k), m))

    def evaluate(zs, ws, p):
        zs = np.asarray(zs, dtype=np.int64) % p
        ws = np.asarray(ws, dtype=np.int64) % p
        total = np.zeros(len(zs), dtype=np.int64)
        for k, mu, m in terms:
            hs = sums[m]
            F = hs.evaluate(K.powmod_vec(zs, k, p), K.powmod_vec(ws, k, p), p)
            L = hs.box.log1(F, p)
            coef = (mu * pow(k, -1, p)) % p
            total = (total + L[m] * coef) % p
        pre = (zs * zs - 1) % p * ((1 - ws * ws) % p) % p
        return total * pre % p

    return evaluate
