"""Multigraphs, their external-activity polynomial R_G(q) = T_G(1, q), and
connected-graph counts.

R_G(q) is the sum over connected spanning subgraphs A of (q - 1)^{b_1(A)}.
"""

import json
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import comb, factorial, prod

import gmpy2
import numpy as np

from .arith import UniLaurent, UniRatFun, kron_mul
from .series import TruncSeries, s_log

ORACLE_EDGE_CAP = 22


class Graph:
    """Multigraph on vertices 0..n-1; loops and repeated edges allowed."""

    __slots__ = ("n", "edges")

    def __init__(self, n, edges=()):
        n = int(n)
        if n < 1:
            raise ValueError("a graph needs at least one vertex")
        es = []
        for e in edges:
            i, j = (int(x) for x in e)
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge {e} out of range for {n} vertices")
            es.append((min(i, j), max(i, j)))
        self.n = n
        self.edges = tuple(sorted(es))

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["vertices"], data.get("edges", []))

    def to_json(self):
        return {"vertices": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def complete(cls, n):
        return cls(n, [(i, j) for i in range(n) for j in range(i + 1, n)])

    @classmethod
    def complete_bipartite(cls, m, n):
        return cls(m + n, [(i, m + j) for i in range(m) for j in range(n)])

    def __eq__(self, other):
        return isinstance(other, Graph) and (self.n, self.edges) == (other.n, other.edges)

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph({self.n}, {list(self.edges)})"

    def components(self, edges=None):
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        k = self.n
        for i, j in (self.edges if edges is None else edges):
            a, b = find(i), find(j)
            if a != b:
                parent[a] = b
                k -= 1
        return k

    def is_connected(self):
        return self.components() == 1

    def betti1(self):
        """First Betti number #E - #V + #components."""
        return len(self.edges) - self.n + self.components()


def _require_connected(G):
    if not G.is_connected():
        raise ValueError("graph must be connected")


def external_activity_oracle(G):
    """R_G by enumerating every edge subset (exponential)."""
    _require_connected(G)
    m = len(G.edges)
    if m > ORACLE_EDGE_CAP:
        raise ValueError(f"oracle limited to {ORACLE_EDGE_CAP} edges, got {m}")
    counts = {}
    edges = G.edges
    for mask in range(1 << m):
        sub = [edges[i] for i in range(m) if mask >> i & 1]
        if G.components(sub) == 1:
            b = len(sub) - G.n + 1
            counts[b] = counts.get(b, 0) + 1
    # sum_b N_b (q - 1)^b
    out = UniLaurent({}, "q")
    qm1 = UniLaurent({0: -1, 1: 1}, "q")
    for b, c in counts.items():
        out = out + (qm1 ** b).scale(c)
    return out


# ---------------------------------------------------------------------------
# deletion-contraction on multigraphs

def _refine_colors(n, mult):
    colors = [0] * n
    for _ in range(n):
        sig = []
        for v in range(n):
            nb = sorted((colors[u], mult.get((min(u, v), max(u, v)), 0))
                        for u in range(n) if u != v and (min(u, v), max(u, v)) in mult)
            sig.append((colors[v], tuple(nb)))
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colors)):
            colors = new
            break
        colors = new
    return colors


def canonical_key(n, mult, perm_cap=5040):
    """Canonical form of a loopless multigraph given as {(i, j): multiplicity}.

    Colour refinement orders the vertices; ties are broken by trying every
    permutation inside colour classes when that is cheap, otherwise the key is
    just deterministic (correct, but shares fewer memo entries).
    """
    colors = _refine_colors(n, mult)
    classes = {}
    for v in range(n):
        classes.setdefault(colors[v], []).append(v)
    groups = [classes[c] for c in sorted(classes)]
    if prod(factorial(len(g)) for g in groups) > perm_cap:
        groups_perms = [[tuple(g)] for g in groups]
    else:
        groups_perms = [list(permutations(g)) for g in groups]
    best = None
    for choice in product(*groups_perms):
        order = [v for g in choice for v in g]
        pos = {v: i for i, v in enumerate(order)}
        key = tuple(sorted((min(pos[i], pos[j]), max(pos[i], pos[j]), m)
                           for (i, j), m in mult.items()))
        if best is None or key < best:
            best = key
    return (n, best)


def _geom(k):
    """1 + q + ... + q^{k-1} as a dense list."""
    return [1] * k


def _dense_mul(a, b):
    return kron_mul(a, b)


def _dense_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


def _connected(n, mult):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    k = n
    for (i, j) in mult:
        a, b = find(i), find(j)
        if a != b:
            parent[a] = b
            k -= 1
    return k == 1


def _contract(n, mult, u, v):
    """Merge v into u (u < v); parallel u-v edges become loops and are dropped."""
    relabel = lambda x: u if x == v else (x - 1 if x > v else x)
    out = {}
    for (i, j), m in mult.items():
        if (i, j) == (u, v):
            continue
        a, b = relabel(i), relabel(j)
        a, b = min(a, b), max(a, b)
        out[(a, b)] = out.get((a, b), 0) + m
    return n - 1, out


def external_activity_dc(G, memo=None):
    """R_G by deletion-contraction with canonical-form memoisation."""
    _require_connected(G)
    loops = sum(1 for i, j in G.edges if i == j)
    mult = {}
    for i, j in G.edges:
        if i != j:
            mult[(i, j)] = mult.get((i, j), 0) + 1
    memo = {} if memo is None else memo
    dense = _dc(G.n, mult, memo)
    return UniLaurent.from_dense(dense, loops, "q")


def _dc(n, mult, memo):
    if not mult:
        return [1]
    key = canonical_key(n, mult)
    hit = memo.get(key)
    if hit is not None:
        return hit
    u, v = min(mult)
    k = mult[(u, v)]
    rest = dict(mult)
    del rest[(u, v)]
    # contracting a class of k parallel edges leaves k-1 loops on the merged vertex
    nc, mc = _contract(n, mult, u, v)
    res = _dense_mul(_geom(k), _dc(nc, mc, memo))
    if _connected(n, rest):
        res = _dense_add(res, _dc(n, rest, memo))
    memo[key] = res
    return res


# ---------------------------------------------------------------------------
# complete graphs

def _shift_scale_sub(acc, poly, shift, scale):
    """acc -= scale * q^shift * poly, in place (dense lists)."""
    need = shift + len(poly)
    if len(acc) < need:
        acc.extend([0] * (need - len(acc)))
    for i, c in enumerate(poly):
        if c:
            acc[shift + i] -= scale * c


def _divide_q_minus_1(p, times):
    """Divide a dense poly by (q - 1)^times, asserting exactness."""
    p = list(p)
    for _ in range(times):
        # synthetic division by (q - 1): coefficients from the top
        out = [0] * (len(p) - 1)
        carry = 0
        for i in range(len(p) - 1, 0, -1):
            carry += p[i]
            out[i - 1] = carry
        if carry + p[0] != 0:
            raise ArithmeticError("division by (q - 1) left a remainder")
        p = out
    return p


@lru_cache(maxsize=8)
def complete_graph_R_table(N):
    """Dense coefficient lists of R_{K_n}(q) for n = 1..N (index 0 unused).

    Taking log of sum_n q^{C(n,2)} x^n / n! with x = T/(q-1) gives
    c_n = (q-1)^{n-1} R_{K_n}, with c_n = q^{C(n,2)} - sum_{k<n} C(n-1,k-1) c_k q^{C(n-k,2)}.
    """
    c = [None, [1]]
    for n in range(2, N + 1):
        acc = [0] * (comb(n, 2) + 1)
        acc[-1] = 1
        for k in range(1, n):
            _shift_scale_sub(acc, c[k], comb(n - k, 2), comb(n - 1, k - 1))
        while acc and acc[-1] == 0:
            acc.pop()
        c.append(acc)
    R = [None]
    for n in range(1, N + 1):
        r = _divide_q_minus_1(c[n], n - 1)
        while r and r[-1] == 0:
            r.pop()
        R.append(r)
    return tuple(tuple(r) if r is not None else None for r in R)


def complete_graph_R(n):
    return UniLaurent.from_dense(complete_graph_R_table(n)[n], 0, "q")


def complete_graph_R_series(N, method="recurrence"):
    """sum_n R_{K_n}(q) T^n / n! up to T^N.

    method="ratfun" runs the log over rational functions in q and checks
    that each coefficient cancels to a polynomial (slow; small N only).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if method == "recurrence":
        tab = complete_graph_R_table(N)
        coeffs = {n: UniLaurent.from_dense([Fraction(x, factorial(n)) for x in tab[n]], 0, "q")
                  for n in range(1, N + 1)}
        return TruncSeries(coeffs, ("T",), caps=(N,))
    if method != "ratfun":
        raise ValueError(f"unknown method {method!r}")
    q = UniLaurent({1: 1}, "q")
    qm1 = UniRatFun(q - 1)
    inv = qm1.inverse()
    G = {0: UniRatFun(UniLaurent({0: 1}, "q"))}
    for n in range(1, N + 1):
        G[n] = (UniRatFun(UniLaurent({comb(n, 2): Fraction(1, factorial(n))}, "q")) * inv ** n)
    L = s_log(TruncSeries(G, ("T",), caps=(N,)))
    out = {}
    for n in range(1, N + 1):
        c = L[n] * qm1 if L[n] else UniRatFun(0, var="q")
        if not c.is_poly():
            raise ArithmeticError(f"T^{n} coefficient is not a polynomial in q")
        out[n] = c.as_laurent()
    return TruncSeries(out, ("T",), caps=(N,))


# ---------------------------------------------------------------------------
# connected graph counts

@lru_cache(maxsize=4096)
def _binom_row(m, length):
    """C(m, j) for j < length."""
    out = [1] * min(length, m + 1)
    for j in range(1, len(out)):
        out[j] = out[j - 1] * (m - j + 1) // j
    return tuple(out)


def _pack_nonneg(coeffs, nb):
    return gmpy2.mpz(int.from_bytes(b"".join(c.to_bytes(nb, "little") for c in coeffs), "little"))


def _unpack_nonneg(value, nb, n):
    raw = int(value).to_bytes(nb * n, "little")
    return [int.from_bytes(raw[i * nb:(i + 1) * nb], "little") for i in range(n)]


def _trunc_mul_nonneg(a, b, n):
    """First n coefficients of a*b for nonnegative int lists."""
    a, b = a[:n], b[:n]
    bound = max(a) * max(b) * min(len(a), len(b))
    nb = (bound.bit_length() + 8) // 8
    prod_ = gmpy2.f_mod_2exp(_pack_nonneg(a, nb) * _pack_nonneg(b, nb), 8 * nb * n)
    return _unpack_nonneg(prod_, nb, n)


@lru_cache(maxsize=8)
def connected_counts(N, K):
    """table[n-1][k] = number of connected labelled graphs on n vertices with
    n + k - 1 edges, for n <= N, k <= K.

    Uses eta^{n-1} R_n(1+eta) = (1+eta)^{C(n,2)} - sum_k C(n-1,k-1) eta^{k-1} R_k(1+eta) (1+eta)^{C(n-k,2)},
    keeping R_n(1+eta) only modulo eta^{N-n+K+1}.
    """
    S = [None]
    for n in range(1, N + 1):
        M = N - n + K + 1
        L = n - 1 + M
        acc = np.array(_binom_row(comb(n, 2), L) + (0,) * L, dtype=object)[:L]
        for k in range(1, n):
            trunc = L - (k - 1)
            t = _trunc_mul_nonneg(S[k], _binom_row(comb(n - k, 2), trunc), trunc)
            acc[k - 1:k - 1 + len(t)] -= comb(n - 1, k - 1) * np.array(t, dtype=object)
        if any(acc[:n - 1]):
            raise ArithmeticError("low-order terms failed to cancel")
        S.append([int(x) for x in acc[n - 1:]])
    return tuple(tuple(S[n][:K + 1]) for n in range(1, N + 1))


def connected_count(n, k):
    """Connected labelled graphs on n vertices with n + k - 1 edges."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    if k > comb(n, 2) - n + 1:
        return 0
    return connected_counts(n, k)[n - 1][k]


# ---------------------------------------------------------------------------
# complete bipartite graphs

def bipartite_R(m, n):
    """R of K_{m,n} from the root-component recurrence on (a, b) side sizes.

    C(a, b) = sum over connected spanning subgraphs of y^{#edges}, where the
    component of a fixed vertex splits (1+y)^{ab}; then R(q) = C(m,n)/y^{m+n-1} at y = q-1.
    """
    if m < 1 or n < 1:
        raise ValueError("need m, n >= 1")
    if m * n > 400:
        raise ValueError("K_{m,n} too large")
    if m < n:
        m, n = n, m

    def powy1(e):
        return _binom_row(e, e + 1)

    C = {}
    for a in range(0, m + 1):
        for b in range(0, n + 1):
            if a + b == 0:
                continue
            if a + b == 1:
                C[(a, b)] = [1]
                continue
            if a == 0 or b == 0:
                C[(a, b)] = [0]
                continue
            acc = list(powy1(a * b))
            for i in range(1, a + 1):
                for j in range(0, b + 1):
                    if (i, j) == (a, b):
                        continue
                    sub = C[(i, j)]
                    if not any(sub):
                        continue
                    t = kron_mul(sub, powy1((a - i) * (b - j)))
                    sc = comb(a - 1, i - 1) * comb(b, j)
                    if len(acc) < len(t):
                        acc += [0] * (len(t) - len(acc))
                    for e, c in enumerate(t):
                        acc[e] -= sc * c
            while len(acc) > 1 and acc[-1] == 0:
                acc.pop()
            C[(a, b)] = acc
    top = C[(m, n)]
    s = m + n - 1
    if any(top[:s]):
        raise ArithmeticError("C(m,n) not divisible by y^{m+n-1}")
    return UniLaurent.from_dense(top[s:], 0, "q").taylor_shift(-1)
