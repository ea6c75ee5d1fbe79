"""Poincare polynomials of the variety families.

Every public function returns a BettiPoly whose coefficient i is b_i.
"""

import json
from itertools import product
from math import comb, gcd

import gmpy2

from .arith import BiPoly, UniLaurent, UniRatFun, poly_exact_div
from .errors import BugTrap
from .graphs import complete_graph_R_table, external_activity_dc
from .modular import (
    euler_form,
    higgs_evaluator,
    interpolate_bipoly,
    interpolate_poly,
    kac_evaluator,
    nakajima_evaluator,
)
from .partitions import cells_arm_leg, count_by_length, enum_partitions, pairing_n
from .series import RatFunSeries, TruncSeries, pleth_log, s_inv, s_mul


class BettiPoly:
    """Betti numbers b_0..b_d of a variety, with bookkeeping."""

    def __init__(self, coeffs, family, params=None, complex_dim=None, core_dim="unknown",
                 dim_shift=0, check=True):
        b = [int(c) for c in coeffs]
        while len(b) > 1 and b[-1] == 0:
            b.pop()
        self.coeffs = b or [0]
        self.family = family
        self.params = dict(params or {})
        self.complex_dim = complex_dim
        self.core_dim = core_dim
        self.dim_shift = dim_shift
        if check:
            if any(c < 0 for c in self.coeffs):
                raise BugTrap(f"{family}: negative Betti number")
            if self.coeffs[0] != 1:
                raise BugTrap(f"{family}: b_0 = {self.coeffs[0]}, expected 1")

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, BettiPoly):
            return self.coeffs == other.coeffs
        return self.coeffs == list(other)

    def __repr__(self):
        return f"BettiPoly({self.family}, degree={self.degree})"

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def even(self):
        return self.coeffs[0::2]

    def odd(self):
        return self.coeffs[1::2]

    def argmax(self):
        best = max(self.coeffs)
        return self.coeffs.index(best)

    def is_palindromic(self):
        return self.coeffs == self.coeffs[::-1]

    def as_laurent(self, var="t"):
        return UniLaurent.from_dense(self.coeffs, 0, var)

    def to_json(self):
        return {"family": self.family, "params": self.params, "dim_shift": self.dim_shift,
                "coefficients": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls([int(c) for c in data["coefficients"]], data.get("family", "unknown"),
                   data.get("params"), dim_shift=data.get("dim_shift", 0), check=False)

    def to_csv(self):
        lines = ["degree,coefficient"]
        lines += [f"{i},{c}" for i, c in enumerate(self.coeffs) if c]
        return "\n".join(lines) + "\n"


def is_unimodal(seq):
    """Weakly increasing then weakly decreasing."""
    i, n = 0, len(seq)
    while i + 1 < n and seq[i] <= seq[i + 1]:
        i += 1
    while i + 1 < n and seq[i] >= seq[i + 1]:
        i += 1
    return i == n - 1 or n == 0


def _from_q_poly(r, shift, family, params, complex_dim, core_dim):
    """P(t) = t^{2 shift} r(t^-2) for a dense list r in q."""
    b = [0] * (2 * shift + 1)
    for e, c in enumerate(r):
        if c:
            i = shift - e
            if i < 0:
                raise BugTrap(f"{family}: q-degree {e} exceeds the dimension shift {shift}")
            b[2 * i] = c
    return BettiPoly(b, family, params, complex_dim, core_dim, dim_shift=2 * shift)


# ---------------------------------------------------------------------------
# toric quiver varieties

def _is_simple_complete(G):
    n = G.n
    return G.edges == tuple((i, j) for i in range(n) for j in range(i + 1, n))


def external_activity(G):
    if _is_simple_complete(G):
        return UniLaurent.from_dense(complete_graph_R_table(G.n)[G.n], 0, "q")
    return external_activity_dc(G)


def poincare_toric_quiver(G):
    if not G.is_connected():
        raise ValueError("graph must be connected")
    R = external_activity(G)
    b1 = G.betti1()
    lo, dense = R.dense()
    r = [0] * lo + dense
    return _from_q_poly(r, b1, "toric", {"graph": G.to_json()}, 2 * b1, b1)


def poincare_toric_complete(n):
    if n < 1:
        raise ValueError("n must be >= 1")
    r = list(complete_graph_R_table(n)[n])
    b1 = comb(n, 2) - n + 1
    return _from_q_poly(r, b1, "toric", {"complete": n}, 2 * b1, b1)


# ---------------------------------------------------------------------------
# product formulas: Hilbert schemes and ADHM spaces

def _product_coefficient(n, factors):
    """Coefficient of T^n in prod 1/(1 - q^e T^i) over (i, e) in factors, as a dense list in q.

    Coefficient polynomials are Kronecker-packed into one integer each, so
    multiplying by q^e is a shift.
    """
    factors = [(i, e) for i, e in factors if i <= n]
    # slot bound: the q = 1 specialisation
    cnt = [1] + [0] * n
    deg = [0] + [-1] * n
    for i, e in factors:
        for j in range(i, n + 1):
            cnt[j] += cnt[j - i]
            if deg[j - i] >= 0:
                deg[j] = max(deg[j], deg[j - i] + e)
    bits = cnt[n].bit_length() + 1
    F = [gmpy2.mpz(0)] * (n + 1)
    F[0] = gmpy2.mpz(1)
    for i, e in factors:
        sh = e * bits
        for j in range(i, n + 1):
            if F[j - i]:
                F[j] += F[j - i] << sh
    mask = (gmpy2.mpz(1) << bits) - 1
    v = F[n]
    return [int((v >> (k * bits)) & mask) for k in range(deg[n] + 1)]


def poincare_hilbert(n):
    if n < 0:
        raise ValueError("n must be >= 0")
    r = _product_coefficient(n, [(i, i - 1) for i in range(1, n + 1)])
    b = [0] * (2 * len(r) - 1)
    b[0::2] = r
    return BettiPoly(b, "hilbert", {"n": n}, 2 * n, max(n - 1, 0))


def hilbert_by_partitions(n):
    """b_{2i} = #{lam |- n : n - l(lam) = i}, from partition counts by length."""
    byl = count_by_length(n)
    b = [0] * (2 * n + 1)
    for l, c in enumerate(byl):
        if c:
            b[2 * (n - l)] += c
    return b


def poincare_adhm(n, m):
    if m < 1:
        raise ValueError("m must be >= 1 (the space is empty for m = 0)")
    if n < 0:
        raise ValueError("n must be >= 0")
    factors = [(i, m * (i - 1) + bb - 1) for i in range(1, n + 1) for bb in range(1, m + 1)]
    r = _product_coefficient(n, factors)
    b = [0] * (2 * len(r) - 1)
    b[0::2] = r
    return BettiPoly(b, "adhm", {"n": n, "m": m}, 2 * n * m, max(n * m - 1, 0))


# ---------------------------------------------------------------------------
# Grassmannians and tori

def q_binomial(n, k):
    """Dense coefficients of the Gaussian binomial [n choose k]_q."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    k = min(k, n - k)
    p = [1]
    for i in range(1, k + 1):
        a = n + 1 - i
        # multiply by 1 - q^a
        out = p + [0] * a
        for e, c in enumerate(p):
            out[e + a] -= c
        # divide by 1 - q^i (exact)
        for e in range(i, len(out)):
            out[e] += out[e - i]
        while out and out[-1] == 0:
            out.pop()
        p = out
    return p


def poincare_grassmannian(n, k):
    if not (isinstance(n, int) and isinstance(k, int)) or not 0 <= k <= n:
        raise ValueError("need integers 0 <= k <= n")
    r = q_binomial(n, k)
    b = [0] * (2 * len(r) - 1)
    b[0::2] = r
    d = k * (n - k)
    return BettiPoly(b, "grassmannian", {"n": n, "k": k}, 2 * d, d)


def poincare_torus(g):
    if g < 0:
        raise ValueError("g must be >= 0")
    return BettiPoly([comb(2 * g, i) for i in range(2 * g + 1)], "torus", {"g": g}, 2 * g, g)


# ---------------------------------------------------------------------------
# quivers

class Quiver:
    """Directed multigraph on r vertices with dimension vector v and framing w."""

    def __init__(self, r, edges=(), v=None, w=None):
        r = int(r)
        if r < 1:
            raise ValueError("a quiver needs at least one vertex")
        es = []
        for e in edges:
            i, j = (int(x) for x in e)
            if not (0 <= i < r and 0 <= j < r):
                raise ValueError(f"edge {e} out of range")
            es.append((i, j))
        self.r = r
        self.edges = tuple(es)
        self.v = self._vec(v, "v")
        self.w = self._vec(w, "w")

    def _vec(self, x, name):
        if x is None:
            return None
        x = tuple(int(c) for c in x)
        if len(x) != self.r or any(c < 0 for c in x):
            raise ValueError(f"{name} must have {self.r} nonnegative entries")
        return x

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["vertices"], data.get("edges", []), data.get("v"), data.get("w"))

    def to_json(self):
        out = {"vertices": self.r, "edges": [list(e) for e in self.edges]}
        if self.v is not None:
            out["v"] = list(self.v)
        if self.w is not None:
            out["w"] = list(self.w)
        return out

    @classmethod
    def loops(cls, g, v=None, w=None):
        return cls(1, [(0, 0)] * g, v, w)

    def euler_form(self, v=None):
        return euler_form(self.r, self.edges, v if v is not None else self.v)

    def nakajima_dim(self, v=None, w=None):
        v = self.v if v is None else v
        w = self.w if w is None else w
        return 2 * sum(v[i] * v[j] for i, j in self.edges) + 2 * sum(a * (b - a) for a, b in zip(v, w))


def _hua_exponent(edges, lams, lin):
    e = sum(pairing_n(lams[i], lams[j]) for i, j in edges)
    e -= sum(pairing_n(l, l) for l in lams)
    e += sum(c * len(l) for c, l in zip(lin, lams))
    return e


def _hua_weight(lam):
    """1 / b_lam(1/q) = prod q^j / (q^j - 1) over multiplicity runs."""
    num, den = 0, UniLaurent({0: 1}, "q")
    mult = {}
    for a in lam:
        mult[a] = mult.get(a, 0) + 1
    for m in mult.values():
        for j in range(1, m + 1):
            num += j
            den = den * UniLaurent({j: 1, 0: -1}, "q")
    return UniRatFun(UniLaurent({num: 1}, "q"), den)


def hua_series_exact(Q, caps, lin=None):
    """The partition-tuple sum as a TruncSeries over rational functions in q."""
    lin = lin or (0,) * Q.r
    terms = {}
    per_vertex = [[lam for m in range(c + 1) for lam in enum_partitions(m)] for c in caps]
    for lams in product(*per_vertex):
        w = UniRatFun(UniLaurent({_hua_exponent(Q.edges, lams, lin): 1}, "q"))
        for l in lams:
            w = w * _hua_weight(l)
        key = tuple(sum(l) for l in lams)
        terms[key] = terms[key] + w if key in terms else w
    names = tuple(f"T{i}" for i in range(Q.r))
    return TruncSeries(terms, names, caps=tuple(caps))


def _check_dimvec(Q, v):
    v = tuple(int(c) for c in v)
    if len(v) != Q.r or any(c < 0 for c in v):
        raise ValueError("dimension vector has wrong length or negative entries")
    if not any(v):
        raise ValueError("dimension vector must be nonzero")
    return v


def kac_polynomial(Q, v=None, method="modular", threads=1):
    """A_Q(v; q) via the plethystic log of Hua's partition sum."""
    v = _check_dimvec(Q, Q.v if v is None else v)
    if method == "exact":
        L = pleth_log(hua_series_exact(Q, v))
        c = L[v]
        A = UniRatFun(UniLaurent({0: -1, 1: 1}, "q")) * c if c else UniRatFun(0, var="q")
        if not A.is_poly():
            raise BugTrap("Kac polynomial is not a polynomial")
        A = A.as_laurent()
    elif method == "modular":
        bound = max(0, 1 - euler_form(Q.r, Q.edges, v))
        A = UniLaurent.from_dense(interpolate_poly(kac_evaluator(Q.r, Q.edges, v), bound + 1,
                                                   threads=threads), 0, "q")
    else:
        raise ValueError(f"unknown method {method!r}")
    if any(c < 0 for c in A.coeffs.values()) or any(not isinstance(c, int) for c in A.coeffs.values()):
        raise BugTrap("Kac polynomial has negative or non-integer coefficients")
    return A


def poincare_quiver_indivisible(Q, v=None, method="modular", threads=1):
    """P = t^{d_v} A_Q(v; t^-2) with d_v = 2(1 - <v,v>)."""
    v = _check_dimvec(Q, Q.v if v is None else v)
    g = 0
    for c in v:
        g = gcd(g, c)
    if g != 1:
        raise ValueError("dimension vector must be indivisible")
    A = kac_polynomial(Q, v, method=method, threads=threads)
    half = 1 - Q.euler_form(v)
    if A.is_zero():
        raise BugTrap("Kac polynomial vanishes: the variety is empty")
    lo, dense = A.dense()
    r = [0] * lo + dense
    return _from_q_poly(r, half, "quiver-indivisible", {"quiver": Q.to_json(), "v": list(v)},
                        2 * half, half)


def poincare_nakajima(Q, method="modular", threads=1):
    """Framed quiver variety M(v, w) from the ratio of two partition sums."""
    if Q.v is None or Q.w is None:
        raise ValueError("Nakajima varieties need both v and w")
    v = _check_dimvec(Q, Q.v)
    w = Q.w
    d = Q.nakajima_dim()
    if d < 0:
        raise ValueError(f"M(v, w) is empty (dimension {d})")
    half = d // 2
    if method == "exact":
        N = hua_series_exact(Q, v, w)
        D = hua_series_exact(Q, v)
        c = s_mul(N, s_inv(D))[v]
        if not c:
            raise ValueError("M(v, w) is empty")
        if not c.is_poly():
            raise BugTrap("Nakajima coefficient is not a polynomial")
        R = c.as_laurent()
    elif method == "modular":
        coeffs = interpolate_poly(nakajima_evaluator(Q.r, Q.edges, v, w), half, threads=threads)
        R = UniLaurent.from_dense(coeffs, 0, "q")
    else:
        raise ValueError(f"unknown method {method!r}")
    if R.is_zero():
        raise ValueError("M(v, w) is empty")
    if R.low_degree() < 0 or any(not isinstance(c, int) for c in R.coeffs.values()):
        raise BugTrap("Nakajima coefficient is not an integer polynomial")
    lo, dense = R.dense()
    P = _from_q_poly([0] * lo + dense, half, "nakajima", {"quiver": Q.to_json()}, d, "unknown")
    return P


# ---------------------------------------------------------------------------
# Higgs bundles

def higgs_degree_bound(n, g):
    return max(2 * n * n * (g - 1) + 2, 2 * g, 1)


def higgs_H(n, g, method="modular", threads=1):
    """H_n(z, w) as a BiPoly in (z, w)."""
    if n < 1 or g < 0:
        raise ValueError("need n >= 1 and g >= 0")
    if method == "exact":
        return higgs_H_exact(n, g)
    if method != "modular":
        raise ValueError(f"unknown method {method!r}")
    D = higgs_degree_bound(n, g)
    return BiPoly(interpolate_bipoly(higgs_evaluator(n, g), D, D, threads=threads), ("z", "w"))


def _higgs_cell(a, l, g, order):
    """Cell factor as a series in w with rational coefficients in z."""
    num = {}
    # (z^{2l+1} - w^{2a+1})^{2g} by the binomial theorem
    for k in range(2 * g + 1):
        num[((2 * l + 1) * (2 * g - k), (2 * a + 1) * k)] = comb(2 * g, k) * (-1) ** k
    d1 = RatFunSeries.from_bivariate({(2 * l + 2, 0): 1, (0, 2 * a): -1}, order)
    d2 = RatFunSeries.from_bivariate({(2 * l, 0): 1, (0, 2 * a + 2): -1}, order)
    return RatFunSeries.from_bivariate(num, order) * (d1 * d2).inverse()


def _higgs_exact_at(n, g, order):
    cells = {}
    terms = {}
    for m in range(n + 1):
        acc = None
        for lam in enum_partitions(m):
            t = RatFunSeries([1], order)
            for al in cells_arm_leg(lam):
                if al not in cells:
                    cells[al] = _higgs_cell(al[0], al[1], g, order)
                t = t * cells[al]
            acc = t if acc is None else acc + t
        terms[m] = acc
    L = pleth_log(TruncSeries(terms, ("T",), caps=(n,)))
    pre = RatFunSeries.from_bivariate({(2, 0): 1, (0, 0): -1, (2, 2): -1, (0, 2): 1}, order)
    c = pre * L[n]
    out = {}
    for j, cz in enumerate(c.coeffs):
        if cz.is_zero():
            continue
        if not cz.is_poly():
            raise BugTrap(f"w^{j} coefficient of H_{n} is not a polynomial in z")
        for i, v in cz.as_laurent().coeffs.items():
            if i < 0:
                raise BugTrap("negative z-power in H_n")
            out[(i, j)] = v
    return out


def higgs_H_exact(n, g, max_rounds=4):
    """Exact route over series in w with rational coefficients in z (small n only).

    The w-cap starts at twice the expected degree plus 4 and doubles until two
    consecutive caps give the same polynomial.
    """
    order = 2 * higgs_degree_bound(n, g) + 4
    prev = _higgs_exact_at(n, g, order)
    for _ in range(max_rounds):
        if prev and max(j for _, j in prev) < order // 2:
            return BiPoly(prev, ("z", "w"))
        order *= 2
        cur = _higgs_exact_at(n, g, order)
        if cur == prev:
            return BiPoly(cur, ("z", "w"))
        prev = cur
    raise BugTrap("H_n truncation did not stabilise")


def poincare_higgs(n, g, reduced=True, H=None, threads=1):
    """P = t^d H_n(1, -1/t), shifted so the lowest term is t^0.

    reduced=True divides out the (1+t)^{2g} Jacobian factor, giving the
    fixed-determinant moduli space.
    """
    if H is None:
        H = higgs_H(n, g, threads=threads)
    h = H.specialize_first(1)
    if h.is_zero():
        raise BugTrap("H_n(1, w) vanishes")
    D = h.degree()
    b = [(-1) ** (D - i) * h[D - i] for i in range(D + 1)]
    full_dim = 2 * (n * n * (g - 1) + 1)
    if not reduced:
        return BettiPoly(b, "higgs", {"n": n, "g": g, "reduced": False}, full_dim, full_dim // 2,
                         dim_shift=D)
    jac = [comb(2 * g, i) for i in range(2 * g + 1)]
    try:
        r = poly_exact_div(b, jac)
    except ArithmeticError as exc:
        raise BugTrap(f"P not divisible by (1+t)^{2 * g}") from exc
    if any(not isinstance(c, int) for c in r):
        raise BugTrap("non-integer quotient by the Jacobian factor")
    dim = 2 * (n * n - 1) * (g - 1) if n > 1 else 0
    return BettiPoly(r, "higgs", {"n": n, "g": g, "reduced": True}, dim, dim // 2, dim_shift=D)
