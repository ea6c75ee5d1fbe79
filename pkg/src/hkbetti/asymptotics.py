"""Moments of Betti-number measures and the reference limit laws.

Everything is exact (Fractions) except the distances and relative errors
reported by the fit checks.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

import mpmath

from .arith import UniLaurent
from .errors import BugTrap
from .families import is_unimodal, q_binomial
from .graphs import complete_graph_R_table, connected_counts
from .partitions import enum_partitions
from .series import TruncSeries, s_exp, s_log

# ---------------------------------------------------------------------------
# measures and moments

class DiscreteMeasure:
    """Finite sum of point masses; points sorted and distinct."""

    def __init__(self, pairs):
        acc = {}
        for x, m in pairs:
            x, m = Fraction(x), Fraction(m)
            if m < 0:
                raise ValueError("masses must be nonnegative")
            if m:
                acc[x] = acc.get(x, 0) + m
        self.points = sorted(acc)
        self.masses = [acc[x] for x in self.points]

    def __iter__(self):
        return iter(zip(self.points, self.masses))

    def __eq__(self, other):
        return list(self) == list(other)

    def __repr__(self):
        return f"DiscreteMeasure({len(self.points)} atoms)"

    def total(self):
        return sum(self.masses, Fraction(0))

    def shift(self, a):
        return DiscreteMeasure((x + a, m) for x, m in self)

    def rescale(self, s):
        return DiscreteMeasure((x * s, m) for x, m in self)

    def normalized(self):
        t = self.total()
        return DiscreteMeasure((x, m / t) for x, m in self)


def measure_from_poly(E):
    """Mass e_i at i for E = sum e_i q^i."""
    if isinstance(E, (list, tuple)):
        E = UniLaurent.from_dense(E, 0, "q")
    if any(c < 0 for c in E.coeffs.values()):
        raise ValueError("negative coefficient")
    return DiscreteMeasure(E.coeffs.items())


def convolve(m1, m2):
    return DiscreteMeasure((x + y, a * b) for x, a in m1 for y, b in m2)


def _gen_binom(x, k):
    out = Fraction(1)
    for j in range(k):
        out *= Fraction(x - j, j + 1)
    return out


@dataclass
class MomentReport:
    raw: list
    factorial: list
    standardized: list = field(default_factory=list)

    def to_json(self):
        return {"raw": [str(x) for x in self.raw], "factorial": [str(x) for x in self.factorial],
                "standardized": self.standardized}


def moments(mu, K, standardize=False):
    raw = [sum((m * x ** k for x, m in mu), Fraction(0)) for k in range(K + 1)]
    fact = [sum((m * _gen_binom(x, k) for x, m in mu), Fraction(0)) for k in range(K + 1)]
    std = []
    if standardize and K >= 2 and raw[0]:
        mean = raw[1] / raw[0]
        var = raw[2] / raw[0] - mean ** 2
        if var > 0:
            sd = math.sqrt(var)
            central = [sum((m * (x - mean) ** k for x, m in mu), Fraction(0)) / raw[0]
                       for k in range(K + 1)]
            std = [float(c) / sd ** k for k, c in enumerate(central)]
    return MomentReport(raw, fact, std)


def factorial_moments(E, K):
    """m_k = [eta^k] E(1 + eta)."""
    if isinstance(E, (list, tuple)):
        E = UniLaurent.from_dense(E, 0, "q")
    if E.is_zero():
        return [0] * (K + 1)
    if E.low_degree() >= 0:
        s = E.taylor_shift(1)
        return [s[k] for k in range(K + 1)]
    return [sum(c * _gen_binom(i, k) for i, c in E.coeffs.items()) for k in range(K + 1)]


# ---------------------------------------------------------------------------
# B-splines and the Grassmannian limit

def bspline_moments(r, K):
    """Moments of chi^(r) from the MGF (sinh(t/2)/(t/2))^r."""
    if r < 1:
        raise ValueError("r must be >= 1")
    base = [Fraction(0)] * (K + 1)
    for j in range(0, K + 1, 2):
        base[j] = Fraction(1, 2 ** j * factorial(j + 1))
    acc = [Fraction(1)] + [Fraction(0)] * K
    for _ in range(r):
        acc = [sum(acc[i] * base[k - i] for i in range(k + 1)) for k in range(K + 1)]
    return [acc[k] * factorial(k) for k in range(K + 1)]


def _rel(a, b):
    if b == 0:
        return abs(float(a))
    return abs(float(a) / float(b) - 1)


def grassmann_limit_check(r, n, K, tol=0.05):
    """Moments of [n+r choose r]_q, centred at rn/2 and scaled by 1/n, against chi^(r)."""
    E = q_binomial(n + r, r)
    mu = measure_from_poly(E)
    total = mu.total()
    scaled = mu.shift(Fraction(-r * n, 2)).rescale(Fraction(1, n))
    rep = moments(scaled, K, standardize=True)
    sm = [M / total for M in rep.raw]
    ref = bspline_moments(r, K)
    var_ref = ref[2] if K >= 2 else Fraction(1)
    ref_std = [float(ref[k]) / float(var_ref) ** (k / 2) for k in range(K + 1)]
    scaled_err = [_rel(a, b) for a, b in zip(sm, ref)]
    std_err = [_rel(a, b) for a, b in zip(rep.standardized, ref_std)]
    mass_paper = Fraction(factorial(r), n ** r) * total
    return {"check": "grassmann-limit", "params": {"r": r, "n": n, "K": K},
            "values": {"scaled": [float(x) for x in sm], "bspline": [str(x) for x in ref],
                       "scaled_rel_err": scaled_err, "standardized": rep.standardized,
                       "bspline_standardized": ref_std, "standardized_rel_err": std_err,
                       "paper_mass_normalisation": float(mass_paper)},
            "pass": max(std_err) <= tol, "tolerance": tol}


# ---------------------------------------------------------------------------
# partition lengths and the Gumbel law

GUMBEL_C = math.pi / math.sqrt(6)


def partition_length_cdf(n, x):
    """Phi_n(x) = #{lam |- n : l(lam) <= x} = #{lam |- n : parts <= x}."""
    x = max(0, min(int(x), n))
    p = [1] + [0] * n
    for part in range(1, x + 1):
        for m in range(part, n + 1):
            p[m] += p[m - part]
    return p[n] if n > 0 or x >= 0 else 0


def partition_length_cdfs(n):
    """[Phi_n(0), ..., Phi_n(n)] with O(n) memory."""
    p = [1] + [0] * n
    out = [p[n]]
    for part in range(1, n + 1):
        for m in range(part, n + 1):
            p[m] += p[m - part]
        out.append(p[n])
    return out


def gumbel_cdf(x):
    """Limit law exp(-c^{-1} e^{-cx}), c = pi/sqrt(6); mean (gamma - ln c)/c, variance 1."""
    return math.exp(-math.exp(-GUMBEL_C * x) / GUMBEL_C)


GUMBEL_MEAN = (0.5772156649015329 - math.log(GUMBEL_C)) / GUMBEL_C


def gumbel_distance(n):
    """Sup distance between the standardised length law on partitions of n and the limit law."""
    cdf = partition_length_cdfs(n)
    total = cdf[-1]
    s1 = s2 = 0
    for l in range(1, n + 1):
        c = cdf[l] - cdf[l - 1]
        s1 += c * l
        s2 += c * l * l
    mean = Fraction(s1, total)
    var = Fraction(s2, total) - mean ** 2
    sd = math.sqrt(var)
    best = 0.0
    for l in range(0, n + 1):
        y = (l - float(mean)) / sd + GUMBEL_MEAN
        g = gumbel_cdf(y)
        right = cdf[l] / total
        left = cdf[l - 1] / total if l else 0.0
        best = max(best, abs(right - g), abs(left - g))
    return {"n": n, "sup_distance": best, "mean": float(mean), "sd": sd,
            "paper_beta": 2 / GUMBEL_C * math.sqrt(n) * math.log(n),
            "classical_beta": 1 / (2 * GUMBEL_C) * math.sqrt(n) * math.log(n),
            "alpha": math.sqrt(n)}


def gumbel_check(ns=(250, 500, 1000, 2000)):
    rows = [gumbel_distance(n) for n in ns]
    d = [r["sup_distance"] for r in rows]
    ok = all(a > b for a, b in zip(d, d[1:]))
    return {"check": "gumbel", "params": {"n": list(ns)}, "values": rows, "pass": ok,
            "tolerance": "strictly decreasing"}


# ---------------------------------------------------------------------------
# Wright constants and Airy moments

def _rising(a, n):
    out = Fraction(1)
    for j in range(n):
        out *= a + j
    return out


def wright_constants(K):
    """c_1..c_K from log sum (1/6)_n (5/6)_n / n! (3T/2)^n."""
    if K < 1:
        raise ValueError("K must be >= 1")
    terms = {n: _rising(Fraction(1, 6), n) * _rising(Fraction(5, 6), n) / factorial(n)
             * Fraction(3, 2) ** n for n in range(K + 1)}
    L = s_log(TruncSeries(terms, ("T",), caps=(K,)))
    return [Fraction(L[k]) for k in range(1, K + 1)]


def trivalent_sum(k):
    """sum 1/|Aut G| over connected trivalent multigraphs on 2k vertices,
    as (#connected pairings of 6k half-edges) / ((2k)! 6^{2k})."""
    nv = 2 * k
    owner = [h // 3 for h in range(3 * nv)]
    count = 0

    def rec(free, parent):
        nonlocal count
        if not free:
            roots = set()
            for v in range(nv):
                r = v
                while parent[r] != r:
                    r = parent[r]
                roots.add(r)
            count += len(roots) == 1
            return
        a = free[0]
        for idx in range(1, len(free)):
            b = free[idx]
            p = list(parent)
            ra, rb = owner[a], owner[b]
            while p[ra] != ra:
                ra = p[ra]
            while p[rb] != rb:
                rb = p[rb]
            p[ra] = rb
            rec(free[1:idx] + free[idx + 1:], p)

    rec(list(range(3 * nv)), list(range(nv)))
    return Fraction(count, factorial(nv) * 6 ** nv)


def airy_rho(j, c=None):
    """rho_j as (rational, eps) meaning rational * sqrt(2 pi)^eps."""
    if j == 0:
        return Fraction(1, 4), 1
    c = wright_constants(j)[j - 1] if c is None else c
    if j % 2 == 0:
        h = 3 * j // 2
        return c / (2 ** h * factorial(h - 1)), 1
    m = (3 * j - 1) // 2
    return c * 2 ** m * factorial(m) / factorial(2 * m), 0


def airy_moments(K, dps=30):
    """M_0..M_K with M_k = k! rho_{k-1}; symbolic and decimal forms."""
    cs = wright_constants(max(K - 1, 1))
    out = [{"k": 0, "rational": "1", "sqrt2pi_power": 0, "decimal": "1"}]
    with mpmath.workdps(dps):
        for k in range(1, K + 1):
            j = k - 1
            rat, eps = airy_rho(j, cs[j - 1] if j else None)
            rat *= factorial(k)
            val = mpmath.mpf(rat.numerator) / rat.denominator * mpmath.sqrt(2 * mpmath.pi) ** eps
            if j:
                direct = factorial(k) * mpmath.sqrt(mpmath.pi) * mpmath.mpf(cs[j - 1].numerator) \
                    / cs[j - 1].denominator / (mpmath.mpf(2) ** (mpmath.mpf(3 * j - 1) / 2)
                                               * mpmath.gamma(mpmath.mpf(3 * j) / 2))
                if abs(direct - val) > mpmath.mpf(10) ** (-dps + 5) * abs(val):
                    raise BugTrap("closed form of rho disagrees with the Gamma formula")
            out.append({"k": k, "rational": str(rat), "sqrt2pi_power": eps,
                        "decimal": mpmath.nstr(val, dps - 5)})
    return out


def wright_ratio_check(n, K, tol=0.1):
    """m_{n,k} / (m_{n,0} rho_{k-1} n^{3k/2}) for k = 0..K.

    The deficit decays like n^{-1/2}, so the ratios creep up to 1 slowly.
    """
    table = connected_counts(n, K)[n - 1]
    cs = wright_constants(max(K - 1, 1))
    m0 = table[0]
    if n >= 2 and m0 != n ** (n - 2):
        raise BugTrap("tree count differs from Cayley")
    ratios = [1.0]
    for k in range(1, K + 1):
        rat, eps = airy_rho(k - 1, cs[k - 2] if k > 1 else None)
        rho = float(rat) * math.sqrt(2 * math.pi) ** eps
        ratios.append(float(Fraction(table[k], m0)) / (rho * n ** (1.5 * k)))
    return {"check": "wright-ratio", "params": {"n": n, "K": K},
            "values": {"ratios": ratios, "m": [str(x) for x in table]},
            "pass": all(abs(r - 1) <= tol for r in ratios), "tolerance": tol}


# ---------------------------------------------------------------------------
# saddle point identities on the tree function

def _ps_mul(a, b, N):
    out = [Fraction(0)] * (N + 1)
    for i, x in enumerate(a[:N + 1]):
        if x:
            for j in range(0, N + 1 - i):
                if j < len(b) and b[j]:
                    out[i + j] += x * b[j]
    return out


def _ps(d, N):
    return [Fraction(d.get(i, 0)) if isinstance(d, dict) else Fraction(d[i]) if i < len(d) else Fraction(0)
            for i in range(N + 1)]


def _ts(a, N):
    return TruncSeries({i: c for i, c in enumerate(a)}, ("T",), caps=(N,))


def _from_ts(s, N):
    return [Fraction(s[i]) for i in range(N + 1)]


def _compose(f, g, N):
    """f(g(x)) mod x^{N+1} for g(0) = 0."""
    out = [Fraction(0)] * (N + 1)
    powg = [Fraction(1)] + [Fraction(0)] * N
    for k in range(N + 1):
        if f[k]:
            for i in range(N + 1):
                out[i] += f[k] * powg[i]
        powg = _ps_mul(powg, g, N)
    return out


def tree_saddle_identities(N=40, K=4):
    """Exact series checks of the tree-function identities to order N.

    Returns a report; E_k(1) = c_k is checked for k = 1..K-1.
    """
    w = [Fraction(0)] + [Fraction(n ** (n - 1), factorial(n)) for n in range(1, N + 1)]
    ew = _from_ts(s_exp(_ts(w, N)), N)
    Tew = [Fraction(0)] + ew[:N]
    checks = {"T_exp_w_eq_w": Tew == w}
    table = connected_counts(N, K)
    C = []
    for k in range(K + 1):
        C.append([Fraction(0)] + [Fraction(table[n - 1][k], factorial(n)) for n in range(1, N + 1)])
    w2 = _ps_mul(w, w, N)
    C0 = [a - b / 2 for a, b in zip(w, w2)]
    checks["C0_closed_form"] = C[0] == C0
    one_minus_w = [Fraction(1)] + [-x for x in w[1:]]
    log1mw = _from_ts(s_log(_ts(one_minus_w, N)), N)
    C1 = [-l / 2 - a / 2 - b / 4 for l, a, b in zip(log1mw, w, w2)]
    checks["C1_closed_form"] = C[1] == C1
    # T = w e^{-w} as a series in w
    emw = [Fraction((-1) ** i, factorial(i)) for i in range(N + 1)]
    Tw = [Fraction(0)] + emw[:N]
    cs = wright_constants(max(K - 1, 1))
    E = {}
    for k in range(2, K + 1):
        f = _compose(C[k], Tw, N)
        p = 3 * (k - 1)
        fac = [Fraction(comb(p, i) * (-1) ** i) for i in range(p + 1)]
        g = _ps_mul(f, fac, N)
        deg = max((i for i, c in enumerate(g) if c), default=0)
        bound = 3 * (k - 1) + 2
        if deg > bound:
            raise BugTrap(f"(1-w)^{p} C_{k} is not a polynomial of degree <= {bound} below order {N}")
        Ek = g[:deg + 1]
        E[k - 1] = Ek
        checks[f"E{k - 1}(1)=c{k - 1}"] = sum(Ek) == cs[k - 2]
    return {"check": "saddle", "params": {"order": N, "K": K},
            "values": {"checks": checks,
                       "E": {str(k): [str(c) for c in v] for k, v in E.items()},
                       "w_coefficients": [str(c) for c in w[1:6]]},
            "pass": all(checks.values()), "tolerance": "exact"}


# ---------------------------------------------------------------------------
# complete bipartite moments

def beta_partition_sum(n, k):
    total = Fraction(0)
    for lam in enum_partitions(n):
        mult = {}
        for a in lam:
            mult[a] = mult.get(a, 0) + 1
        den = 1
        for i, m in mult.items():
            den *= factorial(m) * factorial(i) ** m
        l = len(lam)
        nl = sum(comb(a, 2) for a in lam)
        total += Fraction((-1) ** (l - 1) * factorial(l - 1), den) * nl ** (n + k - 1)
    return n * total


def alpha_from_gf(n, K):
    """alpha_{n,k} = k! [t^k] ((e^t - 1)/t)^{n-1} R_{K_n}(e^t)."""
    R = complete_graph_R_table(n)[n]
    base = [Fraction(1, factorial(i + 1)) for i in range(K + 1)]
    acc = [Fraction(1)] + [Fraction(0)] * K
    for _ in range(n - 1):
        acc = _ps_mul(acc, base, K)
    Rexp = [sum(Fraction(r * j ** k, factorial(k)) for j, r in enumerate(R)) for k in range(K + 1)]
    prod_ = _ps_mul(acc, Rexp, K)
    return [prod_[k] * factorial(k) for k in range(K + 1)]


def bipartite_alpha_beta(n, K):
    if n < 1 or n > 8:
        raise ValueError("n must be in 1..8")
    beta_sum = [beta_partition_sum(n, k) for k in range(K + 1)]
    alpha = alpha_from_gf(n, K)
    beta_gf = [comb(n + k - 1, k) * alpha[k] for k in range(K + 1)]
    if beta_sum != beta_gf:
        raise BugTrap(f"beta routes disagree for n={n}")
    out = {"check": "bipartite-beta", "params": {"n": n, "K": K},
           "values": {"beta": [str(b) for b in beta_sum], "alpha": [str(a) for a in alpha]},
           "pass": True, "tolerance": "exact"}
    if n == 3:
        out["values"]["alpha_ratio"] = [str(a / alpha[0]) for a in alpha]
        out["values"]["alpha_ratio_closed"] = [str(Fraction(3 ** (k + 1) - 1, (k + 2) * (k + 1)))
                                               for k in range(K + 1)]
    return out


# ---------------------------------------------------------------------------
# unimodality and weak Hard Lefschetz

def unimodality_check(P):
    b = P.coeffs
    even, odd_nz = b[0::2], b[1::2]
    return {"check": "unimodality", "params": {"family": P.family},
            "values": {"even_unimodal": is_unimodal(even), "odd_unimodal": is_unimodal(odd_nz),
                       "full_unimodal": is_unimodal(b), "argmax": P.argmax()},
            "pass": is_unimodal(even) and is_unimodal(odd_nz), "tolerance": "exact"}


def weak_hl_check(P, k):
    """b_i <= b_{i+2j} for 0 <= i < k and 0 <= j <= k - i."""
    b = P.coeffs
    get = lambda i: b[i] if i < len(b) else 0
    bad = []
    count = 0
    for i in range(0, k):
        for j in range(0, k - i + 1):
            count += 1
            if get(i) > get(i + 2 * j):
                bad.append([i, i + 2 * j])
    return {"check": "weak-hard-lefschetz", "params": {"family": P.family, "k": k},
            "values": {"instances": count, "violations": bad[:50], "n_violations": len(bad)},
            "pass": not bad, "tolerance": "exact"}
