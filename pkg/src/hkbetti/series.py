"""Truncated power series in auxiliary variables, with formal and
plethystic exp/log.

Coefficients may be ints/Fractions, UniLaurent, UniRatFun or RatFunSeries.
Adams operations act on every formal variable, inner ones included.
"""

from fractions import Fraction
from itertools import product

from .arith import UniLaurent, UniRatFun, _norm


def moebius(k):
    """Classical Moebius function."""
    if k < 1:
        raise ValueError("moebius needs k >= 1")
    out, n, p = 1, k, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    if n > 1:
        out = -out
    return out


def _domain_of(c):
    if isinstance(c, (int, Fraction)):
        return "Q"
    if isinstance(c, UniLaurent):
        return "laurent"
    if isinstance(c, UniRatFun):
        return "ratfun"
    if isinstance(c, RatFunSeries):
        return "ratfunseries"
    raise TypeError(f"unsupported coefficient {type(c).__name__}")


def _is_zero(c):
    if isinstance(c, (int, Fraction)):
        return c == 0
    return c.is_zero()


def _adams_coef(c, k):
    if isinstance(c, (int, Fraction)):
        return c
    return c.adams(k)


def _scale(c, s):
    if isinstance(c, (int, Fraction)):
        return _norm(Fraction(c) * s) if isinstance(s, Fraction) else c * s
    return c.scale(s)


def _coef_inv(c):
    if isinstance(c, (int, Fraction)):
        if c == 0:
            raise ZeroDivisionError("constant term is not a unit")
        return _norm(Fraction(1) / Fraction(c))
    if isinstance(c, UniLaurent):
        if len(c.coeffs) != 1:
            raise ZeroDivisionError("constant term is not a unit in the Laurent ring")
        return c ** -1
    if isinstance(c, UniRatFun):
        if c.is_zero():
            raise ZeroDivisionError("constant term is zero")
        return c.inverse()
    return c.inverse()


def _is_one(c):
    if isinstance(c, (int, Fraction)):
        return c == 1
    if isinstance(c, UniLaurent):
        return c.coeffs == {0: 1}
    if isinstance(c, UniRatFun):
        return c.num.coeffs == {0: 1} and c.den.coeffs == {0: 1}
    return c.is_one()


class TruncSeries:
    """Series in aux variables with per-variable and/or total degree caps."""

    __slots__ = ("vars", "caps", "total", "coeffs", "domain", "_mons")

    def __init__(self, coeffs, vars=("T",), caps=None, total=None, domain=None):
        self.vars = tuple(vars)
        r = len(self.vars)
        if caps is None and total is None:
            raise ValueError("a truncation bound is required")
        self.caps = tuple(caps) if caps is not None else (total,) * r
        self.total = total
        d = {}
        for e, c in (coeffs.items() if isinstance(coeffs, dict) else coeffs):
            e = (e,) if isinstance(e, int) else tuple(e)
            if len(e) != r:
                raise ValueError("exponent arity mismatch")
            if self._inside(e) and not _is_zero(c):
                d[e] = c
        self.coeffs = d
        if domain is None:
            doms = {_domain_of(c) for c in d.values()} - {"Q"}
            domain = doms.pop() if doms else "Q"
        self.domain = domain
        self._mons = None

    def _inside(self, e):
        if any(x < 0 or x > c for x, c in zip(e, self.caps)):
            return False
        return self.total is None or sum(e) <= self.total

    def like(self, coeffs):
        return TruncSeries(coeffs, self.vars, self.caps, self.total, self.domain)

    def monomials(self):
        """All exponents within the bounds, sorted by total degree."""
        if self._mons is None:
            mons = [e for e in product(*(range(c + 1) for c in self.caps)) if self._inside(e)]
            mons.sort(key=lambda e: (sum(e), e))
            self._mons = mons
        return self._mons

    def __getitem__(self, e):
        e = (e,) if isinstance(e, int) else tuple(e)
        return self.coeffs.get(e, 0)

    def constant(self):
        return self.coeffs.get((0,) * len(self.vars), 0)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return False
        keys = set(self.coeffs) | set(other.coeffs)
        return all(_is_zero(self[k] - other[k]) for k in keys)

    def _compat(self, other):
        if not isinstance(other, TruncSeries):
            raise TypeError("expected a TruncSeries")
        if other.vars != self.vars:
            raise ValueError("aux variable mismatch")
        if "Q" not in (self.domain, other.domain) and self.domain != other.domain:
            raise ValueError(f"domain mismatch: {self.domain} vs {other.domain}")
        caps = tuple(min(a, b) for a, b in zip(self.caps, other.caps))
        totals = [t for t in (self.total, other.total) if t is not None]
        total = min(totals) if totals else None
        dom = self.domain if self.domain != "Q" else other.domain
        return caps, total, dom

    def __add__(self, other):
        caps, total, dom = self._compat(other)
        d = dict(self.coeffs)
        for e, c in other.coeffs.items():
            d[e] = d[e] + c if e in d else c
        return TruncSeries(d, self.vars, caps, total, dom)

    def __neg__(self):
        return self.like({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return self.like({e: _scale(c, s) for e, c in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        caps, total, dom = self._compat(other)
        out = TruncSeries({}, self.vars, caps, total, dom)
        d = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if out._inside(e):
                    p = c1 * c2
                    d[e] = d[e] + p if e in d else p
        out.coeffs = {e: c for e, c in d.items() if not _is_zero(c)}
        return out

    def adams(self, k):
        d = {}
        for e, c in self.coeffs.items():
            ek = tuple(x * k for x in e)
            if self._inside(ek):
                d[ek] = _adams_coef(c, k)
        return self.like(d)

    def max_degree(self):
        if self.total is not None:
            return self.total
        return sum(self.caps)

    def __repr__(self):
        return f"TruncSeries({len(self.coeffs)} terms in {self.vars}, caps={self.caps})"


def s_add(a, b):
    return a + b


def s_mul(a, b):
    return a * b


def s_inv(a):
    """Multiplicative inverse; the constant term must be a unit."""
    c0 = a.constant()
    inv0 = _coef_inv(c0)
    zero = (0,) * len(a.vars)
    b = {zero: inv0}
    items = [(e, c) for e, c in a.coeffs.items() if e != zero]
    for u in a.monomials():
        if u == zero:
            continue
        acc = None
        for e, c in items:
            rest = tuple(x - y for x, y in zip(u, e))
            if min(rest) < 0:
                continue
            br = b.get(rest)
            if br is None:
                continue
            t = c * br
            acc = t if acc is None else acc + t
        if acc is not None and not _is_zero(acc):
            b[u] = -(inv0 * acc)
    return a.like(b)


def s_log(a):
    """Formal logarithm of a series with constant term 1."""
    zero = (0,) * len(a.vars)
    if not _is_one(a.constant()):
        raise ValueError("s_log needs constant term 1")
    items = [(e, c) for e, c in a.coeffs.items() if e != zero]
    L = {}
    for u in a.monomials():
        du = sum(u)
        if du == 0:
            continue
        acc = a.coeffs.get(u)
        acc = _scale(acc, du) if acc is not None else None
        for e, c in items:
            rest = tuple(x - y for x, y in zip(u, e))
            if min(rest) < 0 or sum(rest) == 0:
                continue
            lr = L.get(rest)
            if lr is None:
                continue
            t = _scale(lr * c, sum(rest))
            acc = -t if acc is None else acc - t
        if acc is not None and not _is_zero(acc):
            L[u] = _scale(acc, Fraction(1, du))
    return a.like(L)


def s_exp(a):
    """Formal exponential of a series with constant term 0."""
    zero = (0,) * len(a.vars)
    if not _is_zero(a.constant()):
        raise ValueError("s_exp needs constant term 0")
    items = [(e, _scale(c, sum(e))) for e, c in a.coeffs.items() if e != zero]
    E = {zero: 1}
    for u in a.monomials():
        du = sum(u)
        if du == 0:
            continue
        acc = None
        for e, c in items:
            rest = tuple(x - y for x, y in zip(u, e))
            if min(rest) < 0:
                continue
            er = E.get(rest)
            if er is None:
                continue
            t = c * er
            acc = t if acc is None else acc + t
        if acc is not None and not _is_zero(acc):
            E[u] = _scale(acc, Fraction(1, du))
    return a.like(E)


def adams(a, k):
    if k < 1:
        raise ValueError("adams needs k >= 1")
    return a.adams(k)


def pleth_exp(f):
    """Exp(f) = exp(sum_k adams(f, k)/k)."""
    if not _is_zero(f.constant()):
        raise ValueError("pleth_exp needs constant term 0")
    acc = f.like({})
    for k in range(1, f.max_degree() + 1):
        acc = acc + f.adams(k).scale(Fraction(1, k))
    return s_exp(acc)


def pleth_log(g):
    """Log(g) = sum_k mu(k)/k adams(log g, k)."""
    L = s_log(g)
    acc = g.like({})
    for k in range(1, g.max_degree() + 1):
        m = moebius(k)
        if m:
            acc = acc + L.adams(k).scale(Fraction(m, k))
    return acc


# ---------------------------------------------------------------------------

class RatFunSeries:
    """Power series in w modulo w^order, coefficients UniRatFun in z."""

    __slots__ = ("coeffs", "order", "zvar", "wvar")

    def __init__(self, coeffs, order, zvar="z", wvar="w"):
        self.order = order
        self.zvar = zvar
        self.wvar = wvar
        cs = []
        for i in range(order):
            c = coeffs[i] if i < len(coeffs) else 0
            if not isinstance(c, UniRatFun):
                c = UniRatFun(c if isinstance(c, UniLaurent) else UniLaurent({0: c} if c else {}, zvar),
                              None, zvar)
            cs.append(c)
        self.coeffs = cs

    @classmethod
    def from_bivariate(cls, terms, order, zvar="z", wvar="w"):
        """terms: dict (i, j) -> c meaning c z^i w^j."""
        rows = [dict() for _ in range(order)]
        for (i, j), c in terms.items():
            if j < order:
                rows[j][i] = rows[j].get(i, 0) + c
        return cls([UniLaurent(r, zvar) for r in rows], order, zvar, wvar)

    def _zero_c(self):
        return UniRatFun(0, None, self.zvar)

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def is_one(self):
        return self.coeffs[0] == 1 and all(c.is_zero() for c in self.coeffs[1:])

    def _lift(self, other):
        if isinstance(other, RatFunSeries):
            return other
        return RatFunSeries([other], self.order, self.zvar, self.wvar)

    def __eq__(self, other):
        other = self._lift(other)
        n = min(self.order, other.order)
        return all(self.coeffs[i] == other.coeffs[i] for i in range(n))

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __add__(self, other):
        other = self._lift(other)
        n = min(self.order, other.order)
        return RatFunSeries([self.coeffs[i] + other.coeffs[i] for i in range(n)], n,
                            self.zvar, self.wvar)

    __radd__ = __add__

    def __neg__(self):
        return RatFunSeries([-c for c in self.coeffs], self.order, self.zvar, self.wvar)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s):
        return RatFunSeries([c * s for c in self.coeffs], self.order, self.zvar, self.wvar)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._lift(other)
        n = min(self.order, other.order)
        out = [self._zero_c() for _ in range(n)]
        for i in range(n):
            a = self.coeffs[i]
            if a.is_zero():
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return RatFunSeries(out, n, self.zvar, self.wvar)

    __rmul__ = __mul__

    def inverse(self):
        c0 = self.coeffs[0]
        if c0.is_zero():
            raise ZeroDivisionError("w^0 coefficient is zero; not a unit")
        inv0 = c0.inverse()
        n = self.order
        b = [inv0]
        for m in range(1, n):
            acc = self._zero_c()
            for i in range(1, m + 1):
                a = self.coeffs[i]
                if not a.is_zero():
                    acc = acc + a * b[m - i]
            b.append(-(acc * inv0))
        return RatFunSeries(b, n, self.zvar, self.wvar)

    def adams(self, k):
        out = [self._zero_c() for _ in range(self.order)]
        for i, c in enumerate(self.coeffs):
            if i * k < self.order and not c.is_zero():
                out[i * k] = c.adams(k)
        return RatFunSeries(out, self.order, self.zvar, self.wvar)

    def truncate(self, order):
        return RatFunSeries(self.coeffs[:order], order, self.zvar, self.wvar)

    def __repr__(self):
        return f"RatFunSeries(order={self.order})"
