"""Exact scalar and polynomial arithmetic.

Coefficients are Python ints where possible and ``fractions.Fraction``
otherwise; ``ExactInt`` and ``ExactRat`` are just those two types.
Large integer products go through Kronecker substitution and gmpy2.
"""

from fractions import Fraction
from math import comb, gcd

import gmpy2

ExactInt = int
ExactRat = Fraction


def _norm(c):
    """Demote a Fraction with denominator 1 to int."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def big_binomial(n, k):
    """Exact binomial coefficient C(n, k) for 0 <= k <= n."""
    if not (isinstance(n, int) and isinstance(k, int)):
        raise TypeError("big_binomial expects integers")
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"big_binomial: need 0 <= k <= n, got n={n}, k={k}")
    return comb(n, k)


# ---------------------------------------------------------------------------
# Kronecker packing of integer polynomials

def kron_bits(bound):
    """Slot width (multiple of 8) able to hold signed values of size < bound."""
    b = max(int(bound), 1).bit_length() + 2
    return (b + 7) // 8 * 8


def kron_pack(coeffs, bits):
    """Pack a list of ints (|c| < 2^(bits-1)) into one integer."""
    nb = bits // 8
    pos = b"".join((c if c > 0 else 0).to_bytes(nb, "little") for c in coeffs)
    neg = b"".join((-c if c < 0 else 0).to_bytes(nb, "little") for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def kron_unpack(value, bits, n):
    """Inverse of kron_pack for n balanced slots."""
    nb = bits // 8
    half = 1 << (bits - 1)
    offset = int.from_bytes(half.to_bytes(nb, "little") * n, "little")
    v = value + offset
    if v < 0 or v.bit_length() > bits * n:
        raise OverflowError("kron_unpack: slot overflow")
    raw = v.to_bytes(nb * n, "little")
    return [int.from_bytes(raw[i * nb:(i + 1) * nb], "little") - half for i in range(n)]


def kron_mul(a, b, trunc=None):
    """Product of two dense int coefficient lists, optionally truncated."""
    if not a or not b:
        return []
    n = len(a) + len(b) - 1
    if trunc is not None:
        n = min(n, trunc)
        a, b = a[:n], b[:n]
    if min(len(a), len(b)) < 8:
        out = [0] * n
        for i, x in enumerate(a):
            if x:
                for j in range(min(len(b), n - i)):
                    out[i + j] += x * b[j]
        return out
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    bits = kron_bits(ma * mb * min(len(a), len(b)) + 1)
    pa = gmpy2.mpz(kron_pack(a, bits))
    pb = gmpy2.mpz(kron_pack(b, bits))
    prod = int(pa * pb)
    return kron_unpack(prod, bits, len(a) + len(b) - 1)[:n]


# ---------------------------------------------------------------------------
# One-variable Laurent polynomials

class UniLaurent:
    """Sparse Laurent polynomial in one named variable."""

    __slots__ = ("var", "coeffs")

    def __init__(self, coeffs=None, var="q"):
        self.var = var
        d = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
            for e, c in items:
                if c:
                    d[int(e)] = _norm(c)
        self.coeffs = d

    @classmethod
    def monomial(cls, e, c=1, var="q"):
        return cls({e: c}, var)

    @classmethod
    def from_dense(cls, coeffs, low=0, var="q"):
        return cls({low + i: c for i, c in enumerate(coeffs) if c}, var)

    def _check(self, other):
        if isinstance(other, UniLaurent):
            if other.var != self.var and other.coeffs and self.coeffs:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, (int, Fraction)):
            return UniLaurent({0: other} if other else {}, self.var)
        return NotImplemented

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def degree(self):
        return max(self.coeffs) if self.coeffs else None

    def low_degree(self):
        return min(self.coeffs) if self.coeffs else None

    def __getitem__(self, e):
        return self.coeffs.get(e, 0)

    def dense(self):
        """(low, list) with list[i] the coefficient of var^(low+i)."""
        if not self.coeffs:
            return 0, []
        lo, hi = self.low_degree(), self.degree()
        out = [0] * (hi - lo + 1)
        for e, c in self.coeffs.items():
            out[e - lo] = c
        return lo, out

    def __eq__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, frozenset(self.coeffs.items())))

    def __neg__(self):
        return UniLaurent({e: -c for e, c in self.coeffs.items()}, self.var)

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        d = dict(self.coeffs)
        for e, c in other.coeffs.items():
            d[e] = d.get(e, 0) + c
        return UniLaurent(d, self.var or other.var)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if not c:
            return UniLaurent({}, self.var)
        return UniLaurent({e: v * c for e, v in self.coeffs.items()}, self.var)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniLaurent({}, self.var)
        if len(a) * len(b) > 4096 and all(type(c) is int for c in a.values()) \
                and all(type(c) is int for c in b.values()):
            la, da = self.dense()
            lb, db = other.dense()
            return UniLaurent.from_dense(kron_mul(da, db), la + lb, self.var)
        d = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                d[e] = d.get(e, 0) + c1 * c2
        return UniLaurent(d, self.var)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self.coeffs) == 1:
                (e, c), = self.coeffs.items()
                return UniLaurent({e * k: Fraction(1) / Fraction(c) ** (-k)}, self.var)
            raise ValueError("negative power of a non-monomial")
        out = UniLaurent({0: 1}, self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k):
        return UniLaurent({e + k: c for e, c in self.coeffs.items()}, self.var)

    def adams(self, k):
        return UniLaurent({e * k: c for e, c in self.coeffs.items()}, self.var)

    def reversed(self, d):
        """x^d * f(1/x)."""
        return UniLaurent({d - e: c for e, c in self.coeffs.items()}, self.var)

    def __call__(self, x):
        if not self.coeffs:
            return 0
        lo, dense = self.dense()
        acc = 0
        for c in reversed(dense):
            acc = acc * x + c
        if lo:
            acc = acc * (Fraction(x) ** lo if lo < 0 else x ** lo)
        return _norm(acc)

    def taylor_shift(self, a=1):
        """f(x + a) for a polynomial f (nonnegative exponents)."""
        lo, c = self.dense()
        if lo < 0:
            raise ValueError("taylor_shift needs a polynomial")
        c = [0] * lo + c
        n = len(c)
        c = list(c)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                c[j] += a * c[j + 1]
        return UniLaurent.from_dense(c, 0, self.var)

    def content_ints(self):
        return all(type(c) is int for c in self.coeffs.values())

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                terms.append(f"{c}")
            elif e == 1:
                terms.append(f"{c}*{self.var}")
            else:
                terms.append(f"{c}*{self.var}^{e}")
        return " + ".join(terms)


def poly_add(a, b):
    return a + b


def poly_mul(a, b):
    return a * b


# ---------------------------------------------------------------------------
# dense polynomial helpers over Q (lists, low degree first)

def _trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _ipoly_content(p):
    g = 0
    for c in p:
        g = gcd(g, c)
    return g


def _to_int_poly(p):
    """Scale a Fraction list to a primitive integer list (sign of lead > 0)."""
    den = 1
    for c in p:
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    q = [int(c * den) for c in p]
    g = _ipoly_content(q)
    if q and q[-1] < 0:
        g = -g
    return [c // g for c in q] if g else q


def _prem(a, b):
    """Pseudo-remainder of integer polys."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        la = a[-1]
        a = [c * lb for c in a]
        for i, c in enumerate(b):
            a[i + k] -= la * c
        _trim(a)
    return a


def poly_gcd(a, b):
    """Monic gcd over Q of two dense lists, via the primitive PRS."""
    a = _trim([c for c in a])
    b = _trim([c for c in b])
    if not a:
        return _monic(b) if b else []
    if not b:
        return _monic(a)
    a, b = _to_int_poly(a), _to_int_poly(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, (_to_int_poly(r) if r else [])
    return _monic(a)


def _monic(p):
    lead = Fraction(p[-1])
    return [_norm(Fraction(c) / lead) for c in p]


def poly_divmod(a, b):
    """Quotient and remainder over Q of dense lists."""
    a = [Fraction(c) for c in a]
    _trim(a)
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lb = Fraction(b[-1])
    if len(a) < len(b):
        return [], [_norm(c) for c in a]
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1] / lb
        q[k] = c
        if c:
            for i, bc in enumerate(b):
                a[k + i] -= c * bc
    r = _trim(a[:len(b) - 1])
    return [_norm(c) for c in q], [_norm(c) for c in r]


def poly_exact_div(a, b):
    q, r = poly_divmod(a, b)
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    return q


# ---------------------------------------------------------------------------
# reduced rational functions

class UniRatFun:
    """num/den with gcd 1 and monic denominator; both polynomials."""

    __slots__ = ("num", "den", "var")

    def __init__(self, num, den=None, var=None, _reduced=False):
        if isinstance(num, (int, Fraction)):
            num = UniLaurent({0: num} if num else {}, var or "q")
        var = var or num.var
        if den is None:
            den = UniLaurent({0: 1}, var)
        elif isinstance(den, (int, Fraction)):
            den = UniLaurent({0: den}, var)
        if den.is_zero():
            raise ZeroDivisionError("UniRatFun with zero denominator")
        self.var = var
        if _reduced:
            self.num, self.den = num, den
        else:
            self.num, self.den = _reduce(num, den, var)

    @classmethod
    def const(cls, c, var="q"):
        return cls(UniLaurent({0: c} if c else {}, var), None, var, _reduced=True)

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_poly(self):
        return self.den.degree() == 0

    def as_laurent(self):
        if not self.is_poly():
            raise ArithmeticError("rational function is not a polynomial")
        return self.num.scale(Fraction(1) / Fraction(self.den[0])) if self.den[0] != 1 else self.num

    def _lift(self, other):
        if isinstance(other, UniRatFun):
            return other
        if isinstance(other, UniLaurent):
            return UniRatFun(other, None, self.var)
        if isinstance(other, (int, Fraction)):
            return UniRatFun(UniLaurent({0: other} if other else {}, self.var), None, self.var,
                             _reduced=True)
        return NotImplemented

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return UniRatFun(-self.num, self.den, self.var, _reduced=True)

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not other:
            return self
        if not self:
            return other
        if self.den == other.den:
            return UniRatFun(self.num + other.num, self.den, self.var)
        return UniRatFun(self.num * other.den + other.num * self.den,
                         self.den * other.den, self.var)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return UniRatFun(0, None, self.var)
            return UniRatFun(self.num.scale(other), self.den, self.var, _reduced=True)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self or not other:
            return UniRatFun(0, None, self.var)
        return UniRatFun(self.num * other.num, self.den * other.den, self.var)

    __rmul__ = __mul__

    def scale(self, c):
        return self * c

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero rational function")
        return UniRatFun(self.den, self.num, self.var)

    def __truediv__(self, other):
        other = self._lift(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return UniRatFun(self.num ** k, self.den ** k, self.var, _reduced=True)

    def adams(self, k):
        return UniRatFun(self.num.adams(k), self.den.adams(k), self.var, _reduced=True)

    def __call__(self, x):
        d = self.den(x)
        if not d:
            raise ZeroDivisionError("pole")
        return _norm(Fraction(self.num(x)) / Fraction(d))

    def __repr__(self):
        if self.is_poly():
            return repr(self.as_laurent())
        return f"({self.num!r})/({self.den!r})"


def _reduce(num, den, var):
    if num.is_zero():
        return UniLaurent({}, var), UniLaurent({0: 1}, var)
    # pull monomial factors so both are genuine polynomials
    shift = num.low_degree() - den.low_degree()
    num = num.shift(-num.low_degree())
    den = den.shift(-den.low_degree())
    if shift > 0:
        num = num.shift(shift)
    elif shift < 0:
        den = den.shift(-shift)
    _, nd = num.dense()
    nd = [0] * num.low_degree() + nd
    _, dd = den.dense()
    dd = [0] * den.low_degree() + dd
    if len(dd) > 1:
        g = poly_gcd(nd, dd)
        if len(g) > 1:
            nd = poly_exact_div(nd, g)
            dd = poly_exact_div(dd, g)
    lead = Fraction(dd[-1])
    if lead != 1:
        nd = [_norm(Fraction(c) / lead) for c in nd]
        dd = [_norm(Fraction(c) / lead) for c in dd]
    return UniLaurent.from_dense(nd, 0, var), UniLaurent.from_dense(dd, 0, var)


def ratfun_reduce(f):
    """Reduced form of a UniRatFun (construction already reduces)."""
    if not isinstance(f, UniRatFun):
        raise TypeError("ratfun_reduce expects a UniRatFun")
    return UniRatFun(f.num, f.den, f.var)


# ---------------------------------------------------------------------------
# two-variable polynomials

class BiPoly:
    """Sparse polynomial in two named variables."""

    __slots__ = ("vars", "coeffs")

    def __init__(self, coeffs=None, vars=("z", "w")):
        self.vars = tuple(vars)
        self.coeffs = {(int(i), int(j)): _norm(c) for (i, j), c in (coeffs or {}).items() if c}

    def n_terms(self):
        return len(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        d = dict(self.coeffs)
        for k, c in other.coeffs.items():
            d[k] = d.get(k, 0) + c
        return BiPoly(d, self.vars)

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.coeffs.items()}, self.vars)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiPoly({k: c * other for k, c in self.coeffs.items()}, self.vars)
        d = {}
        for (a, b), c in self.coeffs.items():
            for (e, f), g in other.coeffs.items():
                k = (a + e, b + f)
                d[k] = d.get(k, 0) + c * g
        return BiPoly(d, self.vars)

    __rmul__ = __mul__

    def transpose(self):
        return BiPoly({(j, i): c for (i, j), c in self.coeffs.items()}, self.vars)

    def degrees(self):
        if not self.coeffs:
            return (0, 0)
        return (max(i for i, _ in self.coeffs), max(j for _, j in self.coeffs))

    def __call__(self, x, y):
        acc = 0
        for (i, j), c in self.coeffs.items():
            acc += c * x ** i * y ** j
        return _norm(acc)

    def specialize_first(self, x):
        """Polynomial in the second variable after setting the first to x."""
        d = {}
        for (i, j), c in self.coeffs.items():
            d[j] = d.get(j, 0) + c * x ** i
        return UniLaurent(d, self.vars[1])

    def specialize_second(self, y):
        d = {}
        for (i, j), c in self.coeffs.items():
            d[i] = d.get(i, 0) + c * y ** j
        return UniLaurent(d, self.vars[0])

    def __repr__(self):
        return f"BiPoly({len(self.coeffs)} terms in {self.vars})"
