"""Point counts of moment-map fibres over small prime fields.

Representation space V = sum over edges (i -> j) of Hom(V_i, V_j) plus sum
over vertices of Hom(W_i, V_i).  A point of V x V* is (x_e, I_i; y_e, J_i)
and the moment map is

    mu_j += x_e y_e,  mu_i -= y_e x_e   for each edge e = (i, j)
    mu_i += I_i J_i                      for each framing

so the framed Jordan quiver gives [A, B] + IJ.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .errors import BugTrap
from .families import Quiver

STATE_CAP = 10 ** 8


def _is_prime(q):
    return q >= 2 and all(q % d for d in range(2, int(q ** 0.5) + 1))


@dataclass(frozen=True)
class FqConfig:
    q: int
    quiver: Quiver
    xi: tuple

    def __post_init__(self):
        if not _is_prime(self.q):
            raise ValueError("q must be prime")
        Q = self.quiver
        if Q.v is None:
            raise ValueError("dimension vector v is required")
        if Q.w is None:
            object.__setattr__(self, "quiver", Quiver(Q.r, Q.edges, Q.v, (0,) * Q.r))
        xi = tuple(int(c) % self.q for c in self.xi)
        if len(xi) != Q.r:
            raise ValueError("xi needs one scalar per vertex")
        object.__setattr__(self, "xi", xi)

    def blocks(self):
        """Shapes (rows, cols) of the V-side matrices, with (i, j) vertex data."""
        Q = self.quiver
        out = []
        for i, j in Q.edges:
            out.append(("edge", i, j, (Q.v[j], Q.v[i])))
        for i in range(Q.r):
            if Q.w[i] and Q.v[i]:
                out.append(("frame", i, i, (Q.v[i], Q.w[i])))
        return out

    def dim_V(self):
        return sum(a * b for *_, (a, b) in self.blocks())

    def dim_g(self):
        return sum(c * c for c in self.quiver.v)


def gl_order(n, q):
    out = 1
    for k in range(n):
        out *= q ** n - q ** k
    return out


def group_order(cfg):
    out = 1
    for c in cfg.quiver.v:
        out *= gl_order(c, cfg.q)
    return out


def count_fiber_bruteforce(cfg, chunk=1 << 18):
    """#{(x, y) in V x V* : mu = xi Id} by exhaustive enumeration."""
    q = cfg.q
    Q = cfg.quiver
    dim = cfg.dim_V()
    total_states = q ** (2 * dim)
    if total_states > STATE_CAP:
        raise ValueError(f"state space {total_states} exceeds cap {STATE_CAP}")
    blocks = cfg.blocks()
    targets = [(xi * np.eye(Q.v[i], dtype=np.int64)) % q for i, xi in enumerate(cfg.xi)]
    count = 0
    weights = q ** np.arange(2 * dim, dtype=np.int64)
    for start in range(0, total_states, chunk):
        idx = np.arange(start, min(start + chunk, total_states), dtype=np.int64)
        coords = (idx[:, None] // weights[None, :]) % q
        n = len(idx)
        mu = [np.zeros((n, c, c), dtype=np.int64) for c in Q.v]
        off = 0
        mats = []
        for kind, i, j, (a, b) in blocks:
            m = coords[:, off:off + a * b].reshape(n, a, b)
            off += a * b
            mats.append(m)
        duals = []
        for kind, i, j, (a, b) in blocks:
            m = coords[:, off:off + a * b].reshape(n, b, a)
            off += a * b
            duals.append(m)
        for (kind, i, j, _), x, y in zip(blocks, mats, duals):
            if kind == "edge":
                mu[j] += x @ y
                mu[i] -= y @ x
            else:
                mu[i] += x @ y
        ok = np.ones(n, dtype=bool)
        for i, c in enumerate(Q.v):
            if c:
                ok &= np.all(((mu[i] - targets[i]) % q).reshape(n, -1) == 0, axis=1)
        count += int(ok.sum())
    return count


def rank_mod(M, q):
    """Rank of an integer matrix over F_q by Gaussian elimination."""
    A = [list(map(lambda c: c % q, row)) for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, q)
        A[r] = [v * inv % q for v in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(vi - f * vr) % q for vi, vr in zip(A[i], A[r])]
        r += 1
        if r == rows:
            break
    return r


def rho_matrix(cfg, X):
    """Matrix of rho(X) on V in the coordinate basis; X is a list of square arrays."""
    blocks = cfg.blocks()
    dim = cfg.dim_V()
    M = np.zeros((dim, dim), dtype=np.int64)
    off = 0
    for kind, i, j, (a, b) in blocks:
        for k in range(a * b):
            E = np.zeros((a, b), dtype=np.int64)
            E[k // b, k % b] = 1
            img = X[j] @ E - E @ X[i] if kind == "edge" else X[i] @ E
            M[off:off + a * b, off + k] = img.ravel()
        off += a * b
    return M % cfg.q


def kernel_size(cfg, X):
    dim = cfg.dim_V()
    if dim == 0:
        return 1
    return cfg.q ** (dim - rank_mod(rho_matrix(cfg, X).tolist(), cfg.q))


def count_fiber_fourier(cfg, return_sums=False):
    """|V| / |g| * sum_X |ker rho(X)| Psi(<X, xi>), done in exact integers.

    X with the same trace pairing c = sum xi_i tr X_i are grouped; scaling X
    by a unit permutes the nonzero classes, so S_c is the same for every
    c != 0 and sum_{c != 0} Psi(c) = -1 turns the character sum into S_0 - S_1.
    """
    q = cfg.q
    Q = cfg.quiver
    dg = cfg.dim_g()
    if q ** dg > STATE_CAP:
        raise ValueError("Lie algebra too large to enumerate")
    S = [0] * q
    shapes = list(Q.v)
    sizes = [c * c for c in shapes]
    for flat in product(range(q), repeat=dg):
        X, off = [], 0
        for c, s in zip(shapes, sizes):
            X.append(np.array(flat[off:off + s], dtype=np.int64).reshape(c, c))
            off += s
        c = sum(xi * int(np.trace(x)) for xi, x in zip(cfg.xi, X)) % q
        a = kernel_size(cfg, X)
        S[c] += a
    if len(set(S[1:])) > 1:
        raise BugTrap("character sum classes are not balanced")
    char_sum = S[0] - (S[1] if q > 1 else 0)
    num = q ** cfg.dim_V() * char_sum
    if num % (q ** dg):
        raise BugTrap("Fourier count is not an integer")
    count = num // q ** dg
    return (count, S) if return_sums else count


def interpolate_rational(points):
    """Lagrange interpolation over Q; returns dense Fraction coefficients."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for k, (xk, yk) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for m, (xm, _) in enumerate(points):
            if m == k:
                continue
            basis = [Fraction(0)] + basis
            for i in range(len(basis) - 1):
                basis[i] -= xm * basis[i + 1]
            denom *= xk - xm
        for i, c in enumerate(basis):
            coeffs[i] += yk * c / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def e_polynomial(P):
    """E(q) = sum_i b_{2i} q^{dim - i} from an even BettiPoly with complex dim."""
    dim = P.complex_dim
    out = [0] * (dim + 1)
    for i in range(0, len(P.coeffs), 2):
        if P.coeffs[i]:
            out[dim - i // 2] += P.coeffs[i]
    return out


def check_katz(quiver, xi, P, primes=(2, 3, 5, 7), method="fourier"):
    """Interpolate quotient counts over several q and compare with E(q) from P."""
    counter = count_fiber_fourier if method == "fourier" else count_fiber_bruteforce
    pts = []
    for q in primes:
        cfg = FqConfig(q, quiver, xi)
        fiber = counter(cfg)
        G = group_order(cfg)
        if fiber % G:
            raise ValueError(f"group order {G} does not divide fibre count {fiber} at q={q}: "
                             "the action is not free")
        pts.append((q, fiber // G))
    fit = interpolate_rational(pts)
    E = e_polynomial(P)
    integral = all(c.denominator == 1 for c in fit)
    fit_int = [int(c) for c in fit] if integral else None
    ok = integral and fit_int == E
    return {"check": "katz", "params": {"quiver": quiver.to_json(), "xi": list(xi),
                                        "primes": list(primes)},
            "values": {"quotient_counts": {str(q): c for q, c in pts},
                       "fit": [str(c) for c in fit], "E": E},
            "pass": ok, "tolerance": "exact"}
