"""Property-based checks of the algebraic and combinatorial invariants."""

from fractions import Fraction

from hypothesis import assume, given
from hypothesis import strategies as st

from hkbetti import asymptotics as asy
from hkbetti.arith import UniLaurent, UniRatFun, ratfun_reduce
from hkbetti.families import (
    Quiver,
    is_unimodal,
    poincare_grassmannian,
    poincare_quiver_indivisible,
    poincare_toric_quiver,
)
from hkbetti.graphs import Graph, external_activity_dc, external_activity_oracle
from hkbetti.partitions import Partition, cells_arm_leg, conjugate, pairing_n
from hkbetti.series import TruncSeries, adams, pleth_exp, pleth_log, s_exp, s_log

small_int = st.integers(-6, 6)


def laurent(var="q", lo=-3, hi=4):
    return st.dictionaries(st.integers(lo, hi), small_int, max_size=5).map(lambda d: UniLaurent(d, var))


def poly(var="q"):
    return laurent(var, 0, 4)


partitions = st.lists(st.integers(1, 6), max_size=6).map(Partition)


# --- arithmetic ---------------------------------------------------------------

@given(laurent(), laurent(), laurent())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a


@given(poly(), poly(), poly(), poly(), st.integers(-9, 9))
def test_ratfun_agrees_with_evaluation(n1, d1, n2, d2, x):
    for d in (d1, d2):
        assume(not d.is_zero())
        assume(d(x) != 0)
    f, g = UniRatFun(n1, d1), UniRatFun(n2, d2)
    fx, gx = Fraction(n1(x), d1(x)), Fraction(n2(x), d2(x))
    assert (f + g)(x) == fx + gx
    assert (f * g)(x) == fx * gx


@given(poly(), poly())
def test_reduce_idempotent(n, d):
    assume(not d.is_zero())
    f = ratfun_reduce(UniRatFun(n, d))
    assert ratfun_reduce(f) == f


# --- series -------------------------------------------------------------------

N = 5


def series(const, coeff=st.fractions(min_value=-5, max_value=5, max_denominator=4)):
    return st.dictionaries(st.integers(1, N), coeff, max_size=N).map(
        lambda d: TruncSeries({0: const, **d} if const else d, ("T",), caps=(N,)))


def laurent_series(const):
    return st.dictionaries(st.integers(1, N), laurent("t", -2, 2), max_size=3).map(
        lambda d: TruncSeries({0: const, **d} if const else d, ("T",), caps=(N,)))


@given(series(0))
def test_log_exp_inverse(f):
    assert s_log(s_exp(f)) == f


@given(series(1))
def test_exp_log_inverse(g):
    assert s_exp(s_log(g)) == g


@given(laurent_series(1), laurent_series(1), st.integers(1, 3), st.integers(1, 3))
def test_adams_properties(a, b, j, k):
    assert adams(a * b, k) == adams(a, k) * adams(b, k)
    assert adams(adams(a, j), k) == adams(a, j * k)


@given(laurent_series(0), laurent_series(0))
def test_pleth_exp_additive(f, g):
    assert pleth_exp(f + g) == pleth_exp(f) * pleth_exp(g)


@given(laurent_series(1), laurent_series(1))
def test_pleth_log_multiplicative(a, b):
    assert pleth_log(a * b) == pleth_log(a) + pleth_log(b)


@given(laurent_series(0))
def test_pleth_round_trip(f):
    assert pleth_log(pleth_exp(f)) == f


# --- partitions ------------------------------------------------------------------

@given(partitions)
def test_conjugate_involution(lam):
    assert conjugate(conjugate(lam)) == lam


@given(partitions, partitions)
def test_pairing_symmetric(lam, mu):
    assert pairing_n(lam, mu) == pairing_n(mu, lam)
    assert pairing_n(lam, mu) == sum(min(a, b) for a in lam for b in mu)


@given(partitions, st.integers(0, 10))
def test_pairing_with_column(lam, s):
    assert pairing_n(lam, (1,) * s) == s * len(lam)


@given(partitions)
def test_arm_leg_transpose(lam):
    cells = cells_arm_leg(lam)
    assert len(cells) == sum(lam)
    conj = cells_arm_leg(conjugate(lam))
    assert sorted(cells) == sorted((l, a) for a, l in conj)


# --- graphs -----------------------------------------------------------------------

@st.composite
def connected_multigraph(draw, max_vertices=5, max_edges=8):
    n = draw(st.integers(1, max_vertices))
    tree = [(draw(st.integers(0, i - 1)), i) for i in range(1, n)]
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                          max_size=max_edges - len(tree)))
    return Graph(n, tree + extra)


@given(connected_multigraph())
def test_dc_equals_oracle(G):
    R = external_activity_dc(G)
    assert R == external_activity_oracle(G)
    assert all(isinstance(c, int) and c >= 0 for c in R.coeffs.values())


@given(connected_multigraph(max_vertices=6, max_edges=9))
def test_kac_reversed_is_toric(G):
    loopless = Graph(G.n, [e for e in G.edges if e[0] != e[1]])
    Q = Quiver(G.n, loopless.edges, (1,) * G.n)
    assert poincare_quiver_indivisible(Q).coeffs == poincare_toric_quiver(loopless).coeffs


# --- families -------------------------------------------------------------------

@given(st.integers(0, 14), st.integers(0, 14))
def test_grassmannian_shape(n, k):
    assume(k <= n)
    P = poincare_grassmannian(n, k)
    assert P[0] == 1 and not any(P.odd())
    assert P.is_palindromic() and is_unimodal(P.even())


# --- measures ---------------------------------------------------------------------

@given(st.lists(st.integers(0, 9), min_size=1, max_size=8), st.integers(-3, 3))
def test_factorial_moments_two_routes(coeffs, low):
    assume(any(coeffs))
    E = UniLaurent.from_dense(coeffs, low, "q")
    direct = [sum(c * asy._gen_binom(i, k) for i, c in E.coeffs.items()) for k in range(5)]
    assert asy.factorial_moments(E, 4) == direct


atoms = st.lists(st.tuples(st.fractions(min_value=-5, max_value=5, max_denominator=3),
                           st.integers(1, 5)), min_size=1, max_size=4)


@given(atoms, atoms)
def test_convolution_multiplicative(a, b):
    from math import comb
    ma, mb = asy.DiscreteMeasure(a), asy.DiscreteMeasure(b)
    Ma, Mb = asy.moments(ma, 6).raw, asy.moments(mb, 6).raw
    Mc = asy.moments(asy.convolve(ma, mb), 6).raw
    for k in range(7):
        assert Mc[k] == sum(comb(k, j) * Ma[j] * Mb[k - j] for j in range(k + 1))
