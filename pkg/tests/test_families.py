from math import comb

import pytest

from hkbetti.arith import UniLaurent
from hkbetti.errors import BugTrap
from hkbetti.families import (
    BettiPoly,
    Quiver,
    higgs_H,
    hilbert_by_partitions,
    kac_polynomial,
    poincare_adhm,
    poincare_grassmannian,
    poincare_higgs,
    poincare_hilbert,
    poincare_nakajima,
    poincare_quiver_indivisible,
    poincare_toric_complete,
    poincare_toric_quiver,
    poincare_torus,
    q_binomial,
)
from hkbetti.graphs import Graph
from hkbetti.partitions import enum_partitions

q = lambda e: UniLaurent({e: 1}, "q")


# --- toric -----------------------------------------------------------------

def test_toric_tree_is_a_point():
    assert poincare_toric_quiver(Graph(4, [(0, 1), (1, 2), (1, 3)])).coeffs == [1]


def test_toric_triangle():
    assert poincare_toric_quiver(Graph.complete(3)).coeffs == [1, 0, 2]


def test_toric_complete_matches_general_route():
    for n in range(2, 6):
        assert poincare_toric_complete(n) == poincare_toric_quiver(Graph.complete(n))


def test_toric_disconnected():
    with pytest.raises(ValueError):
        poincare_toric_quiver(Graph(3, [(0, 1)]))


# --- Hilbert / ADHM ----------------------------------------------------------

def test_hilbert_small():
    assert poincare_hilbert(1).coeffs == [1]
    assert poincare_hilbert(3).coeffs == [1, 0, 1, 0, 1]


def test_hilbert_by_length_count():
    for n in range(1, 16):
        direct = [0] * (2 * n + 1)
        for lam in enum_partitions(n):
            direct[2 * (n - len(lam))] += 1
        assert hilbert_by_partitions(n) == direct
        assert poincare_hilbert(n).coeffs == direct[:poincare_hilbert(n).degree + 1]


def test_adhm_rank_one_is_hilbert():
    assert poincare_adhm(1, 1).coeffs == [1]
    for n in range(21):
        assert poincare_adhm(n, 1) == poincare_hilbert(n)


def test_adhm_empty_for_rank_zero():
    with pytest.raises(ValueError):
        poincare_adhm(3, 0)


# --- Grassmannian / torus ------------------------------------------------------

def test_q_binomial_by_pascal():
    for n in range(9):
        for k in range(n + 1):
            # [n k] = [n-1 k-1] + q^k [n-1 k]
            if 0 < k < n:
                a, b = q_binomial(n - 1, k - 1), q_binomial(n - 1, k)
                rhs = [0] * max(len(a), len(b) + k)
                for i, c in enumerate(a):
                    rhs[i] += c
                for i, c in enumerate(b):
                    rhs[i + k] += c
                assert q_binomial(n, k) == rhs


def test_grassmannian():
    assert poincare_grassmannian(2, 1).coeffs == [1, 0, 1]
    assert poincare_grassmannian(7, 0).coeffs == [1]
    P = poincare_grassmannian(12, 5)
    assert P.is_palindromic() and P.degree == 2 * 5 * 7
    with pytest.raises(ValueError):
        poincare_grassmannian(2, 3)


def test_torus():
    assert poincare_torus(0).coeffs == [1]
    assert poincare_torus(1).coeffs == [1, 2, 1]
    assert poincare_torus(100)[100] == comb(200, 100)


# --- Kac polynomials -----------------------------------------------------------

@pytest.mark.parametrize("method", ["modular", "exact"])
def test_kac_small(method):
    assert kac_polynomial(Quiver(1, [], (1,)), method=method) == q(0)
    assert kac_polynomial(Quiver(1, [], (2,)), method=method).is_zero()
    assert kac_polynomial(Quiver.loops(1, (1,)), method=method) == q(1)
    assert kac_polynomial(Quiver(2, [(0, 1)], (1, 1)), method=method) == q(0)
    assert kac_polynomial(Quiver(2, [(0, 1), (0, 1)], (1, 1)), method=method) == q(0) + q(1)


def test_kac_jordan_is_q_in_every_dimension():
    for n in range(1, 5):
        assert kac_polynomial(Quiver.loops(1, (n,))) == q(1)


def test_kac_two_loops():
    assert kac_polynomial(Quiver.loops(2, (2,))) == q(3) + q(5)
    assert kac_polynomial(Quiver.loops(2, (3,)), method="exact") == \
        q(4) + q(5) + q(6) + q(7) + q(8) + q(10)


def test_kac_rejects_zero_vector():
    with pytest.raises(ValueError):
        kac_polynomial(Quiver(2, [(0, 1)], (0, 0)))


def test_quiver_indivisible_jordan():
    assert poincare_quiver_indivisible(Quiver.loops(1, (1,))).coeffs == [1]


def test_quiver_indivisible_rejects_divisible():
    with pytest.raises(ValueError):
        poincare_quiver_indivisible(Quiver.loops(2, (2,)))


def test_quiver_dimension_8328():
    Q = Quiver(2, [(0, 0)] * 10 + [(0, 1)], (15, 7))
    assert 2 * 2 * (1 - Q.euler_form()) == 8328


# --- Nakajima ---------------------------------------------------------------

@pytest.mark.parametrize("method", ["modular", "exact"])
def test_nakajima_tp1(method):
    assert poincare_nakajima(Quiver(1, [], (1,), (2,)), method=method).coeffs == [1, 0, 1]


def test_nakajima_jordan_is_hilbert():
    for n in range(1, 11):
        assert poincare_nakajima(Quiver.loops(1, (n,), (1,))) == poincare_hilbert(n)


def test_nakajima_routes_agree():
    for Q in [Quiver.loops(1, (3,), (2,)), Quiver(2, [(0, 1)], (1, 1), (1, 1)),
              Quiver(1, [], (2,), (4,))]:
        assert poincare_nakajima(Q, method="exact") == poincare_nakajima(Q, method="modular")


def test_nakajima_degree_bound_and_parity():
    Q = Quiver(2, [(0, 1)], (1, 2), (2, 2))
    P = poincare_nakajima(Q)
    assert P.degree <= Q.nakajima_dim() and not any(P.odd())


def test_nakajima_empty():
    with pytest.raises(ValueError):
        poincare_nakajima(Quiver(1, [], (3,), (1,)))


# --- Higgs -----------------------------------------------------------------

def test_higgs_routes_agree():
    for n, g in [(1, 2), (2, 1), (2, 2)]:
        assert higgs_H(n, g) == higgs_H(n, g, method="exact")


def test_higgs_symmetric():
    for n, g in [(2, 2), (3, 2), (4, 1), (5, 2)]:
        H = higgs_H(n, g)
        assert H == H.transpose()


def test_higgs_rank_one_reduced_is_point():
    for g in range(4):
        assert poincare_higgs(1, g).coeffs == [1]
        assert poincare_higgs(1, g, reduced=False) == poincare_torus(g)


def test_higgs_rank_two_genus_two():
    P = poincare_higgs(2, 2)
    assert P.coeffs == [1, 0, 1, 4, 2, 4, 2]
    assert P[1] == 0 and P[2] == 1


def test_higgs_full_contains_jacobian_factor():
    full = poincare_higgs(2, 2, reduced=False)
    red = poincare_higgs(2, 2)
    prod = [0] * (len(red.coeffs) + 4)
    for i, a in enumerate(red.coeffs):
        for j in range(5):
            prod[i + j] += a * comb(4, j)
    assert full.coeffs == prod[:full.degree + 1]


# --- BettiPoly ---------------------------------------------------------------

def test_bettipoly_checks():
    with pytest.raises(BugTrap):
        BettiPoly([1, -1], "x")
    with pytest.raises(BugTrap):
        BettiPoly([2], "x")


def test_bettipoly_json_round_trip():
    P = poincare_grassmannian(6, 3)
    data = P.to_json()
    assert all(isinstance(c, str) for c in data["coefficients"])
    assert BettiPoly.from_json(data) == P


def test_csv_skips_zero_rows():
    assert poincare_hilbert(3).to_csv() == "degree,coefficient\n0,1\n2,1\n4,1\n"


def test_quiver_json():
    Q = Quiver.from_json({"vertices": 2, "edges": [[0, 0], [0, 1]], "v": [1, 2], "w": [0, 1]})
    assert Quiver.from_json(Q.to_json()).to_json() == Q.to_json()
    with pytest.raises(ValueError):
        Quiver(2, [(0, 5)])
