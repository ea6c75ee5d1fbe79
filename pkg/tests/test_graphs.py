from itertools import combinations
from math import comb

import pytest

from hkbetti.arith import UniLaurent
from hkbetti.graphs import (
    Graph,
    bipartite_R,
    complete_graph_R,
    complete_graph_R_series,
    connected_count,
    connected_counts,
    external_activity_dc,
    external_activity_oracle,
)


def brute_R(n, edges):
    """Independent oracle: enumerate edge subsets, keep connected spanning ones."""
    out = {}
    for r in range(len(edges) + 1):
        for sub in combinations(range(len(edges)), r):
            parent = list(range(n))

            def find(x):
                while parent[x] != x:
                    x = parent[x]
                return x

            for s in sub:
                a, b = find(edges[s][0]), find(edges[s][1])
                if a != b:
                    parent[a] = b
            if len({find(v) for v in range(n)}) == 1:
                b1 = r - n + 1
                out[b1] = out.get(b1, 0) + 1
    # sum_b count_b (q-1)^b
    R = UniLaurent({}, "q")
    for b, c in out.items():
        R = R + UniLaurent({1: 1, 0: -1}, "q") ** b * UniLaurent({0: c}, "q")
    return R


q = UniLaurent({1: 1}, "q")
one = UniLaurent({0: 1}, "q")


def test_tree_is_one():
    G = Graph(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    assert external_activity_oracle(G) == one
    assert external_activity_dc(G) == one


def test_triangle():
    assert external_activity_oracle(Graph.complete(3)) == q + 2


def test_single_loop():
    assert external_activity_oracle(Graph(1, [(0, 0)])) == q
    assert external_activity_dc(Graph(1, [(0, 0)])) == q


def test_double_edge_has_two_trees():
    # two spanning trees plus the 2-cycle: 2 + (q - 1)
    G = Graph(2, [(0, 1), (0, 1)])
    assert brute_R(2, list(G.edges)) == q + 1
    assert external_activity_dc(G) == q + 1


@pytest.mark.parametrize("G", [Graph.complete(4), Graph.complete_bipartite(2, 3), Graph.complete(5),
                               Graph(3, [(0, 1), (0, 1), (1, 2), (0, 2), (2, 2)])])
def test_dc_matches_oracles(G):
    assert external_activity_dc(G) == external_activity_oracle(G) == brute_R(G.n, list(G.edges))


def test_disconnected_rejected():
    with pytest.raises(ValueError):
        external_activity_oracle(Graph(3, [(0, 1)]))


def test_complete_graph_series():
    S = complete_graph_R_series(6)
    from math import factorial
    assert S[2] * factorial(2) == one
    assert S[3] * factorial(3) == q + 2
    for n in range(2, 7):
        assert complete_graph_R(n) == external_activity_dc(Graph.complete(n))


def test_ratfun_route_agrees():
    assert complete_graph_R_series(5, method="ratfun") == complete_graph_R_series(5)


def test_cayley_at_q_one():
    for n in range(1, 9):
        assert complete_graph_R(n)(1) == n ** (n - 2) if n > 1 else complete_graph_R(1)(1) == 1


def test_k40_degree_and_subgraph_count():
    R = complete_graph_R(40)
    assert R.degree() == 741
    assert R(1) == 40 ** 38


def test_connected_counts_small():
    assert connected_count(4, 0) == 16
    assert connected_count(3, 1) == 1
    assert connected_count(4, 1) == 15


def test_connected_count_brute_force():
    n = 4
    pairs = list(combinations(range(n), 2))
    for k in range(4):
        m = n + k - 1
        cnt = sum(1 for es in combinations(pairs, m) if brute_R(n, list(es))(1) > 0)
        assert connected_count(n, k) == cnt


def test_total_connected_graphs_against_classical_egf():
    from fractions import Fraction
    from math import factorial

    from hkbetti.series import TruncSeries, s_log
    N = 8
    L = s_log(TruncSeries({n: Fraction(2 ** comb(n, 2), factorial(n)) for n in range(N + 1)},
                          ("T",), caps=(N,)))
    table = connected_counts(N, comb(N, 2))
    for n in range(1, N + 1):
        assert sum(table[n - 1]) == L[n] * factorial(n)


def test_bipartite():
    assert bipartite_R(1, 5) == one
    assert bipartite_R(2, 2) == q + 3
    assert bipartite_R(2, 3) == external_activity_oracle(Graph.complete_bipartite(2, 3))
    assert bipartite_R(3, 3) == external_activity_dc(Graph.complete_bipartite(3, 3))


def test_json_round_trip():
    G = Graph(3, [(2, 0), (1, 1)])
    assert Graph.from_json(G.to_json()) == G
    assert G.edges == ((0, 2), (1, 1))
