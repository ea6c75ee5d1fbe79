"""Verification suites: named bundles of checks with machine-readable results."""

import math
from fractions import Fraction

from . import asymptotics as asy
from .arith import UniLaurent
from .families import (
    Quiver,
    higgs_H,
    kac_polynomial,
    poincare_adhm,
    poincare_grassmannian,
    poincare_higgs,
    poincare_hilbert,
    poincare_nakajima,
    poincare_quiver_indivisible,
    poincare_toric_complete,
    poincare_toric_quiver,
)
from .fq import FqConfig, check_katz, count_fiber_bruteforce, count_fiber_fourier
from .graphs import Graph
from .series import TruncSeries, pleth_exp, pleth_log

SUITES = ("cross-formulas", "paper-tables", "fq-oracle", "saddle", "distributions")

WRIGHT_TABLE = [Fraction(5, 24), Fraction(5, 16), Fraction(1105, 1152), Fraction(565, 128),
                Fraction(82825, 3072)]
BETA_TABLE = {
    1: [1, 0, 0, 0, 0, 0],
    2: [1, 1, 1, 1, 1, 1],
    3: [3, 12, 39, 120, 363, 1092],
    4: [16, 156, 1120, 7260, 45136, 275436],
    5: [125, 2360, 30925, 353500, 3795225, 39474960],
}


def _entry(name, ok, **values):
    return {"check": name, "pass": bool(ok), "values": values}


def _wrap(name, entries):
    return {"suite": name, "pass": all(e["pass"] for e in entries), "entries": entries}


# ---------------------------------------------------------------------------

def small_graphs():
    """A fixed sample of connected graphs on at most 6 vertices, multi-edges included."""
    out = [Graph(2, [(0, 1)]), Graph(2, [(0, 1)] * 3), Graph(3, [(0, 1), (1, 2), (0, 2), (0, 1)])]
    for n in range(3, 7):
        out.append(Graph.complete(n))
        out.append(Graph(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]))
    out.append(Graph.complete_bipartite(2, 3))
    out.append(Graph.complete_bipartite(3, 3))
    out.append(Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 2), (1, 3), (2, 4)]))
    return out


def graph_quiver(G):
    return Quiver(G.n, [(i, j) if i < j else (j, i) for i, j in G.edges], (1,) * G.n)


def cross_formulas(threads=1, quick=False):
    entries = []
    wmax = 6 if quick else 8
    for w in range(1, wmax + 1):
        for v in range(1, min(4, w) + 1):
            P = poincare_nakajima(Quiver(1, [], (v,), (w,)), threads=threads)
            G = poincare_grassmannian(w, v)
            entries.append(_entry(f"nakajima-A1(v={v},w={w})=grassmannian", P.coeffs == G.coeffs))
    nmax = 5 if quick else 8
    for n in range(1, nmax + 1):
        for m in range(1, 4):
            P = poincare_nakajima(Quiver.loops(1, (n,), (m,)), threads=threads)
            entries.append(_entry(f"nakajima-jordan(n={n},m={m})=adhm",
                                  P.coeffs == poincare_adhm(n, m).coeffs))
    for G in small_graphs():
        a = poincare_quiver_indivisible(graph_quiver(G), threads=threads).coeffs
        b = poincare_toric_quiver(G).coeffs
        entries.append(_entry(f"kac-reversed=toric({G.n} vertices, {len(G.edges)} edges)", a == b))
    gmax_pairs = [(n, g) for g in (0, 1, 2) for n in range(1, 5) if not (g == 2 and n > (3 if quick else 4))]
    for n, g in gmax_pairs:
        H = higgs_H(n, g, threads=threads)
        h0 = H.specialize_first(0)
        lhs = {}
        ok = True
        for j, c in h0.coeffs.items():
            if j % 2:
                ok = False
            lhs[j // 2] = c
        A = kac_polynomial(Quiver.loops(g, (n,)), threads=threads)
        entries.append(_entry(f"higgs(n={n},g={g})(0,sqrt q)=kac", ok and UniLaurent(lhs, "q") == A))
    for seed in range(5):
        coeffs = {(k,): Fraction((seed * 7 + 3 * k * k + 1) % 11 - 5, k % 3 + 1) for k in range(1, 9)}
        f = TruncSeries(coeffs, ("T",), caps=(8,))
        entries.append(_entry(f"pleth_log(pleth_exp(f))=f[{seed}]", pleth_log(pleth_exp(f)) == f))
    return _wrap("cross-formulas", entries)


def paper_tables(threads=1, quick=False):
    entries = [_entry("wright-constants", asy.wright_constants(5) == WRIGHT_TABLE,
                      c=[str(c) for c in asy.wright_constants(5)])]
    M = asy.airy_moments(2)
    m1 = float(M[1]["decimal"])
    entries.append(_entry("airy-M1", abs(m1 - math.sqrt(2 * math.pi) / 4) < 1e-9
                          and M[1]["rational"] == "1/4" and M[1]["sqrt2pi_power"] == 1,
                          M1=M[1]["decimal"]))
    entries.append(_entry("airy-M2", M[2]["rational"] == "5/12" and M[2]["sqrt2pi_power"] == 0))
    for n, row in BETA_TABLE.items():
        got = [int(x) for x in asy.bipartite_alpha_beta(n, 5)["values"]["beta"]]
        entries.append(_entry(f"beta-row-{n}", got == row, beta=got))
    if not quick:
        H = higgs_H(8, 2, threads=threads)
        P = poincare_higgs(8, 2, H=H)
        entries.append(_entry("higgs-8-2-monomials", H.n_terms() == 11786, monomials=H.n_terms(),
                              expected=11786))
        entries.append(_entry("higgs-8-2-top", P.degree == 126 and P[126] == 12300,
                              degree=P.degree, top=str(P[P.degree])))
        mx = P.argmax()
        entries.append(_entry("higgs-8-2-max", mx == 106 and abs(P[mx] / 1.7e10 - 1) <= 0.1,
                              argmax=mx, value=str(P[mx])))
    return _wrap("paper-tables", entries)


def fq_corpus():
    """(quiver, xi, q) configurations small enough for exhaustive enumeration."""
    base = [
        (Quiver(1, [], (1,), (1,)), (1,)),
        (Quiver(1, [], (1,), (2,)), (1,)),
        (Quiver(1, [], (1,), (3,)), (1,)),
        (Quiver(1, [], (1,), (2,)), (0,)),
        (Quiver(1, [], (2,), (2,)), (1,)),
        (Quiver.loops(1, (1,), (1,)), (1,)),
        (Quiver.loops(1, (1,), (0,)), (0,)),
        (Quiver(2, [(0, 1)], (1, 1), (1, 0)), (1, 1)),
        (Quiver(2, [(0, 1)], (1, 0), (1, 0)), (1, 0)),
        (Quiver(2, [(0, 1)], (1, 1), (0, 0)), (0, 0)),
    ]
    out = []
    for Q, xi in base:
        for q in (2, 3):
            cfg = FqConfig(q, Q, xi)
            if q ** (2 * cfg.dim_V()) <= 10 ** 6:
                out.append(cfg)
    return out


def fq_oracle(threads=1, quick=False):
    entries = []
    for cfg in fq_corpus():
        a = count_fiber_bruteforce(cfg)
        b = count_fiber_fourier(cfg)
        entries.append(_entry(f"fourier=bruteforce({cfg.quiver.to_json()}, xi={list(cfg.xi)}, q={cfg.q})",
                              a == b, bruteforce=a, fourier=b))
    tp1 = Quiver(1, [], (1,), (2,))
    rep = check_katz(tp1, (1,), poincare_grassmannian(2, 1))
    entries.append(_entry("katz-T*P1", rep["pass"], **rep["values"]))
    point = Quiver(1, [], (1,), (1,))
    rep = check_katz(point, (1,), poincare_grassmannian(1, 1))
    entries.append(_entry("katz-point", rep["pass"], **rep["values"]))
    return _wrap("fq-oracle", entries)


def saddle(threads=1, quick=False):
    rep = asy.tree_saddle_identities(40, 4)
    return _wrap("saddle", [_entry(k, v) for k, v in rep["values"]["checks"].items()])


def family_k(P):
    """Core dimension used for the weak Lefschetz range."""
    return P.core_dim


def distributions(threads=1, quick=False):
    entries = []
    g = asy.grassmann_limit_check(3, 120, 4)
    entries.append(_entry("grassmann-r3-n120", g["pass"], errors=g["values"]["standardized_rel_err"]))
    ns = (250, 500, 1000) if quick else (250, 500, 1000, 2000)
    gu = asy.gumbel_check(ns)
    entries.append(_entry("gumbel-decreasing", gu["pass"],
                          distances=[r["sup_distance"] for r in gu["values"]]))
    wn = (50, 100) if quick else (50, 100, 200)
    ratios = [asy.wright_ratio_check(n, 1)["values"]["ratios"][1] for n in wn]
    entries.append(_entry("wright-ratio-monotone", all(a < b for a, b in zip(ratios, ratios[1:])),
                          ratios=ratios))
    if not quick:
        entries.append(_entry("wright-ratio-n200-within-10pct", abs(ratios[-1] - 1) <= 0.1,
                              ratio=ratios[-1]))
    fams = [poincare_grassmannian(10, 4), poincare_hilbert(50), poincare_adhm(10, 2),
            poincare_toric_complete(8), poincare_higgs(4, 2, threads=threads)]
    for P in fams:
        w = asy.weak_hl_check(P, family_k(P))
        u = asy.unimodality_check(P)
        entries.append(_entry(f"weak-lefschetz-{P.family}{P.params}", w["pass"], **w["values"]))
        entries.append(_entry(f"even-unimodal-{P.family}{P.params}", u["values"]["even_unimodal"]))
    return _wrap("distributions", entries)


_RUNNERS = {"cross-formulas": cross_formulas, "paper-tables": paper_tables, "fq-oracle": fq_oracle,
            "saddle": saddle, "distributions": distributions}


def check_suite(name, threads=1, quick=False):
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return _RUNNERS[name](threads=threads, quick=quick)
