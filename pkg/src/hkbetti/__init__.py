"""Exact Betti numbers of hyperkahler families and the limit laws of their distributions."""

from .arith import (
                       BiPoly,
                       UniLaurent,
                       UniRatFun,
                       big_binomial,
                       poly_add,
                       poly_mul,
                       ratfun_reduce,
)
from .errors import BugTrap
from .families import (
                       BettiPoly,
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
                       poincare_torus,
)
from .graphs import (
                       Graph,
                       bipartite_R,
                       complete_graph_R,
                       complete_graph_R_series,
                       connected_count,
                       external_activity_dc,
                       external_activity_oracle,
)
from .kernels import BACKEND
from .partitions import (
                       cells_arm_leg,
                       conjugate,
                       enum_partitions,
                       length,
                       multiplicity,
                       pairing_n,
)
from .series import (
                       TruncSeries,
                       adams,
                       moebius,
                       pleth_exp,
                       pleth_log,
                       s_add,
                       s_exp,
                       s_inv,
                       s_log,
                       s_mul,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BettiPoly", "BiPoly", "BugTrap", "Graph", "Quiver", "TruncSeries", "UniLaurent",
    "UniRatFun", "adams", "big_binomial", "bipartite_R", "cells_arm_leg", "complete_graph_R",
    "complete_graph_R_series", "conjugate", "connected_count", "enum_partitions",
    "external_activity_dc", "external_activity_oracle", "higgs_H", "kac_polynomial", "length",
    "moebius", "multiplicity", "pairing_n", "pleth_exp", "pleth_log", "poincare_adhm",
    "poincare_grassmannian", "poincare_higgs", "poincare_hilbert", "poincare_nakajima",
    "poincare_quiver_indivisible", "poincare_toric_complete", "poincare_toric_quiver",
    "poincare_torus", "poly_add", "poly_mul", "ratfun_reduce", "s_add", "s_exp", "s_inv", "s_log",
    "s_mul",
]
