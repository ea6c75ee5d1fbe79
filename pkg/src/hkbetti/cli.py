"""Command-line front end.

Exit codes: 0 success, 2 bad input, 3 internal consistency failure.
"""

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from math import comb, pi, sqrt

import mpmath

from . import asymptotics as asy
from .checks import SUITES, check_suite
from .errors import BugTrap
from .families import (
    Quiver,
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
from .fq import FqConfig, count_fiber_bruteforce, count_fiber_fourier, group_order
from .graphs import Graph

TORIC_COMPLETE_CAP = 80
HIGGS_CAP = 12


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(2, f"{self.prog}: error: {message}\n")


def _load_json(path, what):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValueError(f"--{what}: cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"--{what}: malformed JSON in {path}: {exc.msg}") from None


def _quiver(path):
    data = _load_json(path, "quiver")
    try:
        return Quiver.from_json(data)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"--quiver: missing or invalid field {exc}") from None


def _graph(path):
    data = _load_json(path, "graph")
    try:
        return Graph.from_json(data)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"--graph: missing or invalid field {exc}") from None


def _positive(name, value, lo=1, hi=None):
    if value < lo or (hi is not None and value > hi):
        bound = f"between {lo} and {hi}" if hi is not None else f">= {lo}"
        raise ValueError(f"--{name} must be {bound} (got {value})")
    return value


def read_coefficients(path):
    """Coefficients from a degree,coefficient CSV or a JSON polynomial; returns {degree: int}."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ValueError(f"--in: cannot read {path}: {exc.strerror}") from None
    if text.lstrip().startswith(("{", "[")):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"--in: malformed JSON: {exc.msg}") from None
        if isinstance(data, dict):
            data = data.get("coefficients")
        if not isinstance(data, list):
            raise ValueError("--in: JSON needs a 'coefficients' list")
        return {i: int(c) for i, c in enumerate(data) if int(c)}
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [c.strip() for c in rows[0]] != ["degree", "coefficient"]:
        raise ValueError("--in: CSV header must be 'degree,coefficient'")
    out = {}
    for r in rows[1:]:
        if not r:
            continue
        try:
            d, c = int(r[0]), int(r[1])
        except (ValueError, IndexError):
            raise ValueError(f"--in: bad CSV row {r}") from None
        if c:
            out[d] = out.get(d, 0) + c
    return out


def _poly_csv(coeffs):
    lines = ["degree,coefficient"] + [f"{d},{c}" for d, c in coeffs]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# command handlers: each returns (json_obj, csv_text or None)

def _betti(P):
    return P.to_json(), P.to_csv()


def cmd_toric_complete(a):
    return _betti(poincare_toric_complete(_positive("n", a.n, 1, TORIC_COMPLETE_CAP)))


def cmd_toric(a):
    return _betti(poincare_toric_quiver(_graph(a.graph)))


def cmd_hilbert(a):
    return _betti(poincare_hilbert(_positive("n", a.n, 0)))


def cmd_adhm(a):
    return _betti(poincare_adhm(_positive("n", a.n, 0), _positive("m", a.m, 1)))


def cmd_grassmann(a):
    if not 0 <= a.k <= a.n:
        raise ValueError(f"--k must be between 0 and --n (got k={a.k}, n={a.n})")
    return _betti(poincare_grassmannian(a.n, a.k))


def cmd_nakajima(a):
    return _betti(poincare_nakajima(_quiver(a.quiver), threads=a.threads))


def cmd_kac(a):
    Q = _quiver(a.quiver)
    A = kac_polynomial(Q, threads=a.threads)
    terms = sorted(A.coeffs.items())
    obj = {"quiver": Q.to_json(), "variable": "q", "coefficients": {str(d): str(c) for d, c in terms}}
    return obj, _poly_csv(terms)


def cmd_quiver_indivisible(a):
    return _betti(poincare_quiver_indivisible(_quiver(a.quiver), threads=a.threads))


def cmd_higgs(a):
    _positive("n", a.n, 1, HIGGS_CAP)
    _positive("g", a.g, 0)
    return _betti(poincare_higgs(a.n, a.g, reduced=not a.full, threads=a.threads))


def cmd_torus(a):
    return _betti(poincare_torus(_positive("g", a.g, 0)))


def _measure(path):
    coeffs = read_coefficients(path)
    if any(c < 0 for c in coeffs.values()):
        raise ValueError("--in: coefficients must be nonnegative")
    if not coeffs:
        raise ValueError("--in: empty polynomial")
    return coeffs, asy.DiscreteMeasure(coeffs.items())


def cmd_moments(a):
    coeffs, mu = _measure(a.input)
    K = _positive("k", a.k, 0)
    rep = asy.moments(mu, K, standardize=a.standardize)
    obj = {"input": os.path.basename(a.input), **rep.to_json()}
    lines = ["k,raw,factorial" + (",standardized" if rep.standardized else "")]
    for k in range(K + 1):
        row = f"{k},{rep.raw[k]},{rep.factorial[k]}"
        if rep.standardized:
            row += f",{rep.standardized[k]!r}"
        lines.append(row)
    return obj, "\n".join(lines) + "\n"


def _standardize_raw(raw):
    """Standardized moments from raw moments (floats) of a probability law."""
    mean = raw[1]
    central = [sum(comb(k, i) * raw[i] * (-mean) ** (k - i) for i in range(k + 1))
               for k in range(len(raw))]
    sd = central[2] ** 0.5
    return [c / sd ** k for k, c in enumerate(central)]


def _gumbel_raw(K):
    kappa = [0.0, float(mpmath.euler)] + [float(mpmath.factorial(n - 1) * mpmath.zeta(n))
                                          for n in range(2, K + 1)]
    raw = [1.0] + [0.0] * K
    for n in range(1, K + 1):
        raw[n] = sum(comb(n - 1, i) * kappa[i + 1] * raw[n - 1 - i] for i in range(n))
    return raw


def reference_moments(dist, K):
    if dist == "airy":
        return [float(Fraction(m["rational"])) * sqrt(2 * pi) ** m["sqrt2pi_power"]
                for m in asy.airy_moments(K)]
    if dist == "gumbel":
        return _gumbel_raw(K)
    if dist.startswith("bspline:"):
        try:
            r = int(dist.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"--dist: bad B-spline order in {dist!r}") from None
        return [float(x) for x in asy.bspline_moments(_positive("dist order", r, 1), K)]
    raise ValueError(f"--dist must be airy, gumbel or bspline:R (got {dist!r})")


def cmd_fit(a):
    K = _positive("k", a.k, 2)
    coeffs, mu = _measure(a.input)
    if a.reflect:
        mu = mu.rescale(-1)
    rep = asy.moments(mu, K, standardize=True)
    if not rep.standardized:
        raise ValueError("--in: the measure has zero variance")
    ref = _standardize_raw(reference_moments(a.dist, K))
    err = [abs(x - y) for x, y in zip(rep.standardized, ref)]
    obj = {"check": "fit", "params": {"dist": a.dist, "K": K, "reflect": a.reflect, "input": os.path.basename(a.input)},
           "values": {"standardized": rep.standardized, "reference": ref, "abs_error": err},
           "pass": None, "tolerance": None}
    lines = ["k,standardized,reference,abs_error"]
    lines += [f"{k},{x!r},{y!r},{e!r}" for k, (x, y, e) in enumerate(zip(rep.standardized, ref, err))]
    return obj, "\n".join(lines) + "\n"


def cmd_airy_constants(a):
    K = _positive("k", a.k, 0)
    M = asy.airy_moments(K)
    obj = {"wright_constants": [str(c) for c in asy.wright_constants(max(K, 1))], "airy_moments": M}
    lines = ["k,rational,sqrt2pi_power,decimal"]
    lines += [f"{m['k']},{m['rational']},{m['sqrt2pi_power']},{m['decimal']}" for m in M]
    return obj, "\n".join(lines) + "\n"


def cmd_fqcount(a):
    Q = _quiver(a.quiver)
    try:
        xi = tuple(int(s) for s in a.xi.split(","))
    except ValueError:
        raise ValueError(f"--xi must be comma-separated integers (got {a.xi!r})") from None
    cfg = FqConfig(a.q, Q, xi)
    count = (count_fiber_fourier if a.method == "fourier" else count_fiber_bruteforce)(cfg)
    G = group_order(cfg)
    obj = {"quiver": Q.to_json(), "q": a.q, "xi": list(cfg.xi), "method": a.method,
           "fiber_count": str(count), "group_order": str(G),
           "quotient_count": str(count // G) if count % G == 0 else None}
    return obj, None


def cmd_saddle_check(a):
    rep = asy.tree_saddle_identities(_positive("order", a.order, 2, 80), a.k)
    if not rep["pass"]:
        raise BugTrap("saddle identities failed: " + json.dumps(rep["values"]["checks"]))
    return rep, None


def cmd_check(a):
    return check_suite(a.suite, threads=a.threads, quick=a.quick), None


# ---------------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="hkbetti", description="Betti numbers of hyperkahler families and their limit laws.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.set_defaults(fn=fn)
        return s

    add("toric-complete", cmd_toric_complete, "toric quiver variety of K_n").add_argument("--n", type=int, required=True)
    add("toric", cmd_toric, "toric quiver variety of a graph").add_argument("--graph", required=True)
    add("hilbert", cmd_hilbert, "Hilbert scheme of n points on C^2").add_argument("--n", type=int, required=True)
    s = add("adhm", cmd_adhm, "ADHM space of rank m, charge n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s = add("grassmann", cmd_grassmann, "cotangent bundle of Gr(k, n)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    add("nakajima", cmd_nakajima, "framed Nakajima quiver variety").add_argument("--quiver", required=True)
    add("kac", cmd_kac, "Kac polynomial A_Q(v; q)").add_argument("--quiver", required=True)
    add("quiver-indivisible", cmd_quiver_indivisible,
        "quiver variety at an indivisible dimension vector").add_argument("--quiver", required=True)
    s = add("higgs", cmd_higgs, "Higgs bundle moduli, rank n, genus g")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--full", action="store_true", help="keep the (1+t)^{2g} Jacobian factor")
    add("torus", cmd_torus, "cotangent bundle of a g-dimensional torus").add_argument("--g", type=int, required=True)
    s = add("moments", cmd_moments, "raw and factorial moments of a coefficient sequence")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--k", type=int, default=6)
    s.add_argument("--standardize", action="store_true")
    s = add("fit", cmd_fit, "compare standardized moments against a limit law")
    s.add_argument("--dist", required=True)
    s.add_argument("--reflect", action="store_true",
                   help="negate degrees (t-degree i corresponds to q-degree -i/2)")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--k", type=int, default=6)
    add("airy-constants", cmd_airy_constants, "Wright constants and Airy moments").add_argument(
        "--k", type=int, required=True)
    s = add("fqcount", cmd_fqcount, "moment-map fibre count over F_q")
    s.add_argument("--quiver", required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--xi", required=True)
    s.add_argument("--method", choices=("fourier", "bruteforce"), default="fourier")
    s = add("saddle-check", cmd_saddle_check, "tree-function series identities")
    s.add_argument("--order", type=int, default=40)
    s.add_argument("--k", type=int, default=4)
    s = add("check", cmd_check, "run a verification suite")
    s.add_argument("--suite", choices=SUITES, required=True)
    s.add_argument("--quick", action="store_true")
    return p


def run(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _positive("threads", args.threads, 1)
        obj, csv_text = args.fn(args)
        if args.format == "csv":
            if csv_text is None:
                raise ValueError(f"--format csv is not available for {args.command}")
            text = csv_text
        else:
            text = json.dumps(obj, indent=1) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            stdout.write(text)
    except BugTrap as exc:
        print(f"hkbetti: internal check failed: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"hkbetti: error: {exc}", file=sys.stderr)
        return 2
    return 0


def main():
    sys.exit(run())
