"""Verification sweeps over (p, q) ranges.

Every check yields a record {name, status, witness}; a failing check
carries the offending value.  Per-pair work is independent and may run
on a process pool (BPQ_WORKERS); results are sorted before reporting.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import gcd

from . import atf, chains, compactify, embeddings, hj, local_models, regulation

GROUPS = ("hj", "chains", "compactify", "regulation", "embeddings", "atf", "local")
MAX_P_GUARD = 500


def check(name: str, ok: bool, witness=None) -> dict:
    return {"name": name, "status": "pass" if ok else "fail", "witness": None if ok else _plain(witness)}


def _plain(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_plain(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)


def _guard(name, fn):
    """Run fn() -> (ok, witness); an exception is a failure with its message."""
    try:
        ok, witness = fn()
    except Exception as exc:  # a raised invariant is a failed check
        return check(name, False, f"{type(exc).__name__}: {exc}")
    return check(name, ok, witness)


def hj_pair_checks(p, q):
    N = p * q - 1
    out = [
        _guard("wahl splice", lambda: (hj.wahl_chain(p, q) is not None, None)),
        _guard("wahl dual splice", lambda: (hj.wahl_dual_chain(p, q) is not None, None)),
        _guard("zero chain contracts", lambda: (hj.zero_cf_check(hj.zero_chain(p, q)), hj.zero_chain(p, q).coeffs)),
    ]

    def matrix():
        M = hj.cf_matrix_product(hj.hj_expand(p, q))
        inv = hj.mod_inverse(q, p)
        want = ((p, -inv), (q, (1 - q * inv) // p))
        return M == want and (1 - q * inv) % p == 0, M

    def wahl_value():
        w = hj.wahl_chain(p, q).wahl
        return hj.hj_evaluate(w) == Fraction(p * p, N), w.coeffs

    out += [_guard("matrix identity", matrix), _guard("wahl evaluates to p^2/(pq-1)", wahl_value)]
    return out


def chains_pair_checks(p, q):
    w = hj.wahl_chain(p, q).wahl
    acc = chains.accompanying(w, p * p, p * q - 1)
    ks = chains.discrepancies(acc)
    return [
        _guard("wahl accompanying invariants", lambda: (not chains.check_accompanying(acc), chains.check_accompanying(acc))),
        _guard("wahl closed-form inverse", lambda: (chains.closed_form_matches_elimination(acc), w.coeffs)),
        _guard("wahl discrepancies in (-1,0]", lambda: (chains.wahl_discrepancies_ok(ks), ks)),
    ]


def compactify_pair_checks(p, q):
    def schur():
        v = compactify.schur_top_left(p, q)
        return v == Fraction(p * q - 1, p * p), v

    def audit():
        a = compactify.sign_audit(p, q)
        return a["corrected_matches"], a

    def blowdown():
        t = compactify.blowdown_to_hirzebruch(p, q)
        return True, t.final

    return [
        _guard("divisor construction", lambda: (compactify.compactifying_divisor(p, q) is not None, None)),
        _guard("schur top-left", schur),
        _guard("corrected block inverse", audit),
        _guard("blow-down to Hirzebruch", blowdown),
    ]


def regulation_pair_checks(p, q):
    def report():
        return regulation.verification_report(p, q)

    rep = None

    def get():
        nonlocal rep
        if rep is None:
            rep = report()
        return rep

    m = len(hj.wahl_chain(p, q).wahl)

    def ruling():
        r = get()["ruling"]
        n = compactify.compactifying_divisor(p, q).n
        return r["class_ok"] and (r["r"], r["s"]) == (m, n), r

    return [
        _guard("adjunction at (e1,e1)", lambda: (get()["adjunction_ok"] and get()["profile_ok"], get())),
        _guard("unique wahl intersection", lambda: (get()["unique_intersection_ok"], (p, q))),
        _guard("broken ruling at (m,n)", ruling),
        _guard("shared accompanying number", lambda: (get()["shared_accompanying_ok"], (p, q))),
        _guard("two-ruling exclusion", lambda: (get()["two_ruling_exclusion_ok"], (p, q))),
        _guard("m+n-1 contractions to F_d0",
               lambda: (get()["contractions"] == m + compactify.compactifying_divisor(p, q).n - 1,
                        get()["contractions"])),
    ]


def embeddings_pair_checks(p, q):
    def coeff():
        a, b = embeddings.cm_coefficient(p, q), embeddings.cm_coefficient_from_matrix(p, q)
        return a == b, (a, b)

    def cancel():
        t = Fraction(3, 7)
        v = embeddings.cm_area(p, q, t) * abs(embeddings.cm_coefficient(p, q))
        return v == t, v

    def classify():
        res = embeddings.classify_pinwheels(p, q).admissible
        return res == {(p, q), (p, p - q)}, sorted(res)

    return [_guard("c_m coefficient", coeff), _guard("area cancellation", cancel),
            _guard("pinwheel classification", classify)]


def atf_pair_checks(p, q):
    def wedge():
        c = atf.corner_type((0, 1), (p * p, p * q - 1))
        return (c.n, c.a) == (p * p, p * q - 1) or c.equivalent(atf.CornerType(p * p, p * q - 1)), c

    def shear():
        M = atf.monodromy_shear(p, q)
        d = M[0][0] * M[1][1] - M[0][1] * M[1][0]
        fixed = (M[0][0] * p + M[0][1] * q, M[1][0] * p + M[1][1] * q) == (p, q)
        return d == 1 and M[0][0] + M[1][1] == 2 and fixed, M

    def whitney():
        return atf.whitney_embedding_matrix(p, q) is not None, None

    def diagram():
        got = atf.divisor_profile_from_diagram(atf.compactification_diagram(p, q))
        want = compactify.compactifying_divisor(p, q).profile
        return got == want, (got, want)

    return [_guard("wahl corner type", wedge), _guard("monodromy shear", shear),
            _guard("whitney matrix", whitney), _guard("diagram divisor profile", diagram)]


PAIR_GROUPS = {
    "hj": hj_pair_checks,
    "chains": chains_pair_checks,
    "compactify": compactify_pair_checks,
    "regulation": regulation_pair_checks,
    "embeddings": embeddings_pair_checks,
    "atf": atf_pair_checks,
}


def pair_checks(p, q, groups=GROUPS):
    out = []
    for g in groups:
        if g in PAIR_GROUPS:
            for c in PAIR_GROUPS[g](p, q):
                out.append(dict(c, group=g, pair=[p, q]))
    return out


def chain_inverse_sweep(max_n: int) -> dict:
    """Closed-form inverse against elimination for every n/a with n <= max_n."""
    bad = []
    count = 0
    for n in range(2, max_n + 1):
        for a in range(1, n):
            if gcd(n, a) == 1:
                count += 1
                if not chains.closed_form_matches_elimination(chains.accompanying_of(n, a)):
                    bad.append((n, a))
    return dict(check(f"closed-form inverse, {count} chains with n <= {max_n}", not bad, bad[:5]), group="chains")


def local_checks() -> list:
    pts = local_models.random_points(100)
    out = []
    for p, q, res in ((2, 1, 32), (5, 2, 64)):
        r = local_models.lagrangian_check(p, q, res)
        out.append(check(f"lagrangian residual ({p},{q}) {res}x{res}", r <= local_models.LAGRANGIAN_TOL, r))
    order = local_models.convergence_order(5, 2)
    out.append(check("residual is O(h^2)", 1.8 < order < 2.2, order))
    for name, eta in (("eta = 0", lambda t: 0.0 * t), ("eta = sin", math.sin), ("eta = 2 tau", lambda t: 2.0 * t)):
        d = local_models.straightening_check(eta, pts)
        out.append(check(f"straightening symplectic, {name}", d <= local_models.JACOBIAN_TOL, d))
    w, move = local_models.quotient_action_residual(3, 1, 1000)
    out.append(check("quotient action (3,1)", w <= local_models.ACTION_TOL and move > 0, (w, move)))
    return [dict(c, group="local") for c in out]


def _pair_task(args):
    p, q, groups = args
    return pair_checks(p, q, groups)


def workers() -> int:
    try:
        return max(1, int(os.environ.get("BPQ_WORKERS", "1")))
    except ValueError:
        return 1


def run_verify(max_p: int = 50, only=None, pair=None) -> dict:
    """All checks for the selected groups; returns the report body."""
    if max_p > MAX_P_GUARD:
        raise ValueError(f"--max-p is capped at {MAX_P_GUARD}")
    groups = tuple(only) if only else GROUPS
    unknown = [g for g in groups if g not in GROUPS]
    if unknown:
        raise ValueError(f"unknown groups {unknown}")
    pairs = [tuple(pair)] if pair else list(hj.coprime_pairs(max_p))
    warnings = []
    if not pairs:
        warnings.append("empty (p,q) range: nothing to check")
    tasks = [(p, q, groups) for p, q in pairs]
    nw = workers()
    if nw > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(nw) as ex:
            results = list(ex.map(_pair_task, tasks, chunksize=8))
    else:
        results = [_pair_task(t) for t in tasks]
    checks = [c for r in results for c in r]
    if "chains" in groups and pair is None and pairs:
        checks.append(chain_inverse_sweep(max_p))
    if "local" in groups and pair is None:
        checks += local_checks()
    extras = {}
    if pair and "regulation" in groups:
        p, q = pair
        extras["contraction_trace"] = compactify_trace_json(p, q)
    failed = [c for c in checks if c["status"] == "fail"]
    return {
        "pairs": len(pairs),
        "checks_run": len(checks),
        "failed": len(failed),
        "warnings": warnings,
        "checks": checks,
        **extras,
    }


def compactify_trace_json(p, q):
    return regulation.contraction_simulator(p, q).to_json()
