"""Acceptance criteria 1-9, one pass/fail line each with its wall time."""
import random
import time
from fractions import Fraction
from math import gcd
from pathlib import Path

import pytest

from bpqtools import atf, chains, compactify, embeddings, hj, local_models, regulation
from conftest import ACCEPTANCE_LINES

GOLDEN = Path(__file__).parent / "golden"
F = Fraction


def record(number, title, budget, fn):
    start = time.perf_counter()
    error = None
    try:
        fn()
    except AssertionError as exc:
        error = exc
    elapsed = time.perf_counter() - start
    in_time = elapsed < budget
    status = "PASS" if error is None and in_time else "FAIL"
    detail = "" if error is None else f"  [{error}]"
    if error is None and not in_time:
        detail = f"  [over the {budget:g}s budget]"
    line = f"criterion {number}: {status}  {title}  ({elapsed:.2f}s / {budget:g}s){detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    if error is not None:
        raise error
    assert in_time, line


def test_criterion_1_worked_examples():
    def body():
        assert hj.hj_expand(25, 9).coeffs == (3, 5, 2)
        assert hj.hj_expand(9, 4).coeffs == (3, 2, 2, 2)
        assert compactify.compute_d0(5, 2) == 2
        for n in range(2, 51):
            assert hj.wahl_chain(n, 1).wahl.coeffs == (n + 2,) + (2,) * (n - 2), n
            assert compactify.compute_d0(n, 1) == n + 1, n
    record(1, "worked examples and the (n,1) family", 1, body)


def test_criterion_2_matrix_identity():
    def body():
        count = 0
        for p, q in hj.coprime_pairs(50):
            M = hj.cf_matrix_product(hj.hj_expand(p, q))
            inv = hj.mod_inverse(q, p)
            assert (1 - q * inv) % p == 0
            assert M == ((p, -inv), (q, (1 - q * inv) // p)), (p, q)
            count += 1
        assert count > 700
    record(2, "matrix identity for all coprime p <= 50", 5, body)


def test_criterion_3_closed_form_inverse():
    def body():
        for n in range(2, 201):
            for a in range(1, n):
                if gcd(n, a) == 1:
                    assert chains.closed_form_matches_elimination(chains.accompanying_of(n, a)), (n, a)
    record(3, "closed-form inverse equals elimination for n <= 200", 60, body)


def test_criterion_4_discrepancies():
    def body():
        for p, q in hj.coprime_pairs(100):
            acc = chains.accompanying(hj.wahl_chain(p, q).wahl, p * p, p * q - 1)
            assert chains.wahl_discrepancies_ok(chains.discrepancies(acc)), (p, q)
    record(4, "Wahl discrepancies in (-1, 0] for p <= 100", 10, body)


def test_criterion_5_compactifying_divisor():
    def body():
        assert compactify.compactifying_divisor(5, 2).profile == (2, -2, -2, -2, -3)
        assert compactify.compactifying_divisor(2, 1).profile == (3, -1)
        for p, q in hj.coprime_pairs(100):
            assert compactify.schur_top_left(p, q) == F(p * q - 1, p * p), (p, q)
        for p, q in hj.coprime_pairs(20):
            audit = compactify.sign_audit(p, q)
            assert audit["corrected_matches"], (p, q)
        # the uncorrected sign is refuted by direct inversion
        assert not compactify.sign_audit(5, 2)["uncorrected_matches"]
    record(5, "divisor profiles, Schur entry for p <= 100, sign audit", 60, body)


def test_criterion_6_regulation():
    def body():
        for p, q in hj.coprime_pairs(50):
            rep = regulation.verification_report(p, q)
            m = len(hj.wahl_chain(p, q).wahl)
            n = compactify.compactifying_divisor(p, q).n
            assert rep["adjunction_ok"] and rep["profile_ok"], (p, q)
            assert rep["unique_intersection_ok"], (p, q)
            ruling = rep["ruling"]
            assert ruling["class_ok"] and (ruling["r"], ruling["s"]) == (m, n), (p, q)
            assert all(x > 0 for x in ruling["alpha"] + ruling["beta"]) and ruling["epsilon"] > 0
            assert rep["shared_accompanying_ok"], (p, q)
            assert rep["contractions"] == m + n - 1, (p, q)
        trace = regulation.contraction_simulator(4, 1)
        assert [s.chain for s in trace.steps] == [(-2, -2, -1, -3), (-2, -1, -2), (-1, -1), (0,)]
        assert (trace.final.left, trace.final.right) == (-5, 5)
    record(6, "regulation suite for p <= 50", 120, body)


def test_criterion_7_embeddings():
    def body():
        rng = random.Random(2024)
        pairs = list(hj.coprime_pairs(20))
        for _ in range(100):
            p, q = rng.choice(pairs)
            a = F(rng.randint(1, 40), rng.randint(1, 10))
            lam = a if rng.random() < 0.2 else F(rng.randint(1, 40), rng.randint(1, 10))
            v = embeddings.nonsqueeze_verdict(embeddings.NonsqueezeQuery(p, q, a, lam))
            assert v.obstructed == (a > lam)
            t = F(rng.randint(1, 30), rng.randint(1, 30))
            assert embeddings.cm_area(p, q, t) * abs(embeddings.cm_coefficient(p, q)) == t
        for p, q in hj.coprime_pairs(50):
            got = embeddings.classify_pinwheels(p, q).admissible
            assert got == {(p, q), (p, p - q)}, (p, q, sorted(got))
    record(7, "non-squeezing boundary and pinwheel classification for p <= 50", 30, body)


def test_criterion_8_atf():
    from test_atf import mul, random_unimodular

    def body():
        rng = random.Random(8)
        vecs = [(x, y) for x in range(-7, 8) for y in range(-7, 8) if gcd(x, y) == 1]
        done = 0
        while done < 1000:
            u, v = rng.choice(vecs), rng.choice(vecs)
            if u[0] * v[1] - u[1] * v[0] == 0:
                continue
            A = random_unimodular(rng)
            assert atf.corner_type(mul(A, u), mul(A, v)).equivalent(atf.corner_type(u, v))
            done += 1
        for p, q in hj.coprime_pairs(100):
            M = atf.monodromy_shear(p, q)
            assert M[0][0] * M[1][1] - M[0][1] * M[1][0] == 1 and M[0][0] + M[1][1] == 2
            assert mul(M, (p, q)) == (p, q)
            _, _, W = atf.whitney_embedding_matrix(p, q)
            assert W[0][0] * W[1][1] - W[0][1] * W[1][0] == 1 and mul(W, (p, q)) == (1, 1)
        for name, d in [("pin_ellipsoid_5_2.svg", atf.build_pin_diagram(5, 2, 1, 1)),
                        ("pin_ellipsoid_2_1.svg", atf.build_pin_diagram(2, 1, 1, 1)),
                        ("compactify_5_2.svg", atf.compactification_diagram(5, 2)),
                        ("compactify_2_1.svg", atf.compactification_diagram(2, 1))]:
            svg = atf.emit_svg(d)
            assert svg == atf.emit_svg(d) == (GOLDEN / name).read_text(), name
    record(8, "corner invariance, shear, Whitney matrix, golden SVGs", 30, body)


def test_criterion_9_local_models():
    def body():
        assert local_models.lagrangian_check(5, 2, 64) <= local_models.LAGRANGIAN_TOL
        assert local_models.lagrangian_check(2, 1, 64) <= local_models.LAGRANGIAN_TOL
        order = local_models.convergence_order(5, 2, 1e-3, 5e-4)
        assert 1.8 < order < 2.2, order
        pts = local_models.random_points(100, seed=9)
        import math
        assert local_models.straightening_check(math.sin, pts) <= local_models.JACOBIAN_TOL
        worst, move = local_models.quotient_action_residual(3, 1, 1000)
        assert worst <= local_models.ACTION_TOL and move > 0
    record(9, "local-model numerics", 10, body)
