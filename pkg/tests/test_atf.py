import random
from fractions import Fraction
from math import gcd
from pathlib import Path

import pytest

from bpqtools.atf import (
    INF, BaseDiagram, CornerType, HalfPlane, apply_affine, build_pin_diagram, compactification_diagram,
    corner_type, divisor_profile_from_diagram, emit_svg, monodromy_shear, resolve_corner,
    symplectic_cut, whitney_embedding_matrix,
)
from bpqtools.compactify import compactifying_divisor
from bpqtools.hj import coprime_pairs, ext_gcd

GOLDEN = Path(__file__).parent / "golden"
F = Fraction
O = (F(0), F(0))


def random_unimodular(rng, bound=10, allow_reflection=True):
    while True:
        a, c = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if gcd(a, c) != 1:
            continue
        g, s, t = ext_gcd(a, c)
        # a*s + c*t = g = +-1, so [[a, -t*g], [c, s*g]] has det 1
        b, d = -t * g, s * g
        k = rng.randint(-2, 2)
        b, d = b + k * a, d + k * c
        if max(abs(b), abs(d)) > bound:
            continue
        A = ((a, b), (c, d))
        if allow_reflection and rng.random() < 0.5:
            A = ((a, b), (-c, -d))
        return A


def mul(A, v):
    return (A[0][0] * v[0] + A[0][1] * v[1], A[1][0] * v[0] + A[1][1] * v[1])


def test_corner_type_examples():
    assert corner_type((0, 1), (4, 1)) == CornerType(4, 1)
    assert corner_type((0, 1), (1, 0)).delzant
    c = corner_type((-25, -9), (-1, 0))
    assert c.equivalent(CornerType(9, 4))
    with pytest.raises(ValueError):
        corner_type((1, 2), (2, 4))


def test_wahl_corner_sweep():
    for p, q in coprime_pairs(50):
        c = corner_type((0, 1), (p * p, p * q - 1))
        assert (c.n, c.a) == (p * p, p * q - 1)


def test_corner_type_invariance():
    rng = random.Random(1)
    vecs = [(x, y) for x in range(-6, 7) for y in range(-6, 7) if gcd(x, y) == 1]
    for _ in range(1000):
        u, v = rng.choice(vecs), rng.choice(vecs)
        if u[0] * v[1] - u[1] * v[0] == 0:
            continue
        A = random_unimodular(rng)
        assert corner_type(mul(A, u), mul(A, v)).equivalent(corner_type(u, v))


def test_resolution_chain_and_relation():
    ts = resolve_corner((-25, -9), (-1, 0))
    assert ts == [(11, 4), (8, 3), (5, 2), (2, 1)]
    assert resolve_corner((0, 1), (1, 0)) == []


def test_monodromy_shear():
    assert monodromy_shear(2, 1) == ((-1, 4), (-1, 3))
    for p, q in coprime_pairs(50):
        M = monodromy_shear(p, q)
        assert M[0][0] * M[1][1] - M[0][1] * M[1][0] == 1
        assert M[0][0] + M[1][1] == 2
        assert mul(M, (p, q)) == (p, q)
        # the top edge (-1,0) is sheared to (pq-1, q^2)
        assert mul(M, (-1, 0)) == (p * q - 1, q * q)


def test_sheared_corner_type():
    p, q = 5, 2
    M = monodromy_shear(p, q)
    # after the shear the capped corner is spanned by (0,1) and (pq-1, q^2)
    assert mul(M, (-p * p, -(p * q - 1))) == (0, 1)
    assert corner_type((0, 1), (p * q - 1, q * q)) == CornerType(9, 4)


def test_whitney():
    assert whitney_embedding_matrix(5, 2) == (1, 3, ((1, -2), (-1, 3)))
    assert whitney_embedding_matrix(2, 1) == (0, 1, ((1, -1), (0, 1)))
    for p, q in coprime_pairs(100):
        a, b, M = whitney_embedding_matrix(p, q)
        assert 0 <= a < q and b * q - a * p == 1
        assert mul(M, (p, q)) == (1, 1)


def test_pin_diagram():
    d = build_pin_diagram(5, 2, 1, 1)
    assert (F(25), F(9)) in d.vertices
    assert d.nodes[0].eigendirection == (5, 2)
    cyl = build_pin_diagram(2, 1, 1, INF)
    assert cyl.out_ray == (0, 1) and not cyl.closed
    assert build_pin_diagram(3, 1, 2, 2).vertices == ((F(0), F(2)), O, (F(18), F(4)))
    with pytest.raises(ValueError):
        build_pin_diagram(5, 2, 0, 1)


def test_apply_affine():
    d = build_pin_diagram(5, 2, 1, 1)
    assert apply_affine(d, ((1, 0), (0, 1))) == d
    M = monodromy_shear(5, 2)
    Minv = ((M[1][1], -M[0][1]), (-M[1][0], M[0][0]))
    moved = apply_affine(d, M)
    assert moved.nodes[0].eigendirection == (5, 2)
    assert apply_affine(moved, Minv) == d
    R = ((-1, 0), (0, 1))
    assert apply_affine(apply_affine(d, R), R) == d
    with pytest.raises(ValueError):
        apply_affine(d, ((2, 0), (0, 1)))


def test_symplectic_cut_examples():
    quadrant = BaseDiagram((O,), (0, 1), (1, 0))
    tri = symplectic_cut(quadrant, HalfPlane((1, 1), 1))
    assert tri.closed and set(tri.vertices) == {O, (F(1), F(0)), (F(0), F(1))}
    assert all(c.delzant for _, c in tri.corner_types())
    d = build_pin_diagram(5, 2, 1, 1)
    assert symplectic_cut(d, HalfPlane((0, 1), 100)) == d
    with pytest.raises(ValueError):
        symplectic_cut(d, HalfPlane((0, 1), -1))
    wedge = build_pin_diagram(5, 2, INF, INF)
    capped = symplectic_cut(wedge, HalfPlane((0, 1), 1))
    corner = [c for P, c in capped.corners if P[0] > 0][0]
    assert corner.n == 9 and corner.equivalent(CornerType(9, 4))


def test_compactification_diagram_profiles():
    for p, q in coprime_pairs(15):
        d = compactification_diagram(p, q)
        assert divisor_profile_from_diagram(d) == compactifying_divisor(p, q).profile


def test_svg_nodes_and_determinism():
    quadrant = BaseDiagram((O,), (0, 1), (1, 0))
    assert "stroke-width=\"1.5\"" not in emit_svg(quadrant)
    d = build_pin_diagram(2, 1, 1, 1)
    assert emit_svg(d) == emit_svg(build_pin_diagram(2, 1, 1, 1))
    assert emit_svg(d).count('stroke-width="1.5"') == 2


@pytest.mark.parametrize("name,make", [
    ("pin_ellipsoid_5_2.svg", lambda: build_pin_diagram(5, 2, 1, 1)),
    ("pin_ellipsoid_2_1.svg", lambda: build_pin_diagram(2, 1, 1, 1)),
    ("compactify_5_2.svg", lambda: compactification_diagram(5, 2)),
    ("compactify_2_1.svg", lambda: compactification_diagram(2, 1)),
])
def test_golden(name, make):
    assert emit_svg(make()) == (GOLDEN / name).read_text()


def test_json_shape():
    data = compactification_diagram(5, 2).to_json()
    assert set(data) >= {"vertices", "edges", "nodes"}
    assert [e["label"] for e in data["edges"] if e["label"]] == ["D4", "D3", "D2", "D1", "D0"]
