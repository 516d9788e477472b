from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from bpqtools.chains import (
    RationalMatrix, SingularMatrixError, SphereChain, accompanying, accompanying_of,
    check_accompanying, closed_form_matches_elimination, discrepancies, exact_inverse,
    intersection_matrix, inverse_closed_form, second_identity_table, solve_profile,
    wahl_discrepancies_ok,
)
from bpqtools.hj import coprime_pairs, hj_expand, wahl_chain


def test_accompanying_examples():
    acc = accompanying_of(25, 9)
    assert acc.e == (0, 1, 3, 14, 25) and acc.f == (25, 9, 2, 1, 0)
    acc = accompanying_of(4, 1)
    assert acc.e == (0, 1, 4) and acc.f == (4, 1, 0)
    acc = accompanying_of(9, 4)
    assert acc.e == (0, 1, 3, 5, 7, 9) and acc.f == (9, 4, 3, 2, 1, 0)


def test_accompanying_rejects_mismatch():
    with pytest.raises(ValueError):
        accompanying(hj_expand(25, 9), 25, 4)


def test_accompanying_invariants_sweep():
    for n in range(2, 501):
        for a in range(1, n):
            if gcd(n, a) == 1:
                assert check_accompanying(accompanying_of(n, a)) == []


def test_second_identity_only_at_one():
    table = second_identity_table(accompanying_of(25, 9))
    assert table[0] == (1, 9, 9)
    # the general-index form fails at i = 2 on this chain
    assert table[1] == (2, 5, 9)


def test_intersection_matrix():
    assert intersection_matrix([-4]).rows == ((-4,),)
    M = intersection_matrix(SphereChain((-3, -5, -2)))
    assert M.rows == ((-3, 1, 0), (1, -5, 1), (0, 1, -2))
    assert M.is_symmetric()
    assert intersection_matrix([-2, -2, -2, -3]).shape == (4, 4)


def test_exact_inverse_examples():
    assert exact_inverse(RationalMatrix.identity(3)) == RationalMatrix.identity(3)
    inv = exact_inverse(RationalMatrix(((3, 1), (1, -1))))
    F = Fraction
    assert inv.rows == ((F(1, 4), F(1, 4)), (F(1, 4), F(-3, 4)))
    with pytest.raises(SingularMatrixError):
        exact_inverse(RationalMatrix(((1, 2), (2, 4))))


@settings(max_examples=60)
@given(st.integers(1, 6).flatmap(lambda k: st.lists(st.lists(st.integers(-9, 9), min_size=k, max_size=k),
                                                    min_size=k, max_size=k)))
def test_inverse_roundtrip(rows):
    M = RationalMatrix(tuple(tuple(r) for r in rows))
    try:
        inv = exact_inverse(M)
    except SingularMatrixError:
        return
    assert M @ inv == RationalMatrix.identity(len(rows))


def test_closed_form_examples():
    assert inverse_closed_form(accompanying_of(4, 1)).rows == ((Fraction(-1, 4),),)
    assert inverse_closed_form(accompanying_of(25, 9))[0, 0] == Fraction(-9, 25)


def test_closed_form_equals_elimination_small():
    for n in range(2, 60):
        for a in range(1, n):
            if gcd(n, a) == 1:
                acc = accompanying_of(n, a)
                assert closed_form_matches_elimination(acc)
                inv = inverse_closed_form(acc)
                assert inv == exact_inverse(intersection_matrix(SphereChain.from_cf(acc.coeffs)))
                assert all(x < 0 for row in inv.rows for x in row)


def test_solve_profile():
    assert solve_profile(RationalMatrix(((-4,),)), [1]) == (Fraction(-1, 4),)
    M = intersection_matrix(SphereChain.from_cf(hj_expand(25, 9)))
    assert solve_profile(M, [1, 0, 0]) == exact_inverse(M).column(0)
    assert solve_profile(M, [0, 0, 0]) == (0, 0, 0)


def test_discrepancies():
    F = Fraction
    acc = accompanying(wahl_chain(5, 2).wahl, 25, 9)
    assert discrepancies(acc) == (F(-3, 5), F(-4, 5), F(-2, 5))
    assert discrepancies(accompanying_of(4, 1)) == (F(-1, 2),)
    for p, q in coprime_pairs(100):
        acc = accompanying(wahl_chain(p, q).wahl, p * p, p * q - 1)
        assert wahl_discrepancies_ok(discrepancies(acc))


def test_json_roundtrip():
    M = exact_inverse(intersection_matrix([-3, -5, -2]))
    assert RationalMatrix.from_json(M.to_json()) == M
