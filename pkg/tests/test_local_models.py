import cmath
import math

import pytest

from bpqtools.local_models import (
    ACTION_TOL, JACOBIAN_TOL, LAGRANGIAN_TOL, collar_cover_degree, collar_eval, convergence_order,
    lagrangian_check, lagrangian_symbolic, period_shift, quotient_action_check,
    quotient_action_residual, quotient_action_symbolic, random_points, straightening_check,
    straightening_core_check, straightening_symbolic,
)


def test_collar_examples():
    assert collar_eval(3, 1, 0.5, 0).image == (1.5, 0.0, 0.0, 0.0)
    assert collar_eval(3, 1, 0, 1).image == pytest.approx((0, 1 / 6, 1, 0))
    with pytest.raises(ValueError):
        collar_eval(3, 1, 0, -1)


def test_period_shift():
    for p, q in [(3, 1), (5, 2), (7, 3)]:
        assert period_shift(p, q, 0.4, 0.05) == pytest.approx(cmath.exp(2j * math.pi * q / p))


def test_cover_degree():
    for p, q in [(2, 1), (3, 1), (5, 2)]:
        assert collar_cover_degree(p, q) == (p, p)


def test_lagrangian_residual():
    assert lagrangian_check(2, 1, 32) <= LAGRANGIAN_TOL
    assert lagrangian_check(5, 2, 64) <= LAGRANGIAN_TOL
    assert 1.8 < convergence_order(5, 2) < 2.2
    with pytest.raises(ValueError):
        lagrangian_check(2, 1, 3)


def test_lagrangian_symbolic():
    assert lagrangian_symbolic(5, 2) == 0


def test_straightening():
    pts = random_points(100, seed=3)
    assert straightening_check(lambda t: 0.0 * t, pts) <= 1e-9
    assert straightening_check(math.sin, pts) <= JACOBIAN_TOL
    assert straightening_check(lambda t: 2.0 * t, pts, deta=lambda t: 2.0) <= JACOBIAN_TOL
    assert straightening_core_check(math.sin, [0.1, 1.0, 2.5]) <= 1e-9
    assert straightening_symbolic().is_zero_matrix


def test_quotient_action():
    worst, move = quotient_action_residual(3, 1, 1000)
    assert worst <= ACTION_TOL and move > 0
    assert quotient_action_check(5, 2, 200)
    assert quotient_action_symbolic(5, 2) == 0
    assert quotient_action_symbolic(3, 1) == 0
