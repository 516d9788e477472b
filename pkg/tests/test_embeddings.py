import random
from fractions import Fraction

import pytest

from bpqtools.embeddings import (
    FIRST_AXIS, SECOND_AXIS, NonsqueezeQuery, classify_pinwheels, cm_area, cm_coefficient,
    cm_coefficient_from_matrix, cm_direction, embedded_pinwheel_ok, nonsqueeze_verdict,
    pinwheel_adjunction_closed_form, pinwheel_candidates,
)
from bpqtools.hj import coprime_pairs

F = Fraction


def test_cm_direction():
    assert cm_direction(2, 1) == (1, 0)
    assert cm_direction(5, 2) == (14, 5)
    for p, q in coprime_pairs(100):
        cm_direction(p, q)


def test_cm_area_and_coefficient():
    assert cm_area(2, 1, 1) == 4
    assert cm_area(5, 2, 1) == F(25, 14)
    assert cm_area(5, 2, 0) == 0
    assert cm_coefficient(2, 1) == F(-1, 4)
    assert cm_coefficient(5, 2) == F(-14, 25)
    for p, q in coprime_pairs(40):
        assert cm_coefficient(p, q) == cm_coefficient_from_matrix(p, q)
        assert cm_area(p, q, F(2, 3)) * abs(cm_coefficient(p, q)) == F(2, 3)


def test_verdict_examples():
    assert not nonsqueeze_verdict(NonsqueezeQuery(2, 1, 1, 1)).obstructed
    assert nonsqueeze_verdict(NonsqueezeQuery(5, 2, 2, 1)).obstructed
    assert not nonsqueeze_verdict(NonsqueezeQuery(5, 2, F(1, 2), 1)).obstructed
    v = nonsqueeze_verdict(NonsqueezeQuery(5, 2, 2, 1, SECOND_AXIS))
    assert v.obstructed and v.label == "obstructed"


def test_verdict_boundary_random():
    rng = random.Random(7)
    pairs = list(coprime_pairs(20))
    for _ in range(100):
        p, q = rng.choice(pairs)
        a, lam = F(rng.randint(1, 60), rng.randint(1, 12)), F(rng.randint(1, 60), rng.randint(1, 12))
        kind = rng.choice([FIRST_AXIS, SECOND_AXIS])
        assert nonsqueeze_verdict(NonsqueezeQuery(p, q, a, lam, kind)).obstructed == (a > lam)


def test_query_validation():
    with pytest.raises(ValueError):
        NonsqueezeQuery(5, 2, 0, 1)
    with pytest.raises(ValueError):
        NonsqueezeQuery(5, 2, 1, 1, "diagonal")


def test_classification_examples():
    assert classify_pinwheels(5, 2).admissible == {(5, 2), (5, 3)}
    assert classify_pinwheels(2, 1).admissible == {(2, 1)}
    assert (4, 3) in pinwheel_candidates(8)
    assert not embedded_pinwheel_ok(8, 1, 4, 3)


def test_closed_form_adjunction():
    # a candidate of the ambient order has l = 1
    assert pinwheel_adjunction_closed_form(5, 5, 1, 1) == 0
    assert pinwheel_adjunction_closed_form(8, 4, 1, 1) == -F(F(1, 4) - 1, 32)


def test_classification_sweep_small():
    for p, q in coprime_pairs(20):
        assert classify_pinwheels(p, q).admissible == {(p, q), (p, p - q)}
