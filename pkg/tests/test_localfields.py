import random
from fractions import Fraction

import pytest

from adelic.errors import PrecisionLoss
from adelic.localfields import (
    INF,
    embed,
    local_add,
    local_mul,
    local_neg,
    local_val,
    uniformizer_element,
    valuation_of_element,
)
from adelic.numberfields import RATIONALS
from adelic.places import factor_prime, place_above

from conftest import CUBE2, CYCLO5, GAUSS


def test_embed_inverse_of_two_at_three():
    v = place_above(RATIONALS, 3)
    image = embed(RATIONALS.element(Fraction(1, 2)), v, 5)
    assert image.valuation == 0
    assert image.unit_as_int() == 122          # 2 * 122 = 244 = 1 + 3^5
    assert (2 * image.unit_as_int()) % 3 ** 5 == 1


def test_embed_basics():
    v = place_above(RATIONALS, 3)
    three = embed(RATIONALS.element(3), v, 5)
    assert three.valuation == 1 and three.unit_as_int() == 1
    assert embed(RATIONALS.zero(), v).is_zero
    four = local_add(embed(RATIONALS.one(), v, 8), embed(RATIONALS.element(3), v, 8))
    assert four.valuation == 0


def test_exact_cancellation():
    v = place_above(RATIONALS, 5)
    a = embed(RATIONALS.element(7), v, 6)
    assert local_add(a, local_neg(a)).is_zero


def test_uniformizers_have_valuation_one():
    for field, p in ((GAUSS, 2), (CUBE2, 3), (CUBE2, 2), (CYCLO5, 5), (GAUSS, 13)):
        for w in factor_prime(field, p):
            pi = uniformizer_element(w)
            assert valuation_of_element(pi, w) == 1, (field, p, w)


def test_valuations_add_under_multiplication():
    w = place_above(GAUSS, 2)
    a = embed(GAUSS.element(1, 1), w, 10)    # 1 + i, valuation 1
    b = embed(GAUSS.element(2), w, 10)       # valuation 2
    assert local_val(local_mul(a, b)) == 3
    assert local_val(local_mul(a, a)) == 2


def test_embed_is_ring_morphism_at_fixed_precision():
    rng = random.Random(11)
    places = [
        place_above(RATIONALS, 5),
        place_above(GAUSS, 5, 1),
        place_above(GAUSS, 2),
        place_above(CUBE2, 3),
        place_above(CYCLO5, 11, 2),
    ]
    for w in places:
        field = w.field
        for _ in range(25):
            x = field.element(*[rng.randint(-9, 9) for _ in range(field.degree)])
            y = field.element(*[rng.randint(-9, 9) for _ in range(field.degree)])
            ex, ey = embed(x, w, 12), embed(y, w, 12)
            assert embed(x + y, w, 12).agrees(local_add(ex, ey), 8)
            assert embed(x * y, w, 12).agrees(local_mul(ex, ey), 8)


def test_ultrametric_inequality_thousand_pairs():
    rng = random.Random(23)
    places = [
        place_above(RATIONALS, 2),
        place_above(RATIONALS, 3),
        place_above(GAUSS, 2),
        place_above(GAUSS, 5, 0),
        place_above(CUBE2, 2),
        place_above(CYCLO5, 19, 0),
    ]
    checked = 0
    while checked < 1000:
        w = rng.choice(places)
        field = w.field
        x = field.element(*[rng.randint(-20, 20) for _ in range(field.degree)])
        y = field.element(*[rng.randint(-20, 20) for _ in range(field.degree)])
        if x.is_zero() or y.is_zero() or (x + y).is_zero():
            continue
        vx = valuation_of_element(x, w)
        vy = valuation_of_element(y, w)
        vsum = valuation_of_element(x + y, w)
        assert vsum >= min(vx, vy)
        if vx != vy:
            assert vsum == min(vx, vy)
        vprod = valuation_of_element(x * y, w)
        assert vprod == vx + vy
        checked += 1


def test_precision_loss_without_provenance():
    w = place_above(RATIONALS, 5)
    a = embed(RATIONALS.element(7), w, 4)
    b = embed(RATIONALS.element(7 - 5 ** 9), w, 4)
    # the difference vanishes through every certified digit and neither
    # operand knows the other exactly enough at this precision
    stripped_a = type(a)(a.place, a.valuation, a.unit, a.precision, None)
    stripped_b = type(b)(b.place, b.valuation, b.unit, b.precision, None)
    with pytest.raises(PrecisionLoss):
        local_add(stripped_a, local_neg(stripped_b))
    # with exact provenance the same sum resolves
    resolved = local_add(a, local_neg(b))
    assert resolved.valuation == 9


def test_zero_valuation_is_infinite():
    w = place_above(GAUSS, 7)
    assert valuation_of_element(GAUSS.zero(), w) == INF
