import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from adelic.errors import FieldMismatch
from adelic.numberfields import NumberField, RATIONALS, parse_element

from conftest import CUBE2, CYCLO5, GAUSS


def test_construction_validates():
    with pytest.raises(ValueError):
        NumberField((1,))          # degree 0
    with pytest.raises(ValueError):
        NumberField((1, 0, 2))     # not monic
    with pytest.raises(ValueError):
        NumberField((-1, 0, 1))    # reducible


def test_signature():
    assert (GAUSS.real_embeddings, GAUSS.complex_pairs) == (0, 1)
    assert (CUBE2.real_embeddings, CUBE2.complex_pairs) == (1, 1)
    assert (CYCLO5.real_embeddings, CYCLO5.complex_pairs) == (0, 2)
    assert (RATIONALS.real_embeddings, RATIONALS.complex_pairs) == (1, 0)
    for k in (GAUSS, CUBE2, CYCLO5, RATIONALS):
        assert k.real_embeddings + 2 * k.complex_pairs == k.degree


def test_generator_satisfies_polynomial():
    for k in (GAUSS, CUBE2, CYCLO5):
        theta = k.generator()
        acc = k.zero()
        power = k.one()
        for c in k.coeffs:
            acc = acc + power * k.element(c)
            power = power * theta
        assert acc.is_zero()


def test_norms():
    i = GAUSS.generator()
    assert (GAUSS.one() + i).norm() == 2          # N(1+i)
    assert GAUSS.element(3, 4).norm() == 25       # N(3+4i)
    assert CUBE2.generator().norm() == 2
    assert RATIONALS.element(Fraction(-7, 2)).norm() == Fraction(-7, 2)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        GAUSS.one() + CUBE2.one()


@st.composite
def gauss_elements(draw):
    num = st.integers(min_value=-9, max_value=9)
    den = st.integers(min_value=1, max_value=4)
    coeffs = [Fraction(draw(num), draw(den)) for _ in range(2)]
    return GAUSS.element(*coeffs)


@given(gauss_elements(), gauss_elements(), gauss_elements())
@settings(max_examples=200, deadline=None)
def test_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == GAUSS.zero()
    if not a.is_zero():
        assert a * a.inverse() == GAUSS.one()


@given(gauss_elements(), gauss_elements())
@settings(max_examples=150, deadline=None)
def test_norm_multiplicative(a, b):
    assert (a * b).norm() == a.norm() * b.norm()


def test_element_text_round_trip():
    rng = random.Random(3)
    for field in (RATIONALS, GAUSS, CUBE2, CYCLO5):
        for _ in range(20):
            x = field.element(*[
                Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3)))
                for _ in range(field.degree)
            ])
            assert parse_element(field, x.to_text()) == x
