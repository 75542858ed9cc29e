import pytest

from adelic.numberfields import NumberField, RATIONALS
from adelic.registry import clear_registry, ensure_registered

GAUSS = NumberField((1, 0, 1))          # x^2 + 1
ROOT5 = NumberField((-5, 0, 1))         # x^2 - 5
CUBE2 = NumberField((-2, 0, 0, 1))      # x^3 - 2
CYCLO5 = NumberField((1, 1, 1, 1, 1))   # 1 + x + x^2 + x^3 + x^4

CATALOGUE = (GAUSS, ROOT5, CUBE2, CYCLO5)

SPLIT_GAUSS = ((1, 1), (1, 1))
INERT_GAUSS = ((1, 2),)
FULL_SPLIT_CUBE2 = ((1, 1), (1, 1), (1, 1))
MIXED_CUBE2 = ((1, 1), (1, 2))
INERT_CYCLO5 = ((1, 4),)


@pytest.fixture(autouse=True)
def fresh_registry():
    """Each test starts with the catalogue registered in a fixed order, so
    ultrafilter selector chains are reproducible."""
    clear_registry()
    for field in CATALOGUE:
        ensure_registered(field)
    yield
    clear_registry()


@pytest.fixture
def rationals():
    return RATIONALS
