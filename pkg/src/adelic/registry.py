"""Session registry of field extensions of the rationals.

Splitting-class atoms refer to registered extensions, and free
ultrafilters resolve their selector cells in registration order, so the
registry must be populated before ultrafilter queries begin (register
everything up front; queries afterwards are safe to run concurrently).
"""

from __future__ import annotations

from .numberfields import NumberField, RATIONALS

_REGISTRY: list[NumberField] = []


def ensure_registered(field: NumberField) -> NumberField:
    """Idempotently add an extension of the rationals to the registry."""
    if field == RATIONALS:
        return field
    if field not in _REGISTRY:
        _REGISTRY.append(field)
    return field


def registered_fields() -> tuple[NumberField, ...]:
    return tuple(_REGISTRY)


def clear_registry() -> None:
    _REGISTRY.clear()
