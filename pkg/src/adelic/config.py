"""Desk-scale tuning knobs, shared by the library and the CLI."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Settings:
    """Numeric limits for local precision and prime sampling.

    precision: default number of p-adic digits carried by local elements.
    prime_bound: primes below this bound are sampled when deciding which
        splitting classes look infinite and when picking selector cells
        for free ultrafilters.
    atom_witness_threshold: a class atom sampled below prime_bound with
        fewer members than this triggers a sparseness warning when a free
        ultrafilter is anchored on it.
    factor_cap: largest prime the place machinery will factor.
    """

    precision: int = 32
    prime_bound: int = 10_000
    atom_witness_threshold: int = 25
    factor_cap: int = 1_000_000


DEFAULT = Settings()


def set_defaults(**overrides) -> Settings:
    """Replace the process-wide settings (used by the CLI's global flags)."""
    global DEFAULT
    DEFAULT = Settings(**{**DEFAULT.__dict__, **overrides})
    return DEFAULT
