"""Places of a number field and splitting of rational primes.

A finite place above p corresponds to an irreducible factor of the
defining polynomial mod p, carrying its multiplicity e (ramification) and
degree f (residue degree).  The correspondence is only valid when p does
not divide the index of the polynomial order in the ring of integers;
Dedekind's criterion decides this exactly, and primes failing it are
rejected as unsupported.  Each field therefore has a finite, explicitly
known list of excluded primes, and the modelled place set consists of the
places above the remaining ("supported") primes together with the
archimedean places.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from sympy import factorint, isprime, primerange

from . import polynomials as poly
from . import config
from .errors import NotPrime, UnsupportedPrime
from .numberfields import NumberField


@dataclass(frozen=True, order=True)
class FinitePlace:
    field: NumberField
    p: int
    e: int
    f: int
    factor: tuple[int, ...]  # monic irreducible factor mod p, lowest degree first
    index: int               # position in the canonical fiber ordering

    @property
    def is_finite(self) -> bool:
        return True

    def __repr__(self):
        return f"Place(p={self.p}, e={self.e}, f={self.f}, i={self.index})"


@dataclass(frozen=True, order=True)
class ArchimedeanPlace:
    field: NumberField
    index: int
    real: bool

    @property
    def is_finite(self) -> bool:
        return False

    def __repr__(self):
        kind = "real" if self.real else "complex"
        return f"Place(inf:{self.index}, {kind})"


Place = FinitePlace | ArchimedeanPlace


def archimedean_places(field: NumberField) -> tuple[ArchimedeanPlace, ...]:
    s1, s2 = field.real_embeddings, field.complex_pairs
    out = [ArchimedeanPlace(field, i, True) for i in range(s1)]
    out += [ArchimedeanPlace(field, s1 + i, False) for i in range(s2)]
    return tuple(out)


def _dedekind_index_coprime(field: NumberField, p: int, factors) -> bool:
    """Dedekind's criterion: does p avoid the index of Z[theta]?

    factors is the mod-p factorization [(g, e), ...] of the defining
    polynomial.  With g = prod g_i and h = prod g_i**(e_i - 1) lifted to
    monic integer polynomials, p avoids the index iff
    gcd((g*h - f)/p, g, h) = 1 mod p.
    """
    radical = (1,)
    cofactor = (1,)
    for g, e in factors:
        radical = poly.pmul(radical, g, p)
        for _ in range(e - 1):
            cofactor = poly.pmul(cofactor, g, p)
    g_lift = tuple(int(c) for c in radical)
    h_lift = tuple(int(c) for c in cofactor)
    diff = poly.sub(poly.mul(g_lift, h_lift), field.coeffs)
    assert all(c % p == 0 for c in diff)
    t_bar = poly.pnorm(tuple(c // p for c in diff), p)
    common = poly.pgcd(poly.pgcd(t_bar, radical, p), cofactor, p)
    return poly.degree(common) == 0


@lru_cache(maxsize=None)
def excluded_primes(field: NumberField) -> tuple[int, ...]:
    """Primes dividing the index of the polynomial order; finitely many.

    Only primes whose square divides the polynomial discriminant can
    divide the index, so the list is computed once from the discriminant
    factorization.
    """
    disc = field.discriminant
    out = []
    for p, m in sorted(factorint(abs(disc)).items()):
        if m >= 2:
            factors = poly.factor_mod_p(field.coeffs, p)
            if not _dedekind_index_coprime(field, p, factors):
                out.append(p)
    return tuple(out)


def is_supported_prime(field: NumberField, p: int) -> bool:
    return isprime(p) and p < config.DEFAULT.factor_cap and p not in excluded_primes(field)


@lru_cache(maxsize=None)
def _factor_cached(field: NumberField, p: int) -> tuple[FinitePlace, ...]:
    factors = poly.factor_mod_p(field.coeffs, p)
    if any(e >= 2 for _, e in factors):
        if not _dedekind_index_coprime(field, p, factors):
            raise UnsupportedPrime(
                f"prime {p} divides the index of the polynomial order"
            )
    data = sorted((e, poly.degree(g), g) for g, e in factors)
    places = tuple(
        FinitePlace(field, p, e, f, g, i) for i, (e, f, g) in enumerate(data)
    )
    assert sum(w.e * w.f for w in places) == field.degree
    return places


def factor_prime(field: NumberField, p: int) -> tuple[FinitePlace, ...]:
    """All finite places of the field above p, canonically ordered.

    The fiber is sorted by (e, f, factor coefficients); the ordering is
    deterministic and stable across calls.
    """
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if p >= config.DEFAULT.factor_cap:
        raise UnsupportedPrime(f"prime {p} exceeds the desk-scale bound")
    return _factor_cached(field, p)


def place_above(field: NumberField, p: int, index: int = 0) -> FinitePlace:
    fiber = factor_prime(field, p)
    if not 0 <= index < len(fiber):
        raise ValueError(f"no place with index {index} above {p}")
    return fiber[index]


def splitting_class(field: NumberField, p: int) -> tuple[tuple[int, int], ...]:
    """The multiset of (e, f) pairs of the fiber above p, sorted."""
    return tuple(sorted((w.e, w.f) for w in factor_prime(field, p)))


def class_label(cls: tuple[tuple[int, int], ...]) -> str:
    return "+".join(f"{e}x{f}" for e, f in cls)


def parse_class_label(text: str) -> tuple[tuple[int, int], ...]:
    pairs = []
    for part in text.split("+"):
        e, f = part.split("x")
        pairs.append((int(e), int(f)))
    return tuple(sorted(pairs))


@lru_cache(maxsize=None)
def all_splitting_classes(degree: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Every abstract splitting type of the given degree: the multisets of
    (e, f) pairs with sum e*f equal to the degree."""
    out = set()

    def rec(remaining, smallest, acc):
        if remaining == 0:
            out.add(tuple(sorted(acc)))
            return
        for e in range(1, remaining + 1):
            for f in range(1, remaining // e + 1):
                pair = (e, f)
                if pair < smallest:
                    continue
                if e * f <= remaining:
                    rec(remaining - e * f, pair, acc + [pair])

    rec(degree, (1, 1), [])
    return tuple(sorted(out))


def fiber_size_of_class(cls: tuple[tuple[int, int], ...]) -> int:
    return len(cls)


def supported_primes(field: NumberField, bound: int):
    """Iterate supported primes below the bound in increasing order."""
    excluded = set(excluded_primes(field))
    for p in primerange(2, bound):
        if p not in excluded:
            yield p


def enumerate_finite_places(field: NumberField, count: int) -> list[FinitePlace]:
    """The first `count` finite places: primes ascending, fibers in
    canonical order."""
    out: list[FinitePlace] = []
    for p in supported_primes(field, config.DEFAULT.factor_cap):
        out.extend(factor_prime(field, p))
        if len(out) >= count:
            return out[:count]
    return out
