"""Restriction of places and the spectrum fiber map for extensions of Q.

The restriction map sends places of an extension field to the places of
the rationals below them.  It induces contraction of prime ideals (via
ultrafilter pushforward and a descent of the generator for intermediate
primes) and, in the other direction, finite fibers of size at most the
degree: one principal ideal per place of the fiber, one ultrafilter ideal
per section lift, and exactly one intermediate prime per lifted
ultrafilter with the generator transported upward along the diagonal.

Rational adeles embed in extension adeles componentwise.  At unramified
places the canonical uniformizer below and above is the same prime p, so
tail patterns transport verbatim; the finitely many ramified places are
materialized as exceptional components with their exact rational values.
"""

from __future__ import annotations

from sympy import factorint

from .adeles import Adele, TailPoly, make_adele
from .errors import FieldMismatch
from .localfields import INF, embed
from .numberfields import FieldElement, NumberField, RATIONALS
from .places import (
    ArchimedeanPlace,
    Place,
    archimedean_places,
    excluded_primes,
    factor_prime,
)
from .placesets import (
    finite_qset,
    full_preimage,
    pullback_section,
)
from .registry import ensure_registered
from .spectrum import (
    PrimeIdeal,
    between,
    max_at,
    min_at,
    selected_profile,
    zero_at,
)
from .ultrafilters import (
    FreeKUltrafilter,
    lifts,
    pushforward,
    section_refine,
)

register_extension = ensure_registered


def restrict_place(w: Place) -> Place:
    """The place of the rationals below a place of an extension field."""
    if isinstance(w, ArchimedeanPlace):
        return archimedean_places(RATIONALS)[0]
    return factor_prime(RATIONALS, w.p)[0]


def _ramified_primes(field: NumberField) -> tuple[int, ...]:
    """Supported primes where some place above may be ramified (divisors
    of the polynomial discriminant)."""
    disc = abs(field.discriminant)
    return tuple(
        p for p in sorted(factorint(disc).keys())
        if p not in excluded_primes(field)
    )


def to_extension(alpha: Adele, field: NumberField) -> Adele:
    """The image of a rational adele in the adele ring of the extension.

    Components are the same rational numbers; regions become full
    preimages.  Places above ramified or excluded primes leave the
    uniformizer-tail pattern (p is no longer a uniformizer there), so they
    are materialized as exceptional components; places above excluded
    primes do not exist in the model and are dropped.
    """
    if alpha.field != RATIONALS:
        raise FieldMismatch("only rational adeles lift along an extension")
    ensure_registered(field)
    arch = tuple(
        field.element(alpha.arch[0].as_rational())
        for _ in archimedean_places(field)
    )
    absorbed = set(_ramified_primes(field))
    absorbed.update(w.p for w, _ in alpha.exceptional)
    exceptional = []
    for p in sorted(absorbed):
        if p in excluded_primes(field):
            continue
        below = factor_prime(RATIONALS, p)[0]
        value = alpha.component_at(below)
        if not isinstance(value, FieldElement):
            raise ValueError("finite-precision components do not lift")
        lifted = field.element(value.as_rational())
        for w in factor_prime(field, p):
            exceptional.append((w, lifted))
    drop = finite_qset(sorted(absorbed)).union(
        finite_qset(excluded_primes(field))
    )
    overrides = []
    for region, tail in alpha.overrides:
        kregion = full_preimage(field, region.difference(drop))
        if not kregion.is_empty():
            overrides.append((kregion, _lift_tail(tail, field)))
    return make_adele(field, arch, exceptional, overrides,
                      _lift_tail(alpha.tail, field))


def _lift_tail(tail: TailPoly, field: NumberField) -> TailPoly:
    return TailPoly.make(field, [field.element(c.as_rational()) for c in tail.coeffs])


def contract_prime(ideal: PrimeIdeal) -> PrimeIdeal:
    """The preimage of an extension-field prime in the rational adele ring."""
    if ideal.field == RATIONALS:
        return ideal
    if ideal.kind == "zero_at":
        return zero_at(restrict_place(ideal.place))
    if ideal.kind == "max_at":
        return max_at(pushforward(ideal.ultra))
    if ideal.kind == "min_at":
        return min_at(pushforward(ideal.ultra))
    assert ideal.kind == "between"
    return between(pushforward(ideal.ultra), _descend_generator(ideal))


def _descend_generator(ideal: PrimeIdeal) -> Adele:
    """Carry the generator of an intermediate prime down to the rationals.

    The generator's maximal-ideal set is refined to meet each fiber at
    most once; below its image the descended generator carries the same
    valuation pattern (p to the power of the tail degree the ultrafilter
    selects), and it vanishes elsewhere.  Exact components cannot cross
    completions when residue degrees exceed one, and the membership test
    only reads valuations, so transporting the pattern is faithful.
    """
    u = ideal.ultra
    assert isinstance(u, FreeKUltrafilter)
    beta = ideal.beta
    big = beta.membership_set("in_m")
    refined = section_refine(u, big)
    v_region = pullback_section(refined, u.effective_position)
    depth = selected_profile(u, beta)[0]
    q = RATIONALS
    if depth == INF:
        override_tail = TailPoly.zero(q)
    else:
        override_tail = TailPoly.uniformizer_power(q, int(depth))
    return make_adele(
        q,
        [q.zero() for _ in archimedean_places(q)],
        (),
        ((v_region, override_tail),),
        TailPoly.zero(q),
    )


def fiber_of_spec(ideal: PrimeIdeal, field: NumberField) -> list[PrimeIdeal]:
    """All primes of the extension's adele ring contracting to the given
    rational prime ideal; nonempty, of size at most the degree."""
    if ideal.field != RATIONALS:
        raise FieldMismatch("fibers are taken over the rationals")
    ensure_registered(field)
    if ideal.kind == "zero_at":
        w = ideal.place
        if isinstance(w, ArchimedeanPlace):
            return [zero_at(v) for v in archimedean_places(field)]
        return [zero_at(v) for v in factor_prime(field, w.p)]
    ups = lifts(ideal.ultra, field)
    if ideal.kind == "max_at":
        return [max_at(u) for u in ups]
    if ideal.kind == "min_at":
        return [min_at(u) for u in ups]
    assert ideal.kind == "between"
    lifted_beta = to_extension(ideal.beta, field)
    return [between(u, lifted_beta) for u in ups]


def power_basis_spans_at(field: NumberField, p: int, digits: int = 16) -> bool:
    """Smoke check that the generator's powers span the product of the
    completions above a fully split prime: the matrix of their images is a
    Vandermonde matrix of the distinct lifted roots, invertible mod p."""
    fiber = factor_prime(field, p)
    if any(w.e != 1 or w.f != 1 for w in fiber):
        raise ValueError("the span check samples fully split primes only")
    n = field.degree
    roots = []
    for w in fiber:
        image = embed(field.generator(), w, digits)
        root = image.unit_as_int() * w.p ** image.valuation if not image.is_zero else 0
        roots.append(root)
    det = 1
    for i in range(n):
        for j in range(i + 1, n):
            det *= roots[j] - roots[i]
    return det % p != 0
