"""The prime ideals of the adele ring, with executable membership.

The catalogue has four variants:

  * zero_at(v): adeles whose component at one fixed place vanishes; both
    maximal and minimal, principal, and the only closed primes.
  * max_at(U): adeles whose maximal-ideal membership set belongs to a free
    ultrafilter U; maximal, not principal.
  * min_at(U): adeles whose zero set belongs to U; the unique minimal
    prime below max_at(U), dense in the adele ring.
  * between(U, beta): the smallest prime containing a fixed generator beta
    inside max_at(U): adeles alpha such that some power of alpha has
    valuation at least that of beta on a set of U.

For finite-data adeles the valuation profiles of alpha and beta are
constant on the region piece the ultrafilter selects, which reduces the
existential over (n, Y) in the between test to a three-way comparison of
those constants; with a single finite-data beta the between variant is an
honest building block but its membership oracle coincides with max_at(U)
or min_at(U) as a set (strictly intermediate primes need unbounded
valuation profiles, which finite tails cannot carry).

Level ideals mirror the same variants inside the finite-level subrings
(integral outside a finite place set S), carrying the maximal/minimal
flags appropriate to the level, and restrict compatibly along S-chains.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .adeles import (
    Adele,
    empty_set,
    membership_set,
    everything_set,
    one_adele,
    place_singleton,
    set_component,
    vanishing_on,
)
from .errors import (
    DegenerateGenerator,
    FieldMismatch,
    InconsistentNeighborhood,
    InvalidLevel,
)
from .localfields import INF, LocalElement, embed, valuation_of_element
from .numberfields import FieldElement, NumberField
from .places import ArchimedeanPlace, FinitePlace, Place, archimedean_places
from .ultrafilters import Ultrafilter


class _NotPrincipal:
    def __repr__(self):
        return "NOT_PRINCIPAL"


NOT_PRINCIPAL = _NotPrincipal()


@dataclass(frozen=True)
class PrimeIdeal:
    field: NumberField
    kind: str  # "zero_at" | "max_at" | "min_at" | "between"
    place: Place | None = None
    ultra: Ultrafilter | None = None
    beta: Adele | None = None

    def __repr__(self):
        if self.kind == "zero_at":
            return f"PrimeIdeal(zero_at {self.place!r})"
        if self.kind == "between":
            return f"PrimeIdeal(between {self.ultra!r})"
        return f"PrimeIdeal({self.kind} {self.ultra!r})"


def _require_free(u: Ultrafilter) -> None:
    if u.is_principal:
        raise ValueError(
            "ultrafilter ideals take free ultrafilters; principal ones "
            "correspond to the zero_at variant at the adele level"
        )


def zero_at(place: Place) -> PrimeIdeal:
    return PrimeIdeal(place.field, "zero_at", place=place)


def max_at(u: Ultrafilter) -> PrimeIdeal:
    _require_free(u)
    return PrimeIdeal(u.field, "max_at", ultra=u)


def min_at(u: Ultrafilter) -> PrimeIdeal:
    _require_free(u)
    return PrimeIdeal(u.field, "min_at", ultra=u)


def between(u: Ultrafilter, beta: Adele) -> PrimeIdeal:
    _require_free(u)
    if beta.field != u.field:
        raise FieldMismatch("generator and ultrafilter over different fields")
    if not u.contains(membership_set(beta, "in_m")):
        raise DegenerateGenerator(
            "the generator is a unit on the ultrafilter; the displayed "
            "membership set would be the whole ring"
        )
    return PrimeIdeal(u.field, "between", ultra=u, beta=beta)


# -- membership --------------------------------------------------------------


def member(alpha: Adele, ideal: PrimeIdeal) -> bool:
    if alpha.field != ideal.field:
        raise FieldMismatch("adele and ideal over different fields")
    if ideal.kind == "zero_at":
        w = ideal.place
        if isinstance(w, ArchimedeanPlace):
            return alpha.arch_at(w).is_zero()
        return alpha.valuation_at(w) == INF
    if ideal.kind == "max_at":
        return ideal.ultra.contains(membership_set(alpha, "in_m"))
    if ideal.kind == "min_at":
        return ideal.ultra.contains(membership_set(alpha, "is_zero"))
    assert ideal.kind == "between"
    return member_between(alpha, ideal.ultra, ideal.beta)


def _pieces(a: Adele):
    """(region-or-None, tail) pairs; None marks the default region."""
    return list(a.overrides) + [(None, a.tail)]


def _piece_region(a: Adele, region):
    if region is not None:
        return region
    rest = everything_set(a.field)
    for r, _ in a.overrides:
        rest = rest.difference(r)
    return rest


@lru_cache(maxsize=8192)
def selected_profile(u: Ultrafilter, *adeles: Adele):
    """Tail degrees of the given adeles on the region piece the
    ultrafilter selects.

    The joint region pieces of finitely many adeles partition the finite
    places, so a free ultrafilter selects exactly one; the finitely many
    exceptional and suspect places never matter to it.
    """
    field = adeles[0].field
    combos = [((), everything_set(field))]
    for a in adeles:
        new = []
        for degs, region in combos:
            for r, tail in _pieces(a):
                meet = region.intersect(_piece_region(a, r))
                if not meet.is_empty():
                    new.append((degs + (tail.min_degree(),), meet))
        combos = new
    for degs, region in combos:
        if u.contains(region):
            return degs
    raise AssertionError("an ultrafilter selects one piece of a partition")


def member_between(alpha: Adele, u: Ultrafilter, beta: Adele) -> bool:
    """Does some power of alpha dominate beta's valuations on a set of u?

    True exactly when there are n >= 1 and a member set Y of u with
    n * val_v(alpha) >= val_v(beta) for every v in Y.
    """
    _require_free(u)
    if not u.contains(membership_set(beta, "in_m")):
        raise DegenerateGenerator("generator is a unit on the ultrafilter")
    d_alpha, d_beta = selected_profile(u, alpha, beta)
    if d_beta == INF:
        return d_alpha == INF
    if d_beta == 0:
        return True
    return d_alpha == INF or d_alpha >= 1


# -- classification and structure --------------------------------------------


def classify(ideal: PrimeIdeal) -> dict[str, bool]:
    table = {
        "zero_at": (True, True),
        "max_at": (True, False),
        "min_at": (False, True),
        "between": (False, False),
    }
    is_max, is_min = table[ideal.kind]
    return {"is_maximal": is_max, "is_minimal": is_min}


def generator(ideal: PrimeIdeal):
    """A principal generator, when one exists.

    Only the zero_at variant is principal: one everywhere except zero at
    its place.  Everything else returns NOT_PRINCIPAL.
    """
    if ideal.kind != "zero_at":
        return NOT_PRINCIPAL
    g = set_component(one_adele(ideal.field), ideal.place, ideal.field.zero())
    return g


def is_closed(ideal: PrimeIdeal) -> bool:
    """Closedness in the adele topology: exactly the zero_at variant (the
    closed-ideal correspondence by zero sets forces every other prime to
    be dense)."""
    return ideal.kind == "zero_at"


# -- levels -------------------------------------------------------------------


@dataclass(frozen=True)
class LevelIdeal:
    field: NumberField
    level: frozenset[Place]
    kind: str
    is_maximal: bool
    is_minimal: bool
    place: Place | None = None
    ultra: Ultrafilter | None = None
    beta: Adele | None = None

    def member(self, alpha: Adele) -> bool:
        return member(alpha, self._adelic())

    def _adelic(self) -> PrimeIdeal:
        return PrimeIdeal(self.field, self.kind, place=self.place,
                          ultra=self.ultra, beta=self.beta)

    def restrict(self, smaller: frozenset[Place]) -> "LevelIdeal":
        if not smaller <= self.level:
            raise InvalidLevel("restriction target must be a sub-level")
        return _level_of(self._adelic(), smaller)

    def __repr__(self):
        finite = sorted((w.p, w.index) for w in self.level if w.is_finite)
        return (f"LevelIdeal({self.kind}, S_f={finite}, "
                f"max={self.is_maximal}, min={self.is_minimal})")


def _level_of(ideal: PrimeIdeal, level: frozenset[Place]) -> LevelIdeal:
    if ideal.kind == "zero_at":
        inside = ideal.place in level
        is_max, is_min = (True, True) if inside else (False, True)
    elif ideal.kind == "max_at":
        is_max, is_min = True, False
    elif ideal.kind == "min_at":
        is_max, is_min = False, True
    else:
        is_max, is_min = False, False
    return LevelIdeal(ideal.field, level, ideal.kind, is_max, is_min,
                      ideal.place, ideal.ultra, ideal.beta)


def restrict_to_level(ideal: PrimeIdeal, level) -> LevelIdeal:
    """The finite-level ideal whose preimage in the full ring is the given
    prime; the free-ultrafilter data transfers unchanged because dropping
    finitely many places never changes a free ultrafilter's decisions."""
    level = frozenset(level)
    arch = set(archimedean_places(ideal.field))
    if not arch <= level:
        raise InvalidLevel("a level must contain every archimedean place")
    return _level_of(ideal, level)


# -- quotients, topology, density --------------------------------------------


def quotient_eval(alpha: Adele, place: Place, digits: int | None = None):
    """Image of an adele in the completion quotient at one place.

    Two adeles have the same image exactly when their difference lies in
    the zero_at ideal of the place.
    """
    if isinstance(place, ArchimedeanPlace):
        return alpha.arch_at(place)
    value = alpha.component_at(place)
    if isinstance(value, LocalElement):
        return value
    return embed(value, place, digits)


@dataclass(frozen=True)
class Constraint:
    """Requires val(x - target) >= min_valuation at the place."""

    place: FinitePlace
    target: FieldElement
    min_valuation: int


def density_witness(u: Ultrafilter, constraints=()) -> Adele:
    """An element of min_at(u) inside the neighborhood of 1 cut out by the
    constraints: zero on the ultrafilter's anchor set away from the
    constrained places, one everywhere else."""
    _require_free(u)
    field = u.field
    for c in constraints:
        if c.place.field != field:
            raise FieldMismatch("constraint at a place of a different field")
        gap = field.one() - c.target
        if gap.is_zero():
            continue
        if valuation_of_element(gap, c.place) < c.min_valuation:
            raise InconsistentNeighborhood(
                f"constraint at p={c.place.p} excludes the value 1"
            )
    region = u.anchor_set()
    for c in constraints:
        region = region.difference(place_singleton(c.place))
    out = vanishing_on(field, region)
    assert member(out, min_at(u))
    return out


@dataclass(frozen=True)
class ClosedIdeal:
    """The closed ideal of adeles vanishing on a fixed set of places."""

    field: NumberField
    finite_part: object            # a describable place set
    arch_part: tuple[ArchimedeanPlace, ...]

    def member(self, alpha: Adele) -> bool:
        if alpha.field != self.field:
            raise FieldMismatch("adele over a different field")
        if any(not alpha.arch_at(v).is_zero() for v in self.arch_part):
            return False
        zeros = membership_set(alpha, "is_zero")
        return self.finite_part.difference(zeros).is_empty()


def closed_ideal(field: NumberField, zero_on) -> ClosedIdeal:
    """Membership oracle for the closed ideal attached to a place set.

    zero_on may be a describable set of finite places or an iterable of
    places (archimedean ones allowed).
    """
    if hasattr(zero_on, "contains_place"):
        return ClosedIdeal(field, zero_on, ())
    finite, arch = [], []
    for w in zero_on:
        (arch if isinstance(w, ArchimedeanPlace) else finite).append(w)
    region = empty_set(field)
    for w in finite:
        region = region.union(place_singleton(w))
    return ClosedIdeal(field, region, tuple(sorted(arch, key=lambda v: v.index)))
