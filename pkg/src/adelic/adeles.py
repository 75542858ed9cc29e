"""Finite-data elements of the adele ring of a number field.

An adele stores exact field elements at the archimedean places, a finite
exceptional map at finitely many finite places, and a piecewise tail: a
default polynomial in the formal uniformizer symbol, overridden on
finitely many disjoint describable regions by other such polynomials.  The
symbol evaluates at each finite place to that place's canonical
uniformizer (p when unramified, the lifted factor at the generator when
ramified), which is the image of a field element, so every component is
exact field data and valuations are certified integers.

Because nonzero tail coefficients are units at all but finitely many
places, the valuation of a tail is its lowest nonzero degree at almost
every place of its region; the finitely many deviating places sit above
primes dividing coefficient numerator norms or denominators and are
corrected pointwise.  That is what makes the zero set and the maximal-
ideal membership set of an adele describable, hence usable in ultrafilter
queries.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from sympy import factorint

from .errors import FieldMismatch
from .localfields import (
    INF,
    LocalElement,
    embed,
    local_add,
    local_mul,
    local_neg,
    uniformizer_element,
    valuation_of_element,
)
from .numberfields import FieldElement, NumberField, RATIONALS, parse_element
from .places import (
    ArchimedeanPlace,
    FinitePlace,
    archimedean_places,
    excluded_primes,
    factor_prime,
)
from .placesets import (
    empty_kset,
    empty_qset,
    everything_kset,
    all_primes,
    finite_kset,
    finite_qset,
    parse_kset,
    parse_qset,
)

Component = FieldElement | LocalElement


def everything_set(field: NumberField):
    return all_primes() if field == RATIONALS else everything_kset(field)


def empty_set(field: NumberField):
    return empty_qset() if field == RATIONALS else empty_kset(field)


def place_singleton(w: FinitePlace):
    if w.field == RATIONALS:
        return finite_qset([w.p])
    return finite_kset(w.field, [w])


@dataclass(frozen=True)
class TailPoly:
    """Polynomial in the formal uniformizer with field coefficients."""

    field: NumberField
    coeffs: tuple[FieldElement, ...]

    @staticmethod
    def make(field: NumberField, coeffs) -> "TailPoly":
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        return TailPoly(field, tuple(cs))

    @staticmethod
    def constant(x: FieldElement) -> "TailPoly":
        return TailPoly.make(x.field, [x])

    @staticmethod
    def zero(field: NumberField) -> "TailPoly":
        return TailPoly(field, ())

    @staticmethod
    def uniformizer_power(field: NumberField, k: int) -> "TailPoly":
        return TailPoly.make(field, [field.zero()] * k + [field.one()])

    def is_zero(self) -> bool:
        return not self.coeffs

    def min_degree(self) -> int | float:
        """Lowest degree with a nonzero coefficient; INF for the zero tail.

        At every place where all nonzero coefficients are units this is the
        exact valuation of the evaluated tail."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        return INF

    def add(self, other: "TailPoly") -> "TailPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        zero = self.field.zero()
        return TailPoly.make(self.field, [
            (self.coeffs[i] if i < len(self.coeffs) else zero)
            + (other.coeffs[i] if i < len(other.coeffs) else zero)
            for i in range(n)
        ])

    def mul(self, other: "TailPoly") -> "TailPoly":
        if self.is_zero() or other.is_zero():
            return TailPoly.zero(self.field)
        zero = self.field.zero()
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TailPoly.make(self.field, out)

    def neg(self) -> "TailPoly":
        return TailPoly(self.field, tuple(-c for c in self.coeffs))

    def value_at(self, w: FinitePlace) -> FieldElement:
        """Exact field element the tail takes at a finite place."""
        u = uniformizer_element(w)
        out = self.field.zero()
        for c in reversed(self.coeffs):
            out = out * u + c
        return out

    def suspect_primes(self) -> set[int]:
        """Primes above which some nonzero coefficient may be a non-unit."""
        out: set[int] = set()
        for c in self.coeffs:
            if not c.is_zero():
                out.update(_element_suspects(c))
        return out

    def to_text(self) -> str:
        return "&".join(c.to_text() for c in self.coeffs)

    def __repr__(self):
        return f"Tail({self.to_text() or '0'})"


@lru_cache(maxsize=None)
def _supported_divisors(field: NumberField, n: int) -> tuple[int, ...]:
    return tuple(
        p for p in sorted(factorint(abs(n)).keys())
        if p not in excluded_primes(field)
    )


def _element_suspects(c: FieldElement) -> set[int]:
    field = c.field
    out: set[int] = set()
    den = c.denominator()
    if den != 1:
        out.update(_supported_divisors(field, den))
    num = c.scaled_integer_numerator()
    from . import polynomials as poly

    res = poly.resultant_int(field.coeffs, num)
    if abs(res) != 1:
        out.update(_supported_divisors(field, res))
    return out


@dataclass(frozen=True)
class Adele:
    """A finite-data adele; see the module docstring for the layout."""

    field: NumberField
    arch: tuple[FieldElement, ...]
    exceptional: tuple[tuple[FinitePlace, Component], ...]
    overrides: tuple[tuple[object, TailPoly], ...]
    tail: TailPoly

    # -- component access --------------------------------------------------

    def exceptional_map(self) -> dict[FinitePlace, Component]:
        return dict(self.exceptional)

    def component_at(self, w: FinitePlace) -> Component:
        """The exact component at a finite place."""
        if w.field != self.field:
            raise FieldMismatch("place of a different field")
        for place, value in self.exceptional:
            if place == w:
                return value
        for region, tail in self.overrides:
            if region.contains_place(w):
                return tail.value_at(w)
        return self.tail.value_at(w)

    def arch_at(self, v: ArchimedeanPlace) -> FieldElement:
        if v.field != self.field:
            raise FieldMismatch("place of a different field")
        return self.arch[v.index]

    def valuation_at(self, w: FinitePlace) -> int | float:
        """Exact valuation of the component at a finite place (INF at an
        exact zero)."""
        value = self.component_at(w)
        if isinstance(value, LocalElement):
            return value.valuation
        return valuation_of_element(value, w)

    # -- ring structure ----------------------------------------------------

    def _check(self, other: "Adele") -> None:
        if self.field != other.field:
            raise FieldMismatch("adeles over different fields")

    def add(self, other: "Adele") -> "Adele":
        self._check(other)
        return _combine(self, other, lambda a, b: a + b, local_add,
                        lambda s, t: s.add(t))

    def mul(self, other: "Adele") -> "Adele":
        self._check(other)
        return _combine(self, other, lambda a, b: a * b, local_mul,
                        lambda s, t: s.mul(t))

    def neg(self) -> "Adele":
        arch = tuple(-x for x in self.arch)
        exceptional = tuple(
            (w, -v if isinstance(v, FieldElement) else local_neg(v))
            for w, v in self.exceptional
        )
        overrides = tuple((r, t.neg()) for r, t in self.overrides)
        return Adele(self.field, arch, exceptional, overrides, self.tail.neg())

    def sub(self, other: "Adele") -> "Adele":
        return self.add(other.neg())

    # -- global views ------------------------------------------------------

    def suspect_primes(self) -> set[int]:
        out = {w.p for w, _ in self.exceptional}
        out |= self.tail.suspect_primes()
        for _, t in self.overrides:
            out |= t.suspect_primes()
        return out

    def membership_set(self, predicate: str):
        """The describable set where the component is zero / in the maximal
        ideal of the local ring.

        predicate: "is_zero" (valuation INF) or "in_m" (valuation >= 1).
        """
        if predicate not in ("is_zero", "in_m"):
            raise ValueError(f"unknown predicate {predicate!r}")

        def holds(val) -> bool:
            return val == INF if predicate == "is_zero" else val >= 1

        out = empty_set(self.field)
        rest = everything_set(self.field)
        for region, tail in self.overrides:
            rest = rest.difference(region)
            if holds(tail.min_degree()):
                out = out.union(region)
        if holds(self.tail.min_degree()):
            out = out.union(rest)
        # pointwise corrections above suspect primes
        for p in sorted(self.suspect_primes()):
            for w in factor_prime(self.field, p):
                actual = holds(self.valuation_at(w))
                if actual and not out.contains_place(w):
                    out = out.union(place_singleton(w))
                elif not actual and out.contains_place(w):
                    out = out.difference(place_singleton(w))
        return out

    def non_integral_places(self) -> list[FinitePlace]:
        out = []
        for p in sorted(self.suspect_primes()):
            for w in factor_prime(self.field, p):
                if self.valuation_at(w) < 0:
                    out.append(w)
        return out

    def equals(self, other: "Adele") -> bool:
        """Exact componentwise equality (finite-precision components agree
        up to their shared certified digits)."""
        self._check(other)
        if self.arch != other.arch:
            return False
        places = {w for w, _ in self.exceptional} | {w for w, _ in other.exceptional}
        for w in places:
            if not _component_eq(self.component_at(w), other.component_at(w), w):
                return False
        for ra, ta in list(self.overrides) + [(None, self.tail)]:
            for rb, tb in list(other.overrides) + [(None, other.tail)]:
                region = _region_meet(self, ra, other, rb)
                if region.is_empty() or ta.coeffs == tb.coeffs:
                    continue
                if region.is_structurally_finite():
                    # only finitely many places carry these two tails;
                    # compare them one by one
                    for w in region.finite_places():
                        if w in places:
                            continue
                        if not _component_eq(self.component_at(w),
                                             other.component_at(w), w):
                            return False
                else:
                    # tails differing as polynomials differ at every region
                    # place where all their coefficients are units, and an
                    # infinite region has such places
                    return False
        return True

    def to_text(self) -> str:
        arch = "|".join(x.to_text() for x in self.arch)
        exc = ";".join(
            f"{w.p}:{w.index}={_component_text(v)}"
            for w, v in sorted(self.exceptional, key=lambda t: (t[0].p, t[0].index))
        )
        ovr = "||".join(
            f"{region.to_text()}->{tail.to_text()}"
            for region, tail in sorted(self.overrides, key=lambda t: t[0].to_text())
        )
        f = ",".join(str(c) for c in self.field.coeffs)
        return (f"adele{{field[{f}] arch[{arch}] exc[{exc}] "
                f"ovr[{ovr}] tail[{self.tail.to_text()}]}}")

    def __repr__(self):
        return self.to_text()


@lru_cache(maxsize=8192)
def membership_set(alpha: Adele, predicate: str):
    """Cached front door for Adele.membership_set; adeles are immutable,
    and the property-test loops ask for the same sets repeatedly."""
    return alpha.membership_set(predicate)


def _component_eq(a: Component, b: Component, w: FinitePlace) -> bool:
    if isinstance(a, FieldElement) and isinstance(b, FieldElement):
        return a == b
    pa = a if isinstance(a, LocalElement) else embed(a, w)
    pb = b if isinstance(b, LocalElement) else embed(b, w)
    return pa.agrees(pb)


def _region_meet(a: "Adele", ra, b: "Adele", rb):
    """Intersection of two (possibly default) regions of two adeles."""
    if ra is None:
        left = everything_set(a.field)
        for r, _ in a.overrides:
            left = left.difference(r)
    else:
        left = ra
    if rb is None:
        right = everything_set(b.field)
        for r, _ in b.overrides:
            right = right.difference(r)
    else:
        right = rb
    return left.intersect(right)


def _component_text(v: Component) -> str:
    if isinstance(v, FieldElement):
        return v.to_text()
    if v.is_zero:
        return "loc:zero"
    return f"loc:{v.valuation}:{','.join(str(c) for c in v.unit)}:{v.precision}"


def _combine(a: Adele, b: Adele, field_op, local_op, tail_op) -> Adele:
    arch = tuple(field_op(x, y) for x, y in zip(a.arch, b.arch))
    places = sorted(
        {w for w, _ in a.exceptional} | {w for w, _ in b.exceptional},
        key=lambda w: (w.p, w.index),
    )
    exceptional = []
    for w in places:
        x, y = a.component_at(w), b.component_at(w)
        if isinstance(x, FieldElement) and isinstance(y, FieldElement):
            exceptional.append((w, field_op(x, y)))
        else:
            lx = x if isinstance(x, LocalElement) else embed(x, w)
            ly = y if isinstance(y, LocalElement) else embed(y, w)
            exceptional.append((w, local_op(lx, ly)))
    pieces_a = list(a.overrides) + [(None, a.tail)]
    pieces_b = list(b.overrides) + [(None, b.tail)]
    overrides = []
    default_tail = None
    for ra, ta in pieces_a:
        for rb, tb in pieces_b:
            combined = tail_op(ta, tb)
            if ra is None and rb is None:
                default_tail = combined
                continue
            region = _region_meet(a, ra, b, rb)
            if region.is_empty():
                continue
            overrides.append((region, combined))
    # drop overrides indistinguishable from the default
    overrides = [(r, t) for r, t in overrides if t.coeffs != default_tail.coeffs]
    return Adele(a.field, arch, tuple(exceptional), tuple(overrides), default_tail)


# -- constructors -----------------------------------------------------------


def diagonal(x: FieldElement) -> Adele:
    """The image of a field element on every component."""
    field = x.field
    arch = tuple(x for _ in archimedean_places(field))
    out = Adele(field, arch, (), (), TailPoly.constant(x))
    bad = tuple((w, x) for w in out.non_integral_places())
    return Adele(field, arch, bad, (), TailPoly.constant(x))


def diagonal_rational(field: NumberField, q) -> Adele:
    return diagonal(field.element(q))


def uniformizer_adele(field: NumberField) -> Adele:
    """Valuation exactly one at every finite place."""
    return Adele(
        field,
        tuple(field.one() for _ in archimedean_places(field)),
        (),
        (),
        TailPoly.uniformizer_power(field, 1),
    )


def zero_adele(field: NumberField) -> Adele:
    return diagonal(field.zero())


def one_adele(field: NumberField) -> Adele:
    return diagonal(field.one())


def vanishing_on(field: NumberField, region) -> Adele:
    """Component zero on the region, one everywhere else."""
    if region.is_empty():
        return one_adele(field)
    return Adele(
        field,
        tuple(field.one() for _ in archimedean_places(field)),
        (),
        ((region, TailPoly.zero(field)),),
        TailPoly.constant(field.one()),
    )


def set_component(a: Adele, place, value) -> Adele:
    """Replace one component; the last write wins."""
    if isinstance(place, ArchimedeanPlace):
        if not isinstance(value, FieldElement):
            raise ValueError("archimedean components are exact field elements")
        arch = list(a.arch)
        arch[place.index] = value
        return Adele(a.field, tuple(arch), a.exceptional, a.overrides, a.tail)
    exceptional = [(w, v) for w, v in a.exceptional if w != place]
    exceptional.append((place, value))
    exceptional.sort(key=lambda t: (t[0].p, t[0].index))
    return Adele(a.field, a.arch, tuple(exceptional), a.overrides, a.tail)


def make_adele(field: NumberField, arch=None, exceptional=(), overrides=(),
               tail: TailPoly | None = None) -> Adele:
    if arch is None:
        arch = tuple(field.zero() for _ in archimedean_places(field))
    if tail is None:
        tail = TailPoly.zero(field)
    exceptional = tuple(sorted(exceptional, key=lambda t: (t[0].p, t[0].index)))
    return Adele(field, tuple(arch), exceptional, tuple(overrides), tail)


def parse_adele(text: str) -> Adele:
    if not (text.startswith("adele{") and text.endswith("}")):
        raise ValueError(f"bad adele text: {text!r}")
    body = text[6:-1]

    def block(key):
        start = body.index(key + "[") + len(key) + 1
        depth = 1
        i = start
        while depth:
            if body[i] == "[":
                depth += 1
            elif body[i] == "]":
                depth -= 1
            i += 1
        return body[start:i - 1]

    field = NumberField(tuple(int(c) for c in block("field").split(",")))
    arch = tuple(
        parse_element(field, t) for t in block("arch").split("|") if t
    )
    exceptional = []
    for chunk in block("exc").split(";"):
        if not chunk:
            continue
        left, value = chunk.split("=", 1)
        p, idx = (int(t) for t in left.split(":"))
        w = factor_prime(field, p)[idx]
        if value.startswith("loc:"):
            raise ValueError("finite-precision components do not round-trip")
        exceptional.append((w, parse_element(field, value)))
    overrides = []
    ovr = block("ovr")
    for item in ovr.split("||") if ovr else []:
        arrow = item.rindex("->")
        region_text, tail_text = item[:arrow], item[arrow + 2:]
        region = parse_qset(region_text) if region_text.startswith("q{") \
            else parse_kset(region_text)
        coeffs = [parse_element(field, t) for t in tail_text.split("&") if t]
        overrides.append((region, TailPoly.make(field, coeffs)))
    tail_coeffs = [
        parse_element(field, t) for t in block("tail").split("&") if t
    ]
    return make_adele(field, arch, exceptional, overrides,
                      TailPoly.make(field, tail_coeffs))
