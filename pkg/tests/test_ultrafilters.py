import random
import warnings

import pytest

from adelic.errors import FieldMismatch, NotAPartition, NotMember
from adelic.numberfields import RATIONALS
from adelic.places import factor_prime, place_above
from adelic.placesets import (
    all_primes,
    class_atom,
    cofinite_qset,
    empty_qset,
    finite_qset,
    full_preimage,
)
from adelic.ultrafilters import (
    FreeKUltrafilter,
    PrincipalUltrafilter,
    distinguishing_witness,
    free_cofinite,
    free_on_atom,
    lifts,
    partition_pick,
    pushforward,
    section_refine,
)

from conftest import CUBE2, CYCLO5, GAUSS, ROOT5
from gen import random_kset, random_qset


def catalogue_ultrafilters():
    """At least ten ultrafilters: principal and free, base and lifted."""
    out = [PrincipalUltrafilter(place_above(RATIONALS, p)) for p in (2, 3, 5, 7, 13)]
    split = free_on_atom(GAUSS, ((1, 1), (1, 1)), "split")
    inert = free_on_atom(GAUSS, ((1, 2),), "inert")
    out += [
        split,
        inert,
        free_cofinite(),
        free_on_atom(CUBE2, ((1, 1), (1, 1), (1, 1)), "cube-split"),
        free_on_atom(CYCLO5, ((1, 4),), "cyclo-inert"),
    ]
    out += [FreeKUltrafilter(GAUSS, split, 1), FreeKUltrafilter(GAUSS, split, 2)]
    out.append(PrincipalUltrafilter(place_above(GAUSS, 5, 0)))
    return out


def _random_set_for(u, rng):
    if u.field == RATIONALS:
        return random_qset(rng)
    return random_kset(u.field, rng)


def test_axioms_on_random_sets():
    rng = random.Random(42)
    for u in catalogue_ultrafilters():
        for _ in range(60):
            s = _random_set_for(u, rng)
            t = _random_set_for(u, rng)
            empty = s.intersect(s.complement())
            assert not u.contains(empty)                       # axiom 1
            if u.contains(s) and u.contains(t):
                assert u.contains(s.intersect(t))              # axiom 2
            if u.contains(s):
                assert u.contains(s.union(t))                  # axiom 3 (upward)
            assert u.contains(s) != u.contains(s.complement())  # axiom 4


def test_free_ultrafilters_reject_finite_contain_cofinite():
    split = free_on_atom(GAUSS, ((1, 1), (1, 1)))
    assert not split.contains(finite_qset([5, 13, 17, 29]))
    assert not split.contains(empty_qset())
    assert split.contains(cofinite_qset([5, 13]))
    assert split.contains(all_primes())
    atom = split.anchor_set()
    assert split.contains(atom)
    assert split.contains(atom.difference(finite_qset([5])))


def test_principal_semantics():
    u = PrincipalUltrafilter(place_above(RATIONALS, 5))
    assert u.contains(finite_qset([5]))
    assert not u.contains(finite_qset([7]))
    assert u.contains(cofinite_qset([7]))
    assert not u.contains(cofinite_qset([5]))


def test_contains_complement_duality_thousand():
    rng = random.Random(77)
    split = free_on_atom(GAUSS, ((1, 1), (1, 1)))
    for _ in range(200):
        s = random_qset(rng)
        assert split.contains(s) != split.contains(s.complement())


def test_partition_pick():
    split_atom = class_atom(GAUSS, ((1, 1), (1, 1)))
    inert_atom = class_atom(GAUSS, ((1, 2),))
    rest = split_atom.union(inert_atom).complement()
    parts = [split_atom, inert_atom, rest]
    assert partition_pick(free_on_atom(GAUSS, ((1, 1), (1, 1))), parts) == 0
    assert partition_pick(free_on_atom(GAUSS, ((1, 2),)), parts) == 1
    assert partition_pick(PrincipalUltrafilter(place_above(RATIONALS, 7)), parts) == 1
    assert partition_pick(PrincipalUltrafilter(place_above(RATIONALS, 2)), parts) == 2
    with pytest.raises(NotAPartition):
        partition_pick(free_cofinite(), [split_atom, split_atom])
    with pytest.raises(NotAPartition):
        partition_pick(free_cofinite(), [split_atom, inert_atom])


def test_random_partitions_pick_exactly_one():
    rng = random.Random(4)
    us = catalogue_ultrafilters()
    for _ in range(120):
        u = rng.choice([x for x in us if x.field == RATIONALS])
        chunks = [random_qset(rng, 2) for _ in range(rng.randint(1, 3))]
        parts = []
        covered = empty_qset()
        for c in chunks:
            piece = c.difference(covered)
            covered = covered.union(c)
            if not piece.is_empty():
                parts.append(piece)
        remainder = covered.complement()
        if not remainder.is_empty():
            parts.append(remainder)
        hits = [i for i, s in enumerate(parts) if u.contains(s)]
        assert len(hits) == 1
        assert partition_pick(u, parts) == hits[0]


def test_lift_counts():
    split = free_on_atom(GAUSS, ((1, 1), (1, 1)))
    inert = free_on_atom(GAUSS, ((1, 2),))
    assert len(lifts(split, GAUSS)) == 2
    assert len(lifts(inert, GAUSS)) == 1
    full = free_on_atom(CUBE2, ((1, 1), (1, 1), (1, 1)))
    assert len(lifts(full, CUBE2)) == 3
    mixed = free_on_atom(CUBE2, ((1, 1), (1, 2)))
    assert len(lifts(mixed, CUBE2)) == 2
    principal13 = PrincipalUltrafilter(place_above(RATIONALS, 13))
    assert len(lifts(principal13, GAUSS)) == 2
    principal7 = PrincipalUltrafilter(place_above(RATIONALS, 7))
    assert len(lifts(principal7, GAUSS)) == 1
    for field in (GAUSS, ROOT5, CUBE2, CYCLO5):
        for u in (free_cofinite(), split, inert):
            assert len(lifts(u, field)) <= field.degree


def test_lifts_are_distinct_with_witnesses():
    split = free_on_atom(GAUSS, ((1, 1), (1, 1)))
    ups = lifts(split, GAUSS)
    assert ups[0] != ups[1]
    w = distinguishing_witness(ups[0], ups[1])
    assert w is not None and ups[0].contains(w) and not ups[1].contains(w)
    full = free_on_atom(CUBE2, ((1, 1), (1, 1), (1, 1)))
    ups3 = lifts(full, CUBE2)
    for i in range(3):
        for j in range(3):
            if i != j:
                w = distinguishing_witness(ups3[i], ups3[j])
                assert w is not None
                assert ups3[i].contains(w) and not ups3[j].contains(w)


def test_pushforward_inverts_lifts():
    for base in (
        free_on_atom(GAUSS, ((1, 1), (1, 1))),
        free_on_atom(GAUSS, ((1, 2),)),
        free_cofinite(),
        PrincipalUltrafilter(place_above(RATIONALS, 13)),
    ):
        for field in (GAUSS, CUBE2):
            for up in lifts(base, field):
                assert pushforward(up) == base


def test_pushforward_respects_preimages():
    rng = random.Random(31)
    split = free_on_atom(GAUSS, ((1, 1), (1, 1)))
    for up in lifts(split, GAUSS):
        for _ in range(30):
            s = random_qset(rng, 2)
            assert pushforward(up).contains(s) == up.contains(full_preimage(GAUSS, s))
    w = place_above(GAUSS, 13, 1)
    up = PrincipalUltrafilter(w)
    assert pushforward(up) == PrincipalUltrafilter(place_above(RATIONALS, 13))


def test_identity_extension():
    split = free_on_atom(GAUSS, ((1, 1), (1, 1)))
    assert lifts(split, RATIONALS) == [split]
    assert pushforward(split) == split


def test_padding_collapses_high_positions():
    inert = free_on_atom(GAUSS, ((1, 2),))
    high = FreeKUltrafilter(GAUSS, inert, 2)
    low = FreeKUltrafilter(GAUSS, inert, 1)
    assert high == low
    assert high.effective_position == 1


def test_section_refine():
    split = free_on_atom(GAUSS, ((1, 1), (1, 1)))
    up = lifts(split, GAUSS)[1]
    big = full_preimage(GAUSS, split.anchor_set())
    refined = section_refine(up, big)
    assert up.contains(refined)
    for p in (5, 13, 17, 29):
        fiber = factor_prime(GAUSS, p)
        assert sum(1 for w in fiber if refined.contains_place(w)) <= 1
    already = up.section_set().intersect(big)
    assert section_refine(up, already) == already
    with pytest.raises(NotMember):
        section_refine(up, finite_qset([5]) and full_preimage(GAUSS, finite_qset([5])))


def test_field_mismatch():
    split = free_on_atom(GAUSS, ((1, 1), (1, 1)))
    with pytest.raises(FieldMismatch):
        split.contains(full_preimage(GAUSS, all_primes()))
    up = lifts(split, GAUSS)[0]
    with pytest.raises(FieldMismatch):
        up.contains(all_primes())


def test_sparse_atom_warns():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        free_on_atom(GAUSS, ((2, 1),))
    assert any("sparsely witnessed" in str(w.message) for w in caught)
