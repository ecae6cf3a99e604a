import itertools

import pytest

import oracles
from pargroup.errors import LatticeTooLarge
from pargroup.groups import (
    elements_of,
    group_abelian,
    group_cyclic,
    group_from_permutations,
    group_metacyclic_pair,
    mask_of,
)
from pargroup.lattice import subgroup_lattice


def test_small_counts():
    assert len(subgroup_lattice(group_cyclic(4))) == 3
    assert len(subgroup_lattice(group_abelian([2, 2]))) == 5
    s3 = subgroup_lattice(group_from_permutations(3, ["(1 2 3)", "(1 2)"]))
    assert s3.order_census() == {1: 1, 2: 3, 3: 1, 6: 1}


def test_z4_subgroups():
    lat = subgroup_lattice(group_cyclic(4))
    assert [h.bits for h in lat.subgroups] == [mask_of([0]), mask_of([0, 2]), mask_of([0, 1, 2, 3])]


def test_against_brute_force(medium_groups):
    for name, g in medium_groups.items():
        if g.order > 16:
            continue
        lat = subgroup_lattice(g)
        got = {frozenset(elements_of(h.bits)) for h in lat.subgroups}
        assert got == oracles.all_subgroups(oracles.table(g)), name


def test_canonical_order_and_ends(medium_groups):
    for g in medium_groups.values():
        lat = subgroup_lattice(g)
        keys = [(h.order, h.bits) for h in lat.subgroups]
        assert keys == sorted(keys) and len(set(keys)) == len(keys)
        assert lat.subgroups[lat.trivial].order == 1
        assert lat.subgroups[lat.whole].order == g.order


def test_lagrange_and_join_closure(medium_groups):
    for g in medium_groups.values():
        lat = subgroup_lattice(g)
        for h in lat.subgroups:
            assert g.order % h.order == 0
        for a, b in itertools.combinations(lat.subgroups, 2):
            join = g.generate(elements_of(a.bits | b.bits))
            assert join in lat.index
            meet = a.bits & b.bits
            assert meet in lat.index


def test_conjugate_count_is_index_of_normalizer(medium_groups):
    for name, g in medium_groups.items():
        lat = subgroup_lattice(g)
        mul = oracles.table(g)
        for i, h in enumerate(lat.subgroups):
            conjugates = oracles.subgroup_class(mul, frozenset(h.elements()))
            n = lat.subgroups[lat.normalizer[i]]
            assert len(conjugates) == g.order // n.order, (name, i)
            members = {frozenset(lat.subgroups[j].elements()) for j in lat.conj_classes[lat.class_of[i]]}
            assert members == conjugates
            assert h.bits & n.bits == h.bits


def test_commutators_and_normal_flags(medium_groups):
    for g in medium_groups.values():
        lat = subgroup_lattice(g)
        mul = oracles.table(g)
        for i, h in enumerate(lat.subgroups):
            comm = lat.subgroups[lat.commutator[i]]
            assert set(comm.elements()) == oracles.commutator(mul, h.elements())
            assert lat.is_normal(i) == (lat.normalizer[i] == lat.whole)


def test_abelian_lattice_shape():
    lat = subgroup_lattice(group_abelian([2, 6]))
    assert all(len(c) == 1 for c in lat.conj_classes)
    assert all(n == lat.whole for n in lat.normalizer)


def test_inclusion(medium_groups):
    for g in medium_groups.values():
        lat = subgroup_lattice(g)
        for i, a in enumerate(lat.subgroups):
            above = {j for j, b in enumerate(lat.subgroups) if j != i and set(a.elements()) <= set(b.elements())}
            assert set(lat.supergroups[i].tolist()) == above
            assert all(lat.contains(j, i) for j in above) and lat.contains(i, i)


def test_elementary_abelian_64():
    # subspaces of F_2^6: sum of Gaussian binomials
    lat = subgroup_lattice(group_abelian([2] * 6))
    expected = sum(oracles.gaussian_binomial(6, k, 2) for k in range(7))
    assert expected == 2825
    assert len(lat) == expected


def test_order_605_census():
    lat = subgroup_lattice(group_metacyclic_pair(11, 5, 3, 9))
    census = lat.order_census()
    assert census == {1: 1, 5: 121, 11: 12, 55: 22, 121: 1, 605: 1}
    # Sylow count: n_5 = 121 and n_11 = 1 for the unique Sylow 11; 12 subgroups
    # of order 11 inside Z11 x Z11; 22 = 2 * 11 nonabelian subgroups of order 55
    assert len(lat) == 1 + 12 + 121 + 22 + 1 + 1 == 158


def test_lattice_cap():
    with pytest.raises(LatticeTooLarge):
        subgroup_lattice(group_abelian([2, 2, 2]), max_subgroups=5)
