from collections import Counter

import pytest

import oracles
from pargroup.decomp import (
    CharacterDegreeProfile,
    b_coeff,
    b_table,
    beta_m,
    binomial,
    center_dimension,
    closed_form,
    compare_decompositions,
    decompose_direct,
    decompose_formula,
    degree_profile,
    dim_partial_algebra,
    gamma_m,
    multiplicity_formula,
    multiplicity_preconditions,
    signature,
    solve_degrees,
    subgroup_degree_profile,
    wedderburn_expand,
)
from pargroup.errors import AmbiguousDegrees, NonIntegralMultiplicity, PreconditionViolated
from pargroup.groups import group_abelian, group_cyclic, group_from_permutations, group_metacyclic_pair, mask_of
from pargroup.lattice import subgroup_lattice
from pargroup.survey import enumerate_abelian
from pargroup.zoo import zoo_group


def formula(g):
    return decompose_formula(g, subgroup_lattice(g))


def by_order(d):
    """Block census keyed by ``(m, |H|)``."""
    out = Counter()
    for b in d.blocks:
        out[(b.m, b.order)] += b.multiplicity
    return dict(out)


# golden profiles; the S3 and Z6 ones are the worked examples for groups of order 6
GOLDEN = {
    "Z4": {1: 7, 2: 1, 3: 1},
    "Z2xZ2": {1: 11, 3: 1},
    "Z6": {1: 12, 2: 4, 3: 3, 4: 2, 5: 1},
    "S3": {1: 12, 2: 8, 3: 3, 4: 1, 5: 1},
}


class TestGolden:
    @pytest.mark.parametrize("name", sorted(GOLDEN))
    def test_profiles(self, name):
        assert wedderburn_expand(formula(zoo_group(name))).as_dict() == GOLDEN[name]

    def test_center_dimensions(self):
        assert center_dimension(formula(zoo_group("Z6"))) == 22
        assert center_dimension(formula(zoo_group("S3"))) == 25

    def test_center_abelian(self):
        d = formula(group_abelian([2, 4]))
        assert center_dimension(d) == sum(b.multiplicity * b.order for b in d.blocks)

    def test_dim_examples(self):
        assert [dim_partial_algebra(n) for n in (1, 4, 6)] == [1, 20, 112]
        assert 12 + 16 + 27 + 32 + 25 == 112  # squares of the Z6 profile

    def test_direct_z4(self):
        assert by_order(decompose_direct(group_cyclic(4))) == {(1, 1): 1, (2, 1): 1, (3, 1): 1, (1, 2): 1, (1, 4): 1}

    def test_direct_klein(self):
        assert by_order(decompose_direct(group_abelian([2, 2]))) == {(1, 1): 1, (3, 1): 1, (1, 2): 3, (1, 4): 1}

    def test_direct_s3(self):
        got = by_order(decompose_direct(zoo_group("S3")))
        assert got == {
            (1, 1): 1, (2, 1): 1, (3, 1): 3, (4, 1): 1, (5, 1): 1,
            (1, 2): 3, (1, 3): 1, (2, 2): 3, (1, 6): 1,
        }

    def test_zp_formula(self):
        # K + 2 M2 + 2 M3 + M4 over the trivial group, plus K Z5
        assert by_order(formula(group_cyclic(5))) == {(1, 1): 1, (2, 1): 2, (3, 1): 2, (4, 1): 1, (1, 5): 1}


class TestOracleEquivalence:
    def test_small(self, small_groups):
        for name, g in small_groups.items():
            lat = subgroup_lattice(g)
            d1, d2 = decompose_direct(g, lat), decompose_formula(g, lat)
            assert d1.key() == d2.key(), name

    def test_against_brute_components(self, small_groups):
        for name, g in small_groups.items():
            mul = oracles.table(g)
            d = decompose_direct(g)
            got = Counter()
            for b in d.blocks:
                h = frozenset(d.lattice.subgroups[b.subgroup].elements())
                got[(b.m, oracles.subgroup_class(mul, h))] += b.multiplicity
            assert got == oracles.component_census(mul), name

    @pytest.mark.parametrize("name", ["Z16", "S4", "Z2xZ2xZ4", "Z3xS3"])
    def test_medium_formula_vs_direct(self, medium_groups, name):
        g = medium_groups[name]
        lat = subgroup_lattice(g)
        assert decompose_direct(g, lat, bound=24).key() == decompose_formula(g, lat).key()

    def test_bookkeeping(self, medium_groups):
        for name, g in medium_groups.items():
            n = g.order
            d = formula(g)
            assert d.dimension() == dim_partial_algebra(n), name
            assert wedderburn_expand(d).dimension() == dim_partial_algebra(n)
            assert d.level_counts() == {k: binomial(n - 1, k - 1) for k in range(1, n + 1)}
            blocks = {(b.m, b.order): b.multiplicity for b in d.blocks}
            assert blocks.get((1, 1), 0) >= 1 and blocks[(1, n)] == 1
            for b in d.blocks:
                assert b.m * b.order <= n and n % b.order == 0


class TestRecursion:
    def test_b_examples(self):
        z4 = subgroup_lattice(group_cyclic(4))
        assert b_coeff(z4, z4.whole, 1) == 1
        assert b_coeff(z4, z4.index_of(mask_of([0, 2])), 1) == 1
        assert b_coeff(z4, z4.trivial, 2) == 2
        klein = subgroup_lattice(group_abelian([2, 2]))
        for i, h in enumerate(klein.subgroups):
            if h.order == 2:
                assert b_coeff(klein, i, 1) == 1

    def test_b_matches_stabilizer_census(self, small_groups):
        for g in small_groups.values():
            lat = subgroup_lattice(g)
            mul = oracles.table(g)
            census = Counter()
            for comp in oracles.groupoid_components(mul):
                for a in comp:
                    census[(len(a), oracles.stabilizer(mul, a))] += 1
            for i, h in enumerate(lat.subgroups):
                hs = frozenset(h.elements())
                for m in range(1, g.order // h.order + 1):
                    assert b_coeff(lat, i, m) == census.get((m * h.order, hs), 0)

    def test_class_divisibility(self, medium_groups):
        for g in medium_groups.values():
            lat = subgroup_lattice(g)
            table = b_table(lat)
            for members in lat.conj_classes:
                for m in range(1, g.order + 1):
                    total = sum(table[i][m] if m < len(table[i]) else 0 for i in members)
                    assert total % m == 0

    def test_beta_gamma(self):
        klein = subgroup_lattice(group_abelian([2, 2]))
        assert gamma_m(klein.group, klein, 2) == 3 and beta_m(klein.group, klein, 2) == 6
        s3 = subgroup_lattice(zoo_group("S3"))
        assert beta_m(s3.group, s3, 2) == 6
        z7 = subgroup_lattice(group_cyclic(7))
        assert all(beta_m(z7.group, z7, m) == 0 for m in range(2, 7))
        for t in enumerate_abelian(24):
            lat = subgroup_lattice(group_abelian(t.invariants))
            for m in (1, 2, 3, 4, 6, 8, 12, 24):
                assert beta_m(lat.group, lat, m) == m * gamma_m(lat.group, lat, m)


class TestMultiplicity:
    def test_examples(self):
        for g, size in ((group_cyclic(4), 3), (group_cyclic(6), 5), (group_abelian([2, 2]), 3)):
            assert multiplicity_formula(g, subgroup_lattice(g), 1) == 1
            assert wedderburn_expand(formula(g)).count(size) == 1

    @pytest.mark.parametrize(
        "n,k,reason",
        [(12, 5, "NotDivisor"), (12, 6, "OrderTwiceK"), (12, 4, "PrimeCondition"), (12, 12, "PrimeCondition")],
    )
    def test_preconditions(self, n, k, reason):
        with pytest.raises(PreconditionViolated) as info:
            multiplicity_preconditions(n, k)
        assert info.value.reason == reason

    def test_against_profile_abelian_up_to_36(self):
        checked = 0
        for n in range(2, 37):
            for t in enumerate_abelian(n):
                g = group_abelian(t.invariants)
                lat = subgroup_lattice(g)
                prof = wedderburn_expand(decompose_formula(g, lat))
                for k in range(1, n + 1):
                    try:
                        multiplicity_preconditions(n, k)
                    except PreconditionViolated:
                        continue
                    assert multiplicity_formula(g, lat, k) == prof.count(n // k - 1), (t, k)
                    checked += 1
        assert checked > 50

    def test_nonabelian(self):
        g = zoo_group("S3")
        assert multiplicity_formula(g, subgroup_lattice(g), 1) == GOLDEN["S3"][5]


class TestDegrees:
    def test_solver(self):
        assert solve_degrees(6, 3, 2) == [{1: 2, 2: 1}]
        assert solve_degrees(605, 29, 5) == [{1: 5, 5: 24}]
        assert solve_degrees(55, 7, 5) == [{1: 5, 5: 2}]
        assert solve_degrees(7, 3, 2) == []

    def test_known_tables(self):
        # standard character degrees
        known = {
            "S3": {1: 2, 2: 1}, "D4": {1: 4, 2: 1}, "Q8": {1: 4, 2: 1}, "A4": {1: 3, 3: 1},
            "D5": {1: 2, 2: 2}, "D6": {1: 4, 2: 2}, "Dic3": {1: 4, 2: 2}, "Z6": {1: 6},
        }
        for name, degs in known.items():
            prof = degree_profile(zoo_group(name))
            assert prof.as_dict() == degs
            assert prof.order == zoo_group(name).order

    def test_order_605(self):
        g = group_metacyclic_pair(11, 5, 3, 9)
        lat = subgroup_lattice(g)
        assert subgroup_degree_profile(lat, lat.whole).as_dict() == {1: 5, 5: 24}
        for i, h in enumerate(lat.subgroups):
            if h.order == 55:
                assert subgroup_degree_profile(lat, i).as_dict() == {1: 5, 5: 2}

    def test_ambiguous_and_override(self):
        s5 = group_from_permutations(5, ["(1 2 3 4 5)", "(1 2)"])
        with pytest.raises(AmbiguousDegrees) as info:
            degree_profile(s5)
        assert info.value.fingerprint == (120, 7, 2)
        assert len(info.value.solutions) == 2
        prof = degree_profile(s5, {(120, 7, 2): {1: 2, 4: 2, 5: 2, 6: 1}})
        assert prof == CharacterDegreeProfile.from_dict({1: 2, 4: 2, 5: 2, 6: 1})


class TestClosedForms:
    def test_families(self):
        cases = [("Zp", p, None, group_cyclic(p)) for p in (2, 3, 5, 7, 11, 13)]
        cases += [("ZpZp", p, None, group_abelian([p, p])) for p in (2, 3, 5)]
        cases += [("Zp2", p, None, group_cyclic(p * p)) for p in (2, 3, 5)]
        cases += [
            ("Zpq", p, q, group_cyclic(p * q))
            for p, q in ((2, 3), (2, 5), (2, 7), (2, 11), (2, 13), (2, 17), (3, 5), (3, 7), (3, 11), (5, 7))
        ]
        for fam, p, q, g in cases:
            cf = closed_form(fam, p, q)
            d = formula(g)
            assert signature(cf) == signature(d), (fam, p, q)
            assert by_order(cf) == by_order(d)
            assert wedderburn_expand(cf) == wedderburn_expand(d)

    def test_bad_parameters(self):
        with pytest.raises(ValueError):
            closed_form("Zpq", 3, 3)
        with pytest.raises(ValueError):
            closed_form("nope", 3)
        with pytest.raises(NonIntegralMultiplicity):
            closed_form("Zp", 4)


class TestCompare:
    def test_z4_vs_klein(self):
        c = compare_decompositions(formula(group_cyclic(4)), formula(group_abelian([2, 2])))
        assert not c.equal and c.witness == 2 and str(c) == "Different(size 2)"

    def test_self(self):
        d = formula(zoo_group("S3"))
        assert str(compare_decompositions(d, d)) == "Equal"

    def test_different_orders(self):
        names = ["Z4", "Z5", "Z6", "S3", "Z8", "Q8"]
        for a in names:
            for b in names:
                ga, gb = zoo_group(a), zoo_group(b)
                if ga.order != gb.order:
                    assert not compare_decompositions(formula(ga), formula(gb)).equal

    def test_nonabelian_same_order(self):
        assert compare_decompositions(formula(zoo_group("Z6")), formula(zoo_group("S3"))).witness == 4
