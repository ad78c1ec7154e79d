import itertools

import pytest

from posetmerge.bijections import PlanePartition, pp_to_merging
from posetmerge.errors import DimensionError, DomainError
from posetmerge.fca import all_concepts, contraordinal_scale, extent_label, ordinal_scale
from posetmerge.galois import (
    DualBond,
    GaloisConnection,
    brute_force_galois,
    chain_identification,
    chain_labeler,
    dual_bond_from_galois,
    enumerate_galois_boolean_chain,
    enumerate_galois_chains,
    galois_boolean_chain_rows,
    galois_chain_rows,
    galois_from_dual_bond,
    galois_from_json,
    galois_to_json,
    is_dual_bond,
    is_galois_connection,
    reflect_s_to_t,
)
from posetmerge.merging import CrossRelation
from posetmerge.order import make_antichain, make_boolean_lattice, make_chain
from posetmerge.tables import TABLE_C, TABLE_E, TABLE_E_BOOLEAN


def keyset(conns):
    return sorted(g.key for g in conns)


def brute_keys(p, q):
    return sorted((tuple(f[x] for x in p.elements), tuple(g[y] for y in q.elements)) for f, g in brute_force_galois(p, q))


class TestDualBond:
    def test_full_between_ordinal_chains(self):
        k1, k2 = ordinal_scale(make_chain(3, "a")), ordinal_scale(make_chain(2, "b"))
        assert is_dual_bond(CrossRelation.full(k1.objects, k2.objects), k1, k2)

    def test_empty_between_ordinal_chains(self):
        # the top element's column is full, so the empty set is not an extent
        k1, k2 = ordinal_scale(make_chain(3, "a")), ordinal_scale(make_chain(2, "b"))
        assert not is_dual_bond(CrossRelation.empty(k1.objects, k2.objects), k1, k2)

    def test_construction_validates(self):
        k1, k2 = ordinal_scale(make_chain(2, "a")), ordinal_scale(make_chain(2, "b"))
        with pytest.raises(DomainError):
            DualBond(CrossRelation.empty(k1.objects, k2.objects), k1, k2)

    def test_dimension(self):
        k = ordinal_scale(make_chain(2))
        with pytest.raises(DimensionError):
            is_dual_bond(CrossRelation.empty(("x",), ("y",)), k, k)

    def test_all_chain_bonds_valid(self):
        for pp, bond, _ in galois_chain_rows(3, 3):
            assert is_dual_bond(bond.relation, bond.ctx1, bond.ctx2)


class TestReflect:
    def test_full_and_empty(self):
        full = CrossRelation.full(("b1", "b2"), ("a1", "a2", "a3"))
        assert reflect_s_to_t(full) == full
        empty = CrossRelation.empty(("b1",), ("a1", "a2"))
        assert reflect_s_to_t(empty) == empty

    def test_worked_example(self):
        s = pp_to_merging(PlanePartition(2, 2, ((1, 0), (0, 0)))).s
        assert set(s.pairs()) == {("b1", "a1"), ("b2", "a2"), ("b1", "a2")}
        assert set(reflect_s_to_t(s).pairs()) == {("b1", "a2"), ("b2", "a1"), ("b1", "a1")}

    def test_rows_and_columns_become_prefixes(self):
        for pp, bond, _ in galois_chain_rows(4, 3):
            t = bond.relation.transpose()
            for r in t.rows:
                assert r & (r + 1) == 0
            for c in t.cols:
                assert c & (c + 1) == 0


class TestChainIdentification:
    def test_names_follow_extent_size(self):
        lat = all_concepts(contraordinal_scale(make_chain(3, "a")))
        names = chain_identification(lat, "a")
        assert names == {0: "a1", 1: "a2", 2: "a3", 3: "a4"}
        assert [bin(lat.extents[i]).count("1") for i in names] == [0, 1, 2, 3]

    def test_rejects_non_chain(self):
        lat = all_concepts(contraordinal_scale(make_antichain(2)))
        with pytest.raises(DomainError):
            chain_identification(lat, "x")


class TestBondConnectionRoundtrip:
    def test_full_relation_gives_constant_top(self):
        k1, k2 = contraordinal_scale(make_chain(2, "a")), contraordinal_scale(make_chain(2, "b"))
        g = galois_from_dual_bond(DualBond(CrossRelation.full(k1.objects, k2.objects), k1, k2), left_label=chain_labeler("a"), right_label=chain_labeler("b"))
        assert set(g.phi.values()) == {"b3"} and set(g.psi.values()) == {"a3"}
        back = dual_bond_from_galois(g, k1, k2, chain_labeler("a"), chain_labeler("b"))
        assert back.relation == CrossRelation.full(k1.objects, k2.objects)

    @pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 5) for n in range(1, 5)])
    def test_chain_roundtrips(self, m, n):
        la, lb = chain_labeler("a"), chain_labeler("b")
        for _, bond, g in galois_chain_rows(m, n):
            assert dual_bond_from_galois(g, bond.ctx1, bond.ctx2, la, lb).relation == bond.relation
            again = galois_from_dual_bond(dual_bond_from_galois(g, bond.ctx1, bond.ctx2, la, lb), left_label=la, right_label=lb)
            assert again == g

    @pytest.mark.parametrize("m,n", [(m, n) for m in range(4) for n in range(4)])
    def test_boolean_roundtrips(self, m, n):
        lb = chain_labeler("b")
        for _, bond, g in galois_boolean_chain_rows(m, n):
            assert dual_bond_from_galois(g, bond.ctx1, bond.ctx2, extent_label, lb).relation == bond.relation

    def test_every_dual_bond_between_small_contexts(self):
        k1 = contraordinal_scale(make_antichain(2, "a"))
        k2 = ordinal_scale(make_chain(2, "b"))
        count = 0
        for rows in itertools.product(range(4), repeat=2):
            rel = CrossRelation(k1.objects, k2.objects, rows)
            if not is_dual_bond(rel, k1, k2):
                continue
            count += 1
            g = galois_from_dual_bond(rel, k1, k2)
            assert is_galois_connection(g.phi, g.psi, g.left, g.right)
            assert dual_bond_from_galois(g, k1, k2).relation == rel
        lat1, lat2 = all_concepts(k1).as_poset(), all_concepts(k2).as_poset()
        assert count == len(brute_force_galois(lat1, lat2))

    def test_rejects_non_connection(self):
        k = contraordinal_scale(make_chain(1, "a"))
        lat = all_concepts(k).as_poset()
        ident = {x: x for x in lat.elements}
        with pytest.raises(DomainError):
            dual_bond_from_galois(GaloisConnection(lat, lat, ident, ident), k, k)


class TestEnumeration:
    @pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 6) for n in range(1, 6)])
    def test_chain_counts_and_validity(self, m, n):
        from math import comb

        gs = enumerate_galois_chains(m, n)
        assert len(gs) == comb(m + n - 2, m - 1) == len(set(gs))
        assert all(is_galois_connection(g.phi, g.psi, g.left, g.right) for g in gs)

    @pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 4) for n in range(1, 4)])
    def test_chains_against_map_search(self, m, n):
        p, q = make_chain(m, "a"), make_chain(n, "b")
        gs = enumerate_galois_chains(m, n)
        assert gs[0].left == p and gs[0].right == q
        assert keyset(gs) == brute_keys(p, q)

    def test_table_c(self):
        rows = galois_chain_rows(3, 3)
        assert ["".join(map(str, pp.flat)) for pp, _, _ in rows] == list(TABLE_C)
        for pp, _, g in rows:
            assert (g.psi, g.phi) == TABLE_C["".join(map(str, pp.flat))]

    @pytest.mark.parametrize("m,n", [(m, n) for m in range(4) for n in range(4)])
    def test_boolean_counts(self, m, n):
        gs = enumerate_galois_boolean_chain(m, n)
        assert len(gs) == (n + 1) ** m == len(set(gs))
        assert all(is_galois_connection(g.phi, g.psi, g.left, g.right) for g in gs)

    @pytest.mark.parametrize("m,n", [(m, n) for m in range(3) for n in range(3)])
    def test_boolean_against_map_search(self, m, n):
        gs = enumerate_galois_boolean_chain(m, n)
        p = make_boolean_lattice(m)
        assert gs[0].left == p and gs[0].right == make_chain(n + 1, "b")
        assert keyset(gs) == brute_keys(p, make_chain(n + 1, "b"))

    def test_table_e(self):
        rows = galois_boolean_chain_rows(2, 2)
        tags = ["".join(map(str, c.v1 + c.v2)) for c, _, _ in rows]
        assert tags == list(TABLE_E)
        for tag, (_, _, g) in zip(tags, rows):
            psi, phi = TABLE_E[tag]
            assert g.psi == {y: TABLE_E_BOOLEAN[x] for y, x in psi.items()}
            assert g.phi == {TABLE_E_BOOLEAN[x]: y for x, y in phi.items()}

    def test_small_cases(self):
        assert len(enumerate_galois_chains(1, 4)) == 1
        assert len(enumerate_galois_chains(2, 2)) == 2
        assert len(enumerate_galois_boolean_chain(1, 1)) == 2
        assert len(enumerate_galois_boolean_chain(3, 0)) == 1


class TestValidator:
    def test_identity_on_chain(self):
        c = make_chain(2)
        ident = {x: x for x in c.elements}
        assert not is_galois_connection(ident, ident, c, c)
        one = make_chain(1)
        assert is_galois_connection({"c1": "c1"}, {"c1": "c1"}, one, one)

    def test_constant_top(self):
        p, q = make_boolean_lattice(2), make_chain(3, "b")
        assert is_galois_connection({x: "b3" for x in p.elements}, {y: "{a1,a2}" for y in q.elements}, p, q)

    def test_partial_map(self):
        c = make_chain(2)
        with pytest.raises(DomainError):
            is_galois_connection({"c1": "c1"}, {"c1": "c1", "c2": "c2"}, c, c)


def test_json_roundtrip():
    for g in enumerate_galois_boolean_chain(2, 2):
        assert galois_from_json(galois_to_json(g), g.left, g.right) == g
    g = enumerate_galois_chains(2, 2)[0]
    bad = galois_to_json(g)
    bad["phi"] = {x: "b1" for x in g.left.elements}
    with pytest.raises(DomainError):
        galois_from_json(bad, g.left, g.right)
