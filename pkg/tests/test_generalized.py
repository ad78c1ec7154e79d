import pytest

from posetmerge.bijections import PlanePartition, pp_to_merging
from posetmerge.counting import count_chain_mergings
from posetmerge.errors import DimensionError, DomainError
from posetmerge.generalized import (
    Arrangement,
    arrangement_to_relation,
    chain_labels,
    cyclic_pairs,
    default_pairs,
    enumerate_generalized,
)
from posetmerge.merging import enumerate_mergings, merged_order
from posetmerge.order import hasse_edges, lattice_check, make_chain
from posetmerge.tables import TABLE_B_DOUBLED


def one(x):
    return PlanePartition(1, 1, ((x,),))


def cyc(a, b, c):
    return Arrangement((1, 1, 1), {(0, 1): one(a), (1, 2): one(b), (2, 0): one(c)})


def all_labelled_posets(n):
    """Every partial order on range(n), by filtering all relations."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = set()
    for mask in range(1 << len(pairs)):
        rel = {p for k, p in enumerate(pairs) if mask >> k & 1}
        if any((j, i) in rel for i, j in rel):
            continue
        if any((i, k) not in rel for i, j in rel for j2, k in rel if j == j2 and i != k):
            continue
        out.add(tuple(sum(1 << j for j in range(n) if j == i or (i, j) in rel) for i in range(n)))
    return out


class TestSingleArrangements:
    def test_one_pair_of_zeros_and_a_one_is_proper(self):
        res = arrangement_to_relation(cyc(0, 0, 1))
        assert res.proper
        assert len(hasse_edges(res.order)) == 2

    def test_all_zero_collapses(self):
        res = arrangement_to_relation(cyc(0, 0, 0))
        assert not res.proper
        assert res.order.rows == (0b111,) * 3

    def test_all_two_collapses(self):
        assert not arrangement_to_relation(cyc(2, 2, 2)).proper

    def test_all_ones_is_antichain(self):
        res = arrangement_to_relation(cyc(1, 1, 1))
        assert res.proper and res.order.is_antichain()

    def test_two_chains_match_pp_map(self):
        pp = PlanePartition(2, 2, ((2, 1), (1, 0)))
        res = arrangement_to_relation(Arrangement((2, 2), {(0, 1): pp}))
        assert res.order.rows == merged_order(pp_to_merging(pp)).rows

    def test_validation(self):
        with pytest.raises(DimensionError):
            Arrangement((1, 2), {(0, 1): one(0)})
        with pytest.raises(DimensionError):
            Arrangement((1, 1), {(0, 0): one(0)})
        with pytest.raises(DomainError):
            Arrangement((1, 1), {(0, 1): one(0), (1, 0): one(0)})
        with pytest.raises(DomainError):
            Arrangement((0, 1))
        with pytest.raises(DomainError):
            Arrangement((1, 1), {(0, 1): PlanePartition(1, 1, ((3,),), max_part=3)})

    def test_label(self):
        assert cyc(1, 2, 0).label(cyclic_pairs(3)) == "1|2|0"


@pytest.fixture(scope="module", params=["cyclic", "default"])
def g(request):
    return enumerate_generalized((1, 1, 1), cyclic_pairs(3) if request.param == "cyclic" else None)


class TestThreeOneChains:
    def test_counts(self, g):
        assert len(g.arrangements) == 27
        assert g.proper_count == 25
        assert len(g.mergings) == 19
        assert sorted(map(len, g.fibers)) == [1] * 13 + [2] * 6

    def test_all_posets_on_three_points(self, g):
        assert {m.rows for m in g.mergings} == all_labelled_posets(3)

    def test_lattice_not_distributive(self, g):
        rep = lattice_check(g.as_poset())
        assert rep.is_lattice and not rep.is_distributive

    def test_fibers_share_an_order(self, g):
        for m, fiber in zip(g.mergings, g.fibers):
            for k in fiber:
                assert g.results[k].order.rows == m.rows

    def test_doubled_fibers_cyclic(self):
        g = enumerate_generalized((1, 1, 1), cyclic_pairs(3))
        doubled = [{g.arrangements[k].label(g.pairs).replace("|", "") for k in f} for f in g.fibers if len(f) == 2]
        assert sorted(map(sorted, doubled)) == sorted(map(sorted, TABLE_B_DOUBLED))


class TestTwoChains:
    @pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (2, 2), (3, 2)])
    def test_agrees_with_two_chain_engine(self, m, n):
        g = enumerate_generalized((m, n))
        assert len(g.mergings) == len(g.arrangements) == count_chain_mergings(m, n)
        direct = {merged_order(x).rows for x in enumerate_mergings(make_chain(m, "a"), make_chain(n, "b"))}
        assert {x.rows for x in g.mergings} == direct

    def test_two_chain_order_is_distributive_lattice(self):
        g = enumerate_generalized((2, 2))
        rep = lattice_check(g.as_poset())
        assert rep.is_lattice and rep.is_distributive


def test_single_chain():
    g = enumerate_generalized((3,))
    assert len(g.mergings) == 1 and g.pairs == ()


def test_pairs_helpers():
    assert default_pairs(3) == [(0, 1), (0, 2), (1, 2)]
    assert cyclic_pairs(3) == [(0, 1), (1, 2), (2, 0)]
    assert cyclic_pairs(2) == [(0, 1)] and cyclic_pairs(1) == []
    assert chain_labels((2, 1)) == (("a1", "a2"), ("b1",))


def test_four_one_chains_closed_results_are_posets():
    g = enumerate_generalized((1, 1, 1, 1), cyclic_pairs(4))
    assert len(g.arrangements) == 81
    for res in g.results:
        assert res.proper == res.order.is_antisymmetric()
    # 4-cycles all of one direction collapse
    assert g.proper_count == 79
