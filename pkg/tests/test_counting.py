import itertools
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from posetmerge.bijections import enumerate_monotone_colorings, enumerate_plane_partitions
from posetmerge.counting import (
    count_antichain_chain,
    count_antichain_mergings,
    count_chain_mergings,
    count_galois_boolean_chain,
    count_galois_chains,
    eta,
    eta_swapped,
    macmahon,
    narayana,
)
from posetmerge.errors import DomainError
from posetmerge.merging import brute_force_mergings, enumerate_mergings
from posetmerge.order import make_antichain, make_chain

small = st.integers(0, 5)


class TestMacMahon:
    def test_values(self):
        assert macmahon(2, 2, 2) == 20
        assert macmahon(2, 2, 1) == 6
        assert macmahon(3, 3, 3) == 980

    @given(st.integers(0, 20))
    def test_single_cell(self, l):
        assert macmahon(1, 1, l) == l + 1

    @given(small, small, small)
    def test_box_symmetry(self, m, n, l):
        v = macmahon(m, n, l)
        assert v == macmahon(n, m, l) == macmahon(l, n, m) == macmahon(m, l, n)

    @pytest.mark.parametrize("m,n,l", [(m, n, l) for m in range(5) for n in range(5) for l in range(5) if m * n <= 9])
    def test_against_enumeration(self, m, n, l):
        assert macmahon(m, n, l) == len(enumerate_plane_partitions(m, n, l))

    def test_negative(self):
        with pytest.raises(DomainError):
            macmahon(-1, 2, 2)


class TestNarayana:
    def test_values(self):
        assert narayana(5, 3) == 20
        assert narayana(3, 2) == 3
        assert narayana(9, 5) == 1764

    @given(st.integers(1, 30))
    def test_first_column(self, n):
        assert narayana(n, 1) == 1

    @given(st.integers(1, 30))
    def test_row_sums_are_catalan(self, n):
        assert sum(narayana(n, k) for k in range(1, n + 1)) == comb(2 * n, n) // (n + 1)

    def test_out_of_range(self):
        for args in [(3, 0), (3, 4), (0, 0)]:
            with pytest.raises(DomainError):
                narayana(*args)


class TestChainCount:
    def test_values(self):
        assert count_chain_mergings(2, 2) == 20
        assert count_chain_mergings(4, 4) == 1764

    @given(st.integers(0, 30))
    def test_empty_side(self, n):
        assert count_chain_mergings(0, n) == 1

    @pytest.mark.parametrize("n", range(0, 8))
    def test_square_closed_form(self, n):
        f = factorial(2 * n) * factorial(2 * n + 1) // (factorial(n) * factorial(n + 1)) ** 2
        assert count_chain_mergings(n, n) == f

    @given(st.integers(0, 12), st.integers(0, 12))
    def test_three_way_identity_and_symmetry(self, m, n):
        v = count_chain_mergings(m, n)
        assert v == macmahon(m, n, 2) == narayana(m + n + 1, m + 1) == count_chain_mergings(n, m)


class TestAntichainCount:
    def test_values(self):
        assert count_antichain_mergings(2, 2) == 35
        assert count_antichain_mergings(1, 1) == 3

    @given(st.integers(0, 10))
    def test_empty(self, n):
        assert count_antichain_mergings(0, n) == 1

    @given(st.integers(0, 6), st.integers(0, 6))
    def test_symmetry(self, m, n):
        assert count_antichain_mergings(m, n) == count_antichain_mergings(n, m)

    @pytest.mark.parametrize("m,n", [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3)])
    def test_against_brute_force(self, m, n):
        assert count_antichain_mergings(m, n) == len(brute_force_mergings(make_antichain(m, "a"), make_antichain(n, "b")))


class TestEta:
    def test_values(self):
        assert eta(3, 2, 2) == 26
        assert eta(0, 0, 0) == 1
        assert eta(0, 1, 0) == 0

    @given(small, small)
    def test_one_color(self, m1, m2):
        assert eta(1, m1, m2) == 1

    def test_two_forms_agree(self):
        for k in range(6):
            for m1 in range(6):
                for m2 in range(6):
                    assert eta(k, m1, m2) == eta_swapped(k, m1, m2)

    @pytest.mark.parametrize("k,m1,m2", [(k, a, b) for k in range(1, 5) for a in range(3) for b in range(3)])
    def test_against_direct_count(self, k, m1, m2):
        direct = sum(
            1
            for v1 in itertools.product(range(1, k + 1), repeat=m1)
            for v2 in itertools.product(range(1, k + 1), repeat=m2)
            if all(x <= y for x in v1 for y in v2)
        )
        assert eta(k, m1, m2) == direct


class TestAntichainChain:
    def test_values(self):
        assert count_antichain_chain(2, 2) == 26
        assert [count_antichain_chain(0, n) for n in range(5)] == [1] * 5

    @given(st.integers(0, 6), st.integers(0, 6))
    def test_equals_eta(self, m, n):
        assert count_antichain_chain(m, n) == eta(n + 1, m, m)

    @pytest.mark.parametrize("n", range(5))
    def test_three_antichain(self, n):
        assert count_antichain_chain(3, n) == len(enumerate_mergings(make_antichain(3, "a"), make_chain(n, "c")))

    @pytest.mark.parametrize("m,n", [(m, n) for m in range(4) for n in range(4)])
    def test_against_colorings(self, m, n):
        assert count_antichain_chain(m, n) == len(enumerate_monotone_colorings(m, n + 1))


class TestGaloisCounts:
    def test_chains(self):
        assert count_galois_chains(3, 3) == 6
        assert count_galois_chains(2, 2) == 2
        assert all(count_galois_chains(1, n) == 1 for n in range(1, 10))

    def test_chains_need_elements(self):
        with pytest.raises(DomainError):
            count_galois_chains(0, 3)

    def test_boolean(self):
        assert count_galois_boolean_chain(2, 2) == 9
        assert count_galois_boolean_chain(3, 2) == 27
        assert count_galois_boolean_chain(5, 0) == 1


def test_exact_big_values():
    v = count_chain_mergings(40, 40)
    assert isinstance(v, int) and v == narayana(81, 41)
    assert count_antichain_mergings(12, 12) > 0
