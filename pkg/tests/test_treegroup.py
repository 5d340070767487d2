import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arborkit import oracles
from arborkit.errors import CapExceeded, DomainMismatch
from arborkit.treegroup import (WreathDescriptor, abelianize, act_on_leaf, brute_force_frattini, compose,
                                deserialize, free_group_index_p_normal_count, group_order, inverse,
                                maximal_subgroup_count, serialize, subgroup_closure, verify_free_group_count)

W = WreathDescriptor(2, 1, 3)
W3 = WreathDescriptor(3, 1, 2)


def portraits(w):
    return st.lists(st.integers(0, w.d - 1), min_size=w.internal_nodes,
                    max_size=w.internal_nodes).map(w.portrait)


def leaves(w):
    return list(itertools.product(range(w.d), repeat=w.depth))


class TestPortraits:
    @given(portraits(W), portraits(W), portraits(W))
    def test_associative(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    @given(portraits(W3))
    def test_inverse(self, a):
        assert (a * inverse(a)).is_identity() and (inverse(a) * a).is_identity()

    @given(portraits(W), portraits(W))
    def test_composition_is_action(self, a, b):
        for leaf in leaves(W):
            assert act_on_leaf(a * b, leaf) == act_on_leaf(a, act_on_leaf(b, leaf))

    @given(portraits(W3))
    def test_action_is_a_bijection_preserving_prefixes(self, a):
        images = [act_on_leaf(a, leaf) for leaf in leaves(W3)]
        assert sorted(images) == leaves(W3)
        for leaf in leaves(W3):
            assert act_on_leaf(a, leaf[:1]) == act_on_leaf(a, leaf)[:1]

    @given(portraits(W), portraits(W))
    def test_abelianization_is_a_homomorphism(self, a, b):
        ab = abelianize(a * b)
        assert ab == tuple((x + y) % 2 for x, y in zip(abelianize(a), abelianize(b)))

    @given(portraits(W3))
    def test_serialization_round_trip(self, a):
        assert deserialize(W3, serialize(a)) == a

    def test_power(self):
        g = W.standard_generators()[0]
        assert (g ** 2).is_identity()
        assert (g ** -1) == g

    def test_mismatch(self):
        with pytest.raises(DomainMismatch):
            compose(W.identity(), W3.identity())


class TestCounts:
    def test_orders(self):
        assert [group_order(WreathDescriptor(2, 1, k)) for k in range(1, 5)] == [2, 8, 128, 32768]
        for p, n, k in [(2, 1, 3), (3, 1, 2), (2, 2, 2), (5, 1, 1)]:
            assert group_order(WreathDescriptor(p, n, k)) == oracles.iterated_wreath_order(p, n, k)

    def test_enumeration_matches_order(self):
        for k in range(1, 5):
            w = WreathDescriptor(2, 1, k)
            assert sum(1 for _ in w.elements()) == group_order(w)

    def test_enumeration_cap(self):
        with pytest.raises(CapExceeded):
            next(WreathDescriptor(2, 1, 5).elements())

    def test_closure_of_standard_generators_is_everything(self):
        for w in (WreathDescriptor(2, 1, 2), W3):
            assert len(subgroup_closure(w.standard_generators())) == group_order(w)

    def test_closure_of_single_rotation(self):
        g = W3.standard_generators()[0]
        assert len(subgroup_closure([g])) == 3

    @pytest.mark.parametrize("p,n,depth,rank", [(2, 1, 1, 1), (2, 1, 2, 2), (2, 1, 3, 3), (3, 1, 2, 2), (2, 2, 2, 2)])
    def test_frattini_matches_formula(self, p, n, depth, rank):
        got = brute_force_frattini(WreathDescriptor(p, n, depth))
        assert got == (rank, maximal_subgroup_count(p, n, depth))

    def test_frattini_cap(self):
        with pytest.raises(CapExceeded):
            brute_force_frattini(WreathDescriptor(2, 1, 4), cap=1000)

    @pytest.mark.parametrize("s,p,count", [(1, 2, 1), (2, 2, 3), (3, 2, 7), (4, 2, 15),
                                           (1, 3, 1), (2, 3, 4), (3, 3, 13), (0, 2, 0), (2, 5, 6)])
    def test_free_group_counts(self, s, p, count):
        assert free_group_index_p_normal_count(s, p) == count
        assert verify_free_group_count(s, p) == count

    def test_free_group_cap(self):
        with pytest.raises(CapExceeded):
            verify_free_group_count(30, 2)
