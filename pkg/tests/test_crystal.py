import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))
import threading
from concurrent.futures import ThreadPoolExecutor

import pytest
from cachetools import LRUCache
from hypothesis import given, settings as hypothesis_settings, strategies as st

from fockcrystal.core.exceptions import ChargeException, NotInCrystalException, ValidationException
from fockcrystal.domain.models.crystal import NodeKind, SignatureEntry
from fockcrystal.domain.models.order import NodeOrder
from fockcrystal.domain.models.partition import Bipartition, Charge, NodeCoord, INFINITE_MODULUS
from fockcrystal.services.combinatorics import bipartitions_of
from fockcrystal.services.crystal import (
    signature, reduce_signature, normal_nodes, good_node, good_node_addable,
    f_tilde, e_tilde, phi, epsilon, enumerate_uglov, strip_labels, is_in_crystal,
    is_flotw, build_crystal, stable_modulus, CrystalLevelCache
)

bp = Bipartition.parse


def _entries(word):
    return [SignatureEntry(node=(k + 1, 1, 0), kind=NodeKind(letter)) for k, letter in enumerate(word)]


def _naive_reduce(word):
    """Delete adjacent RA pairs until none is left."""
    while "RA" in word:
        word = word.replace("RA", "", 1)
    return word


def _flotw_set(e, s0, s1, n):
    charge = Charge(s0=s0, s1=s1)
    return {b for b in bipartitions_of(n) if is_flotw(b, e, charge)}


class TestSignature:
    def test_reduction_keeps_separated_letters(self):
        reduced = reduce_signature(_entries("RRAR"))
        assert reduced.word == "RR"
        assert [entry.coord.a for entry in reduced.normals] == [1, 4]

    def test_reduction_of_simple_words(self):
        assert reduce_signature(_entries("AR")).word == "AR"
        assert reduce_signature(_entries("RARA")).word == ""
        assert reduce_signature(_entries("")).word == ""

    @hypothesis_settings(max_examples=200)
    @given(word=st.text(alphabet="AR", max_size=14))
    def test_stack_reduction_matches_repeated_deletion(self, word):
        assert reduce_signature(_entries(word)).word == _naive_reduce(word)

    def test_worked_example(self):
        bipartition = bp("[4,3,1,1|4]")
        order = NodeOrder.uglov(0, 6)
        word = "".join(entry.kind.value for entry in signature(bipartition, 1, 4, order))
        assert word == "RRAR"
        assert normal_nodes(bipartition, 1, 4, order) == [NodeCoord(4, 1, 0), NodeCoord(1, 4, 1)]
        assert good_node(bipartition, 1, 4, order) == NodeCoord(4, 1, 0)
        assert epsilon(bipartition, 1, 4, order) == 2
        assert phi(bipartition, 1, 4, order) == 0
        assert e_tilde(bipartition, 1, 4, order) == bp("[4,3,1|4]")


class TestOperators:
    def test_empty_bipartition_has_no_good_node(self):
        assert good_node(Bipartition.empty(), 0, 3, NodeOrder.uglov(0, 1)) is None

    def test_single_node(self):
        assert good_node(bp("[1|-]"), 0, 2, NodeOrder.uglov(0, 0)) == NodeCoord(1, 1, 0)

    def test_first_step_from_empty(self):
        order = NodeOrder.uglov(0, 1)
        assert good_node_addable(Bipartition.empty(), 0, 4, order) == NodeCoord(1, 1, 0)
        assert f_tilde(Bipartition.empty(), 2, 4, order) is None

    def test_equal_residues_pick_the_first_component(self):
        order = NodeOrder.uglov(0, 0)
        assert f_tilde(Bipartition.empty(), 0, 2, order) == bp("[1|-]")
        assert f_tilde(bp("[1|-]"), 0, 2, order) == bp("[1|1]")
        assert f_tilde(bp("[1|-]"), 1, 2, order) == bp("[2|-]")

    @pytest.mark.parametrize("e,s0,s1,n", [(4, 0, 1, 12), (3, 0, 2, 7), (2, 1, 1, 6)])
    def test_good_nodes_round_trip(self, e, s0, s1, n):
        order = NodeOrder.uglov(s0, s1)
        for bipartition in enumerate_uglov(e, order, n):
            for i in range(e):
                node = good_node_addable(bipartition, i, e, order)
                if node is not None:
                    assert good_node(bipartition.add_node(node), i, e, order) == node
                    assert e_tilde(f_tilde(bipartition, i, e, order), i, e, order) == bipartition


class TestEnumeration:
    def test_rank_zero(self):
        assert enumerate_uglov(3, NodeOrder.uglov(0, 1), 0) == {Bipartition.empty()}

    def test_cache_can_be_cleared(self):
        order = NodeOrder.uglov(0, 1)
        before = enumerate_uglov(3, order, 4)
        CrystalLevelCache.clear()
        assert enumerate_uglov(3, order, 4) == before

    def test_cache_keeps_recent_crystals_only(self, monkeypatch):
        monkeypatch.setattr(CrystalLevelCache, "_crystals", LRUCache(maxsize=2))
        levels = [enumerate_uglov(3, NodeOrder.uglov(0, s1), 2) for s1 in range(3)]
        assert CrystalLevelCache.cached_crystals() == 2
        assert enumerate_uglov(3, NodeOrder.uglov(0, 0), 2) == levels[0]
        assert CrystalLevelCache.cached_crystals() == 2

    def test_running_search_does_not_block_other_crystals(self):
        busy = NodeOrder.uglov(0, 2)
        enumerate_uglov(5, busy, 1)
        answers = {}

        def lookup():
            answers["other"] = enumerate_uglov(2, NodeOrder.uglov(0, 0), 1)
            answers["built"] = enumerate_uglov(5, busy, 1)

        with CrystalLevelCache._entry(5, busy).lock:
            worker = threading.Thread(target=lookup)
            worker.start()
            worker.join(timeout=5)
            assert not worker.is_alive()
        assert answers["other"] == {bp("[1|-]")}
        assert len(answers["built"]) == 2

    def test_parallel_enumeration_matches_sequential(self):
        orders = [NodeOrder.uglov(s0, s1) for s0 in range(3) for s1 in range(3)]
        CrystalLevelCache.clear()
        with ThreadPoolExecutor(max_workers=4) as pool:
            parallel = list(pool.map(lambda order: enumerate_uglov(3, order, 5), orders))
        CrystalLevelCache.clear()
        assert parallel == [enumerate_uglov(3, order, 5) for order in orders]

    def test_rank_two(self):
        assert enumerate_uglov(2, NodeOrder.uglov(0, 0), 2) == {bp("[2|-]"), bp("[1|1]")}

    def test_worked_examples_are_members(self):
        assert bp("[8|4]") in enumerate_uglov(4, NodeOrder.uglov(0, 1), 12)
        assert bp("[2,2,1|3,2]") in enumerate_uglov(4, NodeOrder.uglov(0, 2), 10)

    def test_rejects_small_modulus(self):
        with pytest.raises(ValidationException):
            enumerate_uglov(1, NodeOrder.uglov(0, 0), 2)

    def test_strip_labels(self):
        order = NodeOrder.uglov(0, 0)
        assert strip_labels(bp("[1|1]"), 2, order) == [0, 0]
        assert is_in_crystal(bp("[8|4]"), 4, NodeOrder.uglov(0, 1))
        assert not is_in_crystal(bp("[1,1|-]"), 2, order)
        with pytest.raises(NotInCrystalException):
            strip_labels(bp("[1,1|-]"), 2, order)

    @pytest.mark.parametrize("e,s0,s1,n", [(3, 0, 1, 6), (4, 1, 3, 6)])
    def test_stripping_order_does_not_matter_for_membership(self, e, s0, s1, n):
        order = NodeOrder.uglov(s0, s1)
        for bipartition in enumerate_uglov(e, order, n):
            assert len(strip_labels(bipartition, e, order, strip="largest")) == n
            assert len(strip_labels(bipartition, e, order, strip="smallest")) == n


class TestFlotw:
    def test_worked_examples(self):
        assert is_flotw(bp("[2,2,1|3,2]"), 4, Charge(s0=0, s1=2))
        assert is_flotw(bp("[8|4]"), 4, Charge(s0=0, s1=1))
        assert not is_flotw(bp("[1,1|-]"), 2, Charge(s0=0, s1=0))

    @pytest.mark.parametrize("charge", [Charge(s0=1, s1=0), Charge(s0=0, s1=4), Charge(s0=-1, s1=1)])
    def test_rejects_charges_outside_the_window(self, charge):
        with pytest.raises(ChargeException):
            is_flotw(Bipartition.empty(), 4, charge)

    @pytest.mark.parametrize("e", [2, 3])
    @pytest.mark.parametrize("n", range(6))
    def test_matches_recursive_enumeration(self, e, n):
        for s1 in range(e):
            for s0 in range(s1 + 1):
                assert enumerate_uglov(e, NodeOrder.uglov(s0, s1), n) == _flotw_set(e, s0, s1, n)

    @pytest.mark.slow
    @pytest.mark.parametrize("e", [2, 3, 4])
    @pytest.mark.parametrize("n", range(9))
    def test_matches_recursive_enumeration_full_grid(self, e, n):
        for s1 in range(e):
            for s0 in range(s1 + 1):
                assert enumerate_uglov(e, NodeOrder.uglov(s0, s1), n) == _flotw_set(e, s0, s1, n)


class TestChargeLaws:
    @pytest.mark.parametrize("t", [-2, -1, 1, 2])
    @pytest.mark.parametrize("n", range(6))
    def test_shift_leaves_the_set_unchanged(self, t, n):
        e = 3
        for s0, s1 in [(0, 1), (1, 1), (2, 0), (0, 4)]:
            shifted = Charge(s0=s0, s1=s1).shifted(t, e)
            assert enumerate_uglov(e, NodeOrder.uglov(s0, s1), n) == \
                enumerate_uglov(e, NodeOrder.uglov(shifted.s0, shifted.s1), n)

    @pytest.mark.parametrize("n", range(6))
    def test_swap_exchanges_components(self, n):
        e = 3
        for s0, s1 in [(0, 1), (1, 1), (0, 2), (2, 5)]:
            swapped = {b.swapped() for b in enumerate_uglov(e, NodeOrder.uglov(s0, s1), n)}
            assert swapped == enumerate_uglov(e, NodeOrder.uglov(s1, s0 + e), n)

    @pytest.mark.parametrize("n", range(6))
    def test_kleshchev_swap(self, n):
        e = 3
        for v0 in range(e):
            for v1 in range(e):
                swapped = {b.swapped() for b in enumerate_uglov(e, NodeOrder.plus(v0, v1), n)}
                assert swapped == enumerate_uglov(e, NodeOrder.minus(v1, v0), n)

    @pytest.mark.parametrize("e", [2, 3, 4])
    @pytest.mark.parametrize("n", range(6))
    def test_stabilization(self, e, n):
        for s0 in range(e):
            s1 = s0 + n
            assert enumerate_uglov(e, NodeOrder.uglov(s0, s1), n) == \
                enumerate_uglov(e, NodeOrder.minus(s0 % e, s1 % e), n)
            # the positive side stabilizes e steps earlier
            assert enumerate_uglov(e, NodeOrder.uglov(s1 - e, s0), n) == \
                enumerate_uglov(e, NodeOrder.plus((s1 - e) % e, s0 % e), n)

    @pytest.mark.parametrize("n", range(6))
    def test_levels_have_equal_size_for_congruent_charges(self, n):
        e = 3
        sizes = {len(enumerate_uglov(e, NodeOrder.uglov(0, s1), n)) for s1 in (1, 4, 7, -2)}
        assert len(sizes) == 1


class TestInfiniteModulus:
    @pytest.mark.parametrize("s0,s1", [(0, 0), (0, 1), (1, 3)])
    @pytest.mark.parametrize("n", range(6))
    def test_closed_form(self, s0, s1, n):
        shift = s1 - s0
        expected = {
            b for b in bipartitions_of(n)
            if all(b.first.part(i) >= b.second.part(i + shift) for i in range(1, n + 1))
        }
        assert enumerate_uglov(INFINITE_MODULUS, NodeOrder.uglov(s0, s1), n) == expected

    @pytest.mark.parametrize("e", [2, 3])
    @pytest.mark.parametrize("n", range(5))
    def test_members_stay_members_for_large_modulus(self, e, n):
        for s0, s1 in [(0, 0), (0, 1), (1, 2)]:
            order = NodeOrder.uglov(s0, s1)
            large = stable_modulus(Charge(s0=s0, s1=s1), n)
            for bipartition in enumerate_uglov(e, order, n):
                assert is_in_crystal(bipartition, large, order)
                assert is_in_crystal(bipartition, INFINITE_MODULUS, order)

    def test_stable_modulus_is_valid_at_rank_zero(self):
        assert stable_modulus(Charge(s0=0, s1=0), 0) == 2
        assert stable_modulus(Charge(s0=0, s1=1), 0) == 2
        assert stable_modulus(Charge(s0=1, s1=2), 3) == 6
        assert is_in_crystal(Bipartition.empty(), stable_modulus(Charge(s0=0, s1=0), 0), NodeOrder.uglov(0, 0))


class TestCrystalGraph:
    def test_single_vertex(self):
        crystal = build_crystal(2, NodeOrder.uglov(0, 0), 0)
        assert crystal.levels == [[Bipartition.empty()]]
        assert crystal.edges() == []

    def test_edges_follow_good_nodes(self):
        e, order = 2, NodeOrder.uglov(0, 1)
        crystal = build_crystal(e, order, 4)
        assert crystal.all_reachable()
        assert [len(level) for level in crystal.levels] == [len(_flotw_set(e, 0, 1, n)) for n in range(5)]
        labels_seen = set()
        for source, label, target in crystal.edges():
            assert target.rank == source.rank + 1
            assert e_tilde(target, label, e, order) == source
            assert (source, label) not in labels_seen
            labels_seen.add((source, label))

    def test_closed_under_operators(self):
        e, order = 3, NodeOrder.uglov(1, 2)
        levels = [enumerate_uglov(e, order, n) for n in range(5)]
        for n in range(1, 5):
            for bipartition in levels[n]:
                for i in range(e):
                    lowered = e_tilde(bipartition, i, e, order)
                    if lowered is not None:
                        assert lowered in levels[n - 1]
