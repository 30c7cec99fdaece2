"""Order search, brute-force oracle, certificates, and the class ladder."""

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from transitclust.model import GroundSet, SetSystem
from transitclust.pyramidal import (
    FactorialSearchError,
    NotATSystemError,
    brute_force_order,
    classify_ladder,
    find_compatible_order,
    is_pyramidal,
    is_weakly_pyramidal,
    order_certifies,
)


def sysb(labels, sets):
    return SetSystem.build(GroundSet(tuple(labels)), sets)


def random_system(rng, n, extra):
    gs = GroundSet(tuple("abcdefghij"[:n]))
    masks = {1 << i for i in range(n)}
    for _ in range(extra):
        m = rng.getrandbits(n)
        if bin(m).count("1") >= 2:
            masks.add(m)
    return SetSystem(gs, tuple(masks))


class TestFindOrder:
    def test_path_edges(self):
        s = sysb("1234", ["1", "2", "3", "4", "12", "23", "34", "1234"])
        res = find_compatible_order(s)
        assert res.pre_pyramidal
        assert res.order.label_sequence == ("1", "2", "3", "4")

    def test_cycle_has_no_order(self):
        s = sysb("abcd", ["a", "b", "c", "d", "ab", "bc", "cd", "ad",
                          "abcd"])
        res = find_compatible_order(s)
        assert not res.pre_pyramidal
        assert res.order is None
        # the obstruction itself admits no order
        sub = SetSystem.build(s.groundset,
                              [c.bits for c in res.obstruction])
        assert not find_compatible_order(sub).pre_pyramidal

    def test_obstruction_is_shortest_prefix(self):
        s = sysb("abcd", ["ab", "bc", "cd", "ad"])
        res = find_compatible_order(s)
        prefix = tuple(c.bits for c in res.obstruction)
        shorter = SetSystem.build(s.groundset, prefix[:-1])
        assert find_compatible_order(shorter).pre_pyramidal

    def test_trivial_system(self):
        s = sysb("abc", ["a", "b", "c", "abc"])
        assert find_compatible_order(s).pre_pyramidal

    def test_reverse_canonicalized(self):
        # search may find either direction; the smaller one is returned
        s = sysb("ab", ["a", "b", "ab"])
        res = find_compatible_order(s)
        assert res.order.sequence == (0, 1)


class TestOracleAgreement:
    def test_exhaustive_n4(self):
        gs = GroundSet(tuple("abcd"))
        subs = [m for m in range(16) if bin(m).count("1") >= 2]
        sing = tuple(1 << i for i in range(4))
        for k in range(len(subs) + 1):
            for combo in itertools.combinations(subs, k):
                s = SetSystem(gs, sing + combo)
                a = find_compatible_order(s)
                b = brute_force_order(s)
                assert a.pre_pyramidal == b.pre_pyramidal
                if a.pre_pyramidal:
                    assert order_certifies(s, a.order)
                    assert order_certifies(s, b.order)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(5, 7), st.integers(0, 12))
    def test_random_larger(self, seed, n, extra):
        s = random_system(random.Random(seed), n, extra)
        a = find_compatible_order(s)
        b = brute_force_order(s)
        assert a.pre_pyramidal == b.pre_pyramidal
        if a.pre_pyramidal:
            assert order_certifies(s, a.order)

    def test_factorial_cap(self):
        gs = GroundSet(tuple("abcdefghijk"))  # n = 11
        with pytest.raises(FactorialSearchError):
            brute_force_order(SetSystem(gs, tuple(1 << i for i in range(11))))


class TestCertificate:
    def test_rejects_bad_order(self):
        s = sysb("abc", ["a", "b", "c", "ab"])
        from transitclust.model import CompatibleOrder
        good = CompatibleOrder(s.groundset, (0, 1, 2))
        bad = CompatibleOrder(s.groundset, (0, 2, 1))  # a . c . b
        assert order_certifies(s, good)
        assert not order_certifies(s, bad)


class TestClassChecks:
    def test_pyramidal_needs_K2(self):
        # pre-pyramidal but the overlap {b,c} is missing
        s = sysb("abcd", ["a", "b", "c", "d", "abc", "bcd"])
        assert find_compatible_order(s).pre_pyramidal
        v = is_pyramidal(s)
        assert not v.holds
        assert v.detail == "K2 fails"

    def test_weakly_pyramidal(self):
        s = sysb("abcd", ["a", "b", "c", "d", "ab", "bc", "cd", "ad",
                          "abcd"])
        assert is_weakly_pyramidal(s).holds
        assert not is_pyramidal(s).holds


class TestLadder:
    def test_requires_t_system(self):
        with pytest.raises(NotATSystemError):
            classify_ladder(sysb("abc", ["ab"]))

    def test_hierarchy_is_everything(self):
        s = sysb("abc", ["a", "b", "c", "ab", "abc"])
        rep = classify_ladder(s)
        assert all(rep[name] for name in rep.classes)

    def test_ucb_not_paired(self):
        s = sysb("1234", ["1", "2", "3", "4", "12", "23", "34",
                          "123", "234", "1234"])
        rep = classify_ladder(s)
        assert rep["ucb"] and rep["pyramidal"]
        assert not rep["pairedHierarchy"] and not rep["hierarchy"]
