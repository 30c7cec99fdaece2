"""Transit-axiom checkers: hand-built instances, witness re-checking, and
the guarded/unguarded (w2) coincidence."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from transitclust.axioms import (
    TRANSIT_AXIOMS,
    check_axiom,
    check_w2_guarded,
    classify_all,
)
from transitclust.model import GroundSet, TransitFunction, make_transit_function


def tf(labels, assignments):
    return make_transit_function(GroundSet(tuple(labels)), assignments)


@pytest.fixture
def triangle():
    return tf("abc", {("a", "b"): "ab", ("a", "c"): "ac", ("b", "c"): "bc"})


@pytest.fixture
def nested():
    # hierarchy-shaped: fully nested transit sets
    return tf("abc", {("a", "b"): "ab", ("a", "c"): "abc", ("b", "c"): "abc"})


def random_tfs(seed, count, n):
    """Deterministic sample of arbitrary transit functions."""
    import random
    rng = random.Random(seed)
    gs = GroundSet(tuple("abcdefg"[:n]))
    out = []
    for _ in range(count):
        table = []
        for u, v in gs.pairs():
            base = (1 << u) | (1 << v)
            table.append(base | (rng.getrandbits(n) & gs.full_mask))
        out.append(TransitFunction(gs, tuple(table)))
    return out


class TestMonotone:
    def test_holds(self, nested):
        assert check_axiom(nested, "m").holds

    def test_fails_with_witness(self):
        R = tf("abcd", {
            ("a", "b"): "abc", ("a", "c"): "acd", ("a", "d"): "ad",
            ("b", "c"): "bc", ("b", "d"): "bd", ("c", "d"): "cd"})
        v = check_axiom(R, "m")
        assert not v.holds
        u_, v_, p, q = v.witness
        # re-violate: p,q inside R(u,v) but R(p,q) leaks out
        a = R.bits(u_, v_)
        assert (a >> p) & 1 and (a >> q) & 1
        assert R.bits(p, q) & ~a

    def test_witness_lex_smallest(self):
        R = tf("abcde", {
            ("a", "b"): "abcde", ("a", "c"): "ac", ("a", "d"): "abcde",
            ("a", "e"): "ae", ("b", "c"): "abcde", ("b", "d"): "bde",
            ("b", "e"): "be", ("c", "d"): "acd", ("c", "e"): "abcde",
            ("d", "e"): "de"})
        v = check_axiom(R, "m")
        # first failing tuple in lexicographic quantifier order
        assert v.witness == (2, 3, 0, 3)


class TestAttainment:
    def test_holds_when_full_attained(self, nested):
        assert check_axiom(nested, "a'").holds

    def test_fails(self, triangle):
        v = check_axiom(triangle, "a'")
        assert not v.holds
        assert v.witness == (0, 1)
        assert "largest transit set" in v.detail

    def test_single_element(self):
        R = TransitFunction(GroundSet(("a",)), ())
        assert check_axiom(R, "a'").holds


class TestWFamily:
    def test_triangle_fails_w(self, triangle):
        v = check_axiom(triangle, "w")
        assert v.witness == (0, 1, 2)

    def test_w1_is_alias(self, triangle, nested):
        for R in (triangle, nested):
            vw = check_axiom(R, "w")
            v1 = check_axiom(R, "w1")
            assert (vw.holds, vw.witness) == (v1.holds, v1.witness)
            assert v1.axiom == "w1"

    def test_w_w2_w3_coincide_on_samples(self):
        for R in random_tfs(101, 150, 4):
            if not check_axiom(R, "m").holds:
                continue
            vals = {t: check_axiom(R, t).holds for t in ("w", "w2", "w3")}
            assert len(set(vals.values())) == 1, vals

    def test_guarded_w2_coincides(self):
        for R in random_tfs(202, 200, 4):
            assert check_axiom(R, "w2").holds == check_w2_guarded(R).holds


class TestXFamily:
    def test_x_prime_weaker_than_x(self):
        # hub-and-spokes: every pair not through d maps to X except edges
        R = tf("abcd", {
            ("a", "b"): "abcd", ("a", "c"): "ac", ("b", "c"): "bc",
            ("a", "d"): "ad", ("b", "d"): "bd", ("c", "d"): "cd"})
        assert check_axiom(R, "x'").holds
        assert not check_axiom(R, "x").holds

    def test_witness_names_missing_element(self):
        R = tf("abcd", {
            ("a", "b"): "abcd", ("a", "c"): "ac", ("b", "c"): "bc",
            ("a", "d"): "ad", ("b", "d"): "bd", ("c", "d"): "cd"})
        v = check_axiom(R, "x")
        assert not v.holds
        x, y, z, missing = v.witness
        assert (R.bits(x, y) >> missing) & 1
        assert not ((R.bits(x, z) | R.bits(z, y)) >> missing) & 1


class TestUAndUnions:
    def test_u_without_uc(self):
        R = tf("abcd", {
            ("a", "b"): "ab", ("a", "c"): "ac", ("b", "c"): "bc",
            ("a", "d"): "abcd", ("b", "d"): "bcd", ("c", "d"): "bcd"})
        assert check_axiom(R, "u").holds
        v = check_axiom(R, "uc")
        assert not v.holds
        u_, v_, x, y = v.witness
        union = R.bits(u_, v_) | R.bits(x, y)
        assert all(R.bits(p, q) != union
                   for p in range(4) for q in range(p + 1, 4))

    def test_uc_holds_on_hierarchy(self, nested):
        assert check_axiom(nested, "uc").holds


class TestMMAndK3:
    def test_mm_fails_on_triangle(self, triangle):
        assert not check_axiom(triangle, "mm").holds

    def test_k3_detail_no_cover(self, triangle):
        v = check_axiom(triangle, "k3")
        assert not v.holds
        assert v.detail == "no transit set covers the union"


class TestOFamily:
    def test_o_implies_o_prime_on_samples(self):
        for R in random_tfs(303, 200, 4):
            if check_axiom(R, "o").holds:
                assert check_axiom(R, "o'").holds

    def test_o_fails_but_o_prime_holds(self):
        R = tf("abcd", {
            ("a", "b"): "abcd", ("a", "c"): "ac", ("b", "c"): "bc",
            ("a", "d"): "ad", ("b", "d"): "bd", ("c", "d"): "acd"})
        assert check_axiom(R, "o'").holds
        v = check_axiom(R, "o")
        assert v.witness == (0, 1)


class TestDispatch:
    def test_unknown_tag(self, triangle):
        with pytest.raises(ValueError):
            check_axiom(triangle, "zz")

    def test_classify_all_order_and_consistency(self, triangle):
        result = classify_all(triangle)
        assert tuple(result) == TRANSIT_AXIOMS
        for tag, verdict in result.items():
            again = check_axiom(triangle, tag)
            assert (verdict.holds, verdict.witness) == (again.holds, again.witness)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_witnesses_are_inside_ground_set(seed):
    (R,) = random_tfs(seed, 1, 4)
    n = R.groundset.n
    for tag in TRANSIT_AXIOMS:
        v = check_axiom(R, tag)
        if v.witness is not None:
            flat = [p for p in v.witness if isinstance(p, int)]
            assert all(0 <= p < n for p in flat)
