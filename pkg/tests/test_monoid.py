import itertools
import random

import pytest

from synchro import core, families, monoid
from synchro.core import CapExceeded, Dfa


def cerny(n):
    return families.gen_cerny(n).dfa


def chain(n):
    return families.gen_chain(n).dfa


class TestClosure:
    def test_chain3_elements(self):
        m = monoid.transition_monoid(chain(3))
        # identity, the letter, and its square (a constant); a^3 = a^2
        assert len(m) == 3
        assert m.elements[0] == (0, 1, 2)
        assert (0, 0, 1) in m.elements and (0, 0, 0) in m.elements

    def test_identity_letter(self):
        d = Dfa(3, ("i",), ((0, 1, 2),))
        assert len(monoid.transition_monoid(d)) == 1

    def test_cerny3_contains_cycle_of_order_3(self):
        m = monoid.transition_monoid(cerny(3))
        b = cerny(3).delta[1]
        b2 = core.compose(b, b)
        b3 = core.compose(b2, b)
        assert b in m.elements and b2 in m.elements and b3 == (0, 1, 2)

    def test_closure_is_idempotent(self):
        rng = random.Random(9)
        for _ in range(10):
            n = rng.randrange(2, 5)
            d = Dfa(n, ("a", "b"),
                    tuple(tuple(rng.randrange(n) for _ in range(n)) for _ in range(2)))
            m = monoid.transition_monoid(d)
            elems = set(m.elements)
            for t in m.elements:
                for u in m.elements:
                    assert core.compose(t, u) in elems

    def test_witness_words_induce_their_elements(self):
        d = cerny(4)
        m = monoid.transition_monoid(d)
        for t, w in zip(m.elements, m.words):
            assert core.word_transformation(d, w) == t

    def test_cap(self):
        with pytest.raises(CapExceeded):
            monoid.transition_monoid(cerny(5), cap=10)


class TestAperiodic:
    def test_chain_yes(self):
        for n in (1, 3, 6):
            assert monoid.is_aperiodic(chain(n)).status == "in"

    def test_cerny_no(self):
        v = monoid.is_aperiodic(cerny(4))
        assert v.status == "out"

    def test_elevator_yes(self):
        assert monoid.is_aperiodic(families.gen_elevator(5).dfa).status == "in"

    def test_matches_bruteforce_power_check(self):
        rng = random.Random(17)
        for _ in range(15):
            n = rng.randrange(2, 5)
            d = Dfa(n, ("a", "b"),
                    tuple(tuple(rng.randrange(n) for _ in range(n)) for _ in range(2)))
            m = monoid.transition_monoid(d)
            expected = True
            for t in m.elements:
                powers = [t]
                while True:
                    nxt = core.compose(powers[-1], t)
                    if nxt in powers:
                        start = powers.index(nxt)
                        if len(powers) - start != 1:
                            expected = False
                        break
                    powers.append(nxt)
                if not expected:
                    break
            assert (monoid.is_aperiodic(d).status == "in") == expected


class TestInvolutionFree:
    def test_chain_yes(self):
        assert monoid.is_involution_free(chain(5)).status == "in"

    def test_cerny4_no(self):
        # the square of the cycle letter is an involution on the 4-cycle
        v = monoid.is_involution_free(cerny(4))
        assert v.status == "out"

    def test_aperiodic_implies_involution_free(self):
        rng = random.Random(29)
        for _ in range(25):
            n = rng.randrange(2, 5)
            d = Dfa(n, ("a", "b"),
                    tuple(tuple(rng.randrange(n) for _ in range(n)) for _ in range(2)))
            if monoid.is_aperiodic(d).status == "in":
                assert monoid.is_involution_free(d).status == "in"


class TestDsEds:
    def test_two_element_commutative(self):
        d = Dfa(2, ("c",), ((0, 0),))
        m = monoid.transition_monoid(d)
        assert monoid.is_in_ds(m).status == "in"

    def test_chain_monoid_in_ds(self):
        m = monoid.transition_monoid(chain(4))
        assert monoid.is_in_ds(m).status == "in"

    def test_rystsov_in_eds(self):
        for n in (3, 4, 5):
            m = monoid.transition_monoid(families.gen_rystsov(n).dfa)
            assert monoid.is_in_eds(m).status == "in"

    def test_ds_implies_eds_on_samples(self):
        rng = random.Random(43)
        for _ in range(20):
            n = rng.randrange(2, 5)
            d = Dfa(n, ("a", "b"),
                    tuple(tuple(rng.randrange(n) for _ in range(n)) for _ in range(2)))
            m = monoid.transition_monoid(d)
            if monoid.is_in_ds(m).status == "in":
                assert monoid.is_in_eds(m).status == "in"

    def test_group_monoid_in_eds(self):
        # a permutation generator has no idempotent but the identity
        d = Dfa(3, ("b",), ((1, 2, 0),))
        m = monoid.transition_monoid(d)
        assert monoid.is_in_eds(m).status == "in"

    def test_commutative_monoids_in_ds(self):
        rng = random.Random(59)
        checked = 0
        while checked < 10:
            n = rng.randrange(2, 5)
            d = Dfa(n, ("a", "b"),
                    tuple(tuple(rng.randrange(n) for _ in range(n)) for _ in range(2)))
            m = monoid.transition_monoid(d)
            if len(m) > 60:
                continue
            commutative = all(core.compose(t, u) == core.compose(u, t)
                              for t in m.elements for u in m.elements)
            if not commutative:
                continue
            checked += 1
            assert monoid.is_in_ds(m).status == "in"

    def test_ds_matches_bruteforce_definition(self):
        rng = random.Random(61)
        checked = 0
        while checked < 12:
            n = rng.randrange(2, 4)
            d = Dfa(n, ("a", "b"),
                    tuple(tuple(rng.randrange(n) for _ in range(n)) for _ in range(2)))
            m = monoid.transition_monoid(d)
            if len(m) > 30:
                continue
            checked += 1
            elems = list(m.elements)
            # literal definition with ideals computed by brute force
            def ideal(x):
                return frozenset(core.compose(core.compose(u, x), v)
                                 for u in elems for v in elems)
            ideals = {x: ideal(x) for x in elems}
            expected = True
            for x, y, z in itertools.product(elems, repeat=3):
                if ideals[x] == ideals[y] == ideals[z] == ideals[core.compose(x, x)]:
                    if ideals[x] != ideals[core.compose(y, z)]:
                        expected = False
                        break
                if not expected:
                    break
            assert (monoid.is_in_ds(m).status == "in") == expected

    def test_ds_invariant_under_letter_order(self):
        rng = random.Random(83)
        for _ in range(10):
            n = rng.randrange(2, 5)
            rows = tuple(tuple(rng.randrange(n) for _ in range(n)) for _ in range(2))
            d1 = Dfa(n, ("a", "b"), rows)
            d2 = Dfa(n, ("b", "a"), rows[::-1])
            v1 = monoid.is_in_ds(monoid.transition_monoid(d1))
            v2 = monoid.is_in_ds(monoid.transition_monoid(d2))
            assert v1.status == v2.status

    def test_cap(self):
        m = monoid.transition_monoid(cerny(4))
        with pytest.raises(CapExceeded):
            monoid.is_in_ds(m, cap=5)


class TestSummary:
    def test_chain_summary(self):
        out = monoid.monoid_summary(chain(4))
        assert out["size"] == 4
        assert out["aperiodic"]["status"] == "in"
        assert out["ds"]["status"] == "in"

    def test_m4_in_ds_and_cerny4_checked(self):
        m = monoid.transition_monoid(cerny(4))
        verdict = monoid.is_in_ds(m)
        assert verdict.status in ("in", "out")
