import random

import pytest

from synchro import core
from synchro.core import (
    CapExceeded,
    Dfa,
    InputError,
    PreconditionError,
    StateSet,
    apply_word,
    image,
    preimage,
)


def cerny(n):
    # letter a bumps state 0 to 1 and fixes the rest; letter b is the n-cycle
    a = tuple(1 if q == 0 else q for q in range(n))
    b = tuple((q + 1) % n for q in range(n))
    return Dfa(n, ("a", "b"), (a, b), name=f"C{n}")


def chain(n):
    return Dfa(n, ("a",), (tuple(max(q - 1, 0) for q in range(n)),), name=f"M{n}")


def w(d, names):
    return core.word_from_names(d, names)


def random_dfa(n, k, rng):
    return Dfa(n, tuple(f"x{i}" for i in range(k)),
               tuple(tuple(rng.randrange(n) for _ in range(n)) for _ in range(k)))


class TestDfaValidation:
    def test_rejects_bad_state_index(self):
        with pytest.raises(InputError):
            Dfa(2, ("a",), ((0, 2),))

    def test_rejects_duplicate_letters(self):
        with pytest.raises(InputError):
            Dfa(1, ("a", "a"), ((0,), (0,)))

    def test_rejects_empty_letter_name(self):
        with pytest.raises(InputError):
            Dfa(1, ("",), ((0,),))

    def test_rejects_short_row(self):
        with pytest.raises(InputError):
            Dfa(3, ("a",), ((0, 1),))


class TestApplyWord:
    def test_cerny_hand_trace(self):
        # 0.a = 1, then three b-steps walk the cycle back to 0
        d = cerny(4)
        assert apply_word(d, 0, w(d, "abbb")) == 0

    def test_empty_word_is_identity(self):
        d = cerny(5)
        for q in range(5):
            assert apply_word(d, q, ()) == q

    def test_cycle_letter_wraps(self):
        d = cerny(4)
        assert apply_word(d, 3, w(d, "b")) == 0

    def test_invalid_state(self):
        d = cerny(4)
        with pytest.raises(InputError):
            apply_word(d, 4, ())

    def test_invalid_letter(self):
        d = cerny(4)
        with pytest.raises(InputError):
            apply_word(d, 0, (2,))

    def test_associativity_random(self):
        rng = random.Random(11)
        for _ in range(40):
            d = random_dfa(rng.randrange(1, 7), rng.randrange(1, 4), rng)
            u = tuple(rng.randrange(d.k) for _ in range(rng.randrange(4)))
            v = tuple(rng.randrange(d.k) for _ in range(rng.randrange(4)))
            for q in range(d.n):
                assert apply_word(d, q, u + v) == apply_word(d, apply_word(d, q, u), v)


class TestImagePreimage:
    def test_image_merges(self):
        d = cerny(4)
        P = StateSet.of(4, [0, 1])
        assert image(d, P, w(d, "a")).states() == (1,)

    def test_image_empty_word(self):
        d = cerny(6)
        P = StateSet.of(6, [2, 4])
        assert image(d, P, ()) == P

    def test_image_of_reset_word_is_singleton(self):
        d = cerny(4)
        res = image(d, StateSet.full(4), w(d, "abbbabbba"))
        assert res.states() == (1,)

    def test_image_rejects_empty_set(self):
        d = cerny(4)
        with pytest.raises(InputError):
            image(d, StateSet(4, 0), ())

    def test_preimage_inverts_a_column(self):
        d = cerny(4)
        assert preimage(d, StateSet.of(4, [1]), w(d, "a")).states() == (0, 1)

    def test_preimage_of_full_is_full(self):
        d = cerny(5)
        assert preimage(d, StateSet.full(5), w(d, "abab")).is_full()

    def test_preimage_fixed_state(self):
        d = cerny(4)
        assert preimage(d, StateSet.of(4, [2]), w(d, "a")).states() == (2,)

    def test_adjunction_exhaustive_small(self):
        # P is contained in (P.w)w^-1 and (P.w^-1).w is contained in P
        rng = random.Random(5)
        for _ in range(12):
            d = random_dfa(rng.randrange(2, 6), 2, rng)
            word = tuple(rng.randrange(2) for _ in range(rng.randrange(5)))
            for m in range(1, 1 << d.n):
                P = StateSet(d.n, m)
                img = image(d, P, word)
                assert P.mask & preimage(d, img, word).mask == P.mask
                pre = preimage(d, P, word)
                if not pre.is_empty():
                    assert image(d, pre, word).mask & ~P.mask == 0

    def test_image_never_grows(self):
        rng = random.Random(7)
        for _ in range(12):
            d = random_dfa(rng.randrange(2, 6), 2, rng)
            word = tuple(rng.randrange(2) for _ in range(rng.randrange(6)))
            for m in range(1, 1 << d.n):
                P = StateSet(d.n, m)
                assert len(image(d, P, word)) <= len(P)


class TestStateSet:
    def test_hard_cap(self):
        with pytest.raises(CapExceeded):
            StateSet.full(65)

    def test_membership_and_len(self):
        s = StateSet.of(6, [0, 3, 5])
        assert 3 in s and 1 not in s
        assert len(s) == 3
        assert list(s) == [0, 3, 5]


class TestGraph:
    def test_edge_count(self):
        g = core.underlying_graph(cerny(3))
        assert g.n == 3 and g.edge_count() == 6

    def test_chain_has_loop(self):
        g = core.underlying_graph(chain(3))
        assert g.edge_count() == 3
        assert ((0, 0), 1) in g.mult

    def test_cerny_in_degree(self):
        # edges into state 1: 0.a, 1.a, 0.b
        g = core.underlying_graph(cerny(4))
        assert g.in_degree(1) == 3

    def test_strong_connectivity(self):
        assert core.is_strongly_connected(cerny(6))
        assert not core.is_strongly_connected(chain(4))
        assert core.is_strongly_connected(chain(1))

    def test_scc_partition(self):
        succs = [[1], [0], [3], [3]]
        comp = core.strongly_connected_components(4, succs)
        assert comp[0] == comp[1]
        assert comp[2] != comp[3]
        assert comp[0] != comp[2]


class TestQuotientSubautomaton:
    def test_identity_partition(self):
        d = cerny(4)
        q = core.quotient(d, range(4))
        assert q.delta == d.delta

    def test_universal_partition(self):
        d = cerny(4)
        q = core.quotient(d, [0, 0, 0, 0])
        assert q.n == 1

    def test_non_congruence_rejected(self):
        d = cerny(4)
        # {0,1},{2,3}: 1.b = 2 and 0.b = 1 land in different blocks
        assert not core.is_congruence(d, [0, 0, 1, 1])
        with pytest.raises(PreconditionError):
            core.quotient(d, [0, 0, 1, 1])

    def test_congruence_checker_gates_quotient(self):
        # pairing adjacent states of the binary idempotent series: the
        # checker decides, and quotienting follows its verdict
        from synchro import families
        d = families.gen_two_idempotent(4).dfa
        blocks = [0, 0, 1, 1]
        if core.is_congruence(d, blocks):
            q = core.quotient(d, blocks)
            assert q.n == 2
        else:
            with pytest.raises(PreconditionError):
                core.quotient(d, blocks)

    def test_quotient_commutes_with_action(self):
        rng = random.Random(13)
        found = 0
        while found < 5:
            d = random_dfa(rng.randrange(2, 6), 2, rng)
            classes = tuple(rng.randrange(2) for _ in range(d.n))
            if not core.is_congruence(d, classes):
                continue
            found += 1
            q = core.quotient(d, classes)
            norm = core.normalize_partition(d, classes)
            word = tuple(rng.randrange(2) for _ in range(5))
            for s in range(d.n):
                assert norm[apply_word(d, s, word)] == apply_word(q, norm[s], word)

    def test_subautomaton_whole(self):
        d = cerny(4)
        sub, idx = core.subautomaton(d, StateSet.full(4))
        assert sub.delta == d.delta and idx == (0, 1, 2, 3)

    def test_subautomaton_zero_state(self):
        d = chain(4)
        sub, idx = core.subautomaton(d, StateSet.of(4, [0]))
        assert sub.n == 1 and idx == (0,)

    def test_open_set_rejected(self):
        d = cerny(4)
        with pytest.raises(PreconditionError):
            core.subautomaton(d, StateSet.of(4, [1, 2]))


class TestTransformations:
    def test_word_transformation_matches_apply(self):
        rng = random.Random(3)
        for _ in range(20):
            d = random_dfa(rng.randrange(1, 6), 2, rng)
            word = tuple(rng.randrange(2) for _ in range(rng.randrange(6)))
            t = core.word_transformation(d, word)
            for q in range(d.n):
                assert t[q] == apply_word(d, q, word)

    def test_compose_order(self):
        t = (1, 2, 0)
        u = (0, 0, 2)
        assert core.compose(t, u) == (0, 2, 0)

    def test_deficiency_and_idempotence(self):
        assert core.deficiency((1, 1, 2)) == 1
        assert core.is_idempotent((1, 1, 2))
        assert not core.is_idempotent((1, 2, 0))
        assert core.is_permutation((1, 2, 0))

    def test_cycles(self):
        assert core.cycles_of((1, 0, 2)) == [(0, 1), (2,)]
        assert core.cycles_of((1, 2, 0)) == [(0, 1, 2)]
        assert core.cycles_of((0, 0, 1)) == [(0,)]


class TestJson:
    def test_roundtrip(self):
        d = cerny(5)
        assert core.dfa_from_json(core.dfa_to_json(d)) == d

    def test_roundtrip_text(self, tmp_path):
        d = cerny(3)
        p = tmp_path / "c3.json"
        core.save_dfa(d, p)
        assert core.load_dfa(p) == d

    @pytest.mark.parametrize("mutate,fragment", [
        (lambda o: o.pop("n"), "n:"),
        (lambda o: o["delta"]["a"].append(0), "delta.a"),
        (lambda o: o["delta"].pop("b"), "delta.b"),
        (lambda o: o["delta"]["a"].__setitem__(0, 9), "delta.a[0]"),
        (lambda o: o["letters"].append("a"), "letters[2]"),
        (lambda o: o.__setitem__("extra", 1), "unknown keys"),
        (lambda o: o["delta"].__setitem__("c", [0, 0, 0, 0]), "delta.c"),
    ])
    def test_parse_errors_carry_path(self, mutate, fragment):
        obj = core.dfa_to_json(cerny(4))
        mutate(obj)
        with pytest.raises(InputError) as err:
            core.dfa_from_json(obj)
        assert fragment in str(err.value)

    def test_bad_json_text(self):
        with pytest.raises(InputError):
            core.dfa_loads("{not json")

    def test_bool_is_not_a_state(self):
        obj = core.dfa_to_json(cerny(2))
        obj["delta"]["a"][0] = True
        with pytest.raises(InputError):
            core.dfa_from_json(obj)


class TestDot:
    def test_merged_labels(self):
        dot = core.dfa_to_dot(cerny(4))
        assert '0 -> 1 [label="a,b"];' in dot
        assert '1 -> 1 [label="a"];' in dot

    def test_edge_lines_count(self):
        # one line per distinct (source, target) pair
        d = cerny(3)
        dot = core.dfa_to_dot(d)
        assert dot.count("->") == len({(q, row[q]) for row in d.delta for q in range(3)})
