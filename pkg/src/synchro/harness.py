"""Verification campaigns, exhaustive enumeration, and random instance sources.

The enumeration emits exactly one representative per isomorphism class by
keeping only tables that equal their own canonical form (the
lexicographically least table over all state and letter relabelings).
Shards partition the table space by the first letter's image of state 0, so
a shard-by-shard run touches every class exactly once and can be resumed.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field

from synchro import bounds, classify, core, engine, families, monoid
from synchro.core import CapExceeded, Dfa, DomainError, StateSet

ENUM_STATE_CAP = 6
ENUM_LETTER_CAP = 2


@dataclass(frozen=True)
class EnumerationFilter:
    letters: int
    states: int
    eulerian: bool = False
    strongly_connected: bool = False
    synchronizing: bool = False
    aperiodic: bool = False
    min_letter_deficiency: int = 0


def canonical_table(delta, n, k):
    """The least relabeling of a letter-major table under state and letter
    permutations (letter relabeling = sorting the rows)."""
    best = None
    for sigma in itertools.permutations(range(n)):
        inv = [0] * n
        for q, s in enumerate(sigma):
            inv[s] = q
        cand = tuple(sorted(tuple(sigma[row[inv[q]]] for q in range(n))
                            for row in delta))
        if best is None or cand < best:
            best = cand
    return best


def _is_canonical(delta, n):
    # early-exit variant of canonical_table(delta) == delta
    for sigma in itertools.permutations(range(n)):
        inv = [0] * n
        for q, s in enumerate(sigma):
            inv[s] = q
        cand = tuple(sorted(tuple(sigma[row[inv[q]]] for q in range(n))
                            for row in delta))
        if cand < delta:
            return False
    return True


def _passes(filt, delta, n):
    if filt.min_letter_deficiency > 0:
        if all(core.deficiency(row) < filt.min_letter_deficiency for row in delta):
            return False
    d = Dfa(n, tuple(f"x{i}" for i in range(len(delta))), delta)
    if filt.eulerian and classify.is_eulerian(d).status != "in":
        return False
    if filt.strongly_connected and not core.is_strongly_connected(d):
        return False
    if filt.synchronizing and not engine.is_synchronizing(d):
        return False
    if filt.aperiodic and monoid.is_aperiodic(d).status != "in":
        return False
    return True


def _letter_rows(filt, n):
    """Candidate rows for one letter, indexed by in-degree profile when the
    Eulerian filter is on (the profiles of the two letters must then sum to
    a constant |letters| at every state)."""
    rows = list(itertools.product(range(n), repeat=n))
    if not filt.eulerian:
        return rows, None
    by_profile = {}
    for row in rows:
        profile = [0] * n
        for t in row:
            profile[t] += 1
        by_profile.setdefault(tuple(profile), []).append(row)
    return rows, by_profile


def enumerate_automata(filt, shard=None):
    """One canonical representative per isomorphism class passing the filter.

    shard, when given, restricts the scan to tables whose first letter sends
    state 0 to that value; the union over shards 0..n-1 is the full census.
    """
    n, k = filt.states, filt.letters
    if n > ENUM_STATE_CAP or k > ENUM_LETTER_CAP:
        raise CapExceeded(
            f"census budget is letters <= {ENUM_LETTER_CAP}, states <= {ENUM_STATE_CAP}")
    letters = tuple(chr(ord("a") + i) for i in range(k))
    rows, by_profile = _letter_rows(filt, n)
    first_rows = rows if shard is None else [r for r in rows if r[0] == shard]
    for first in first_rows:
        if k == 1:
            tables = [(first,)]
        elif by_profile is not None:
            profile = [0] * n
            for t in first:
                profile[t] += 1
            need = tuple(k - c for c in profile)
            if min(need) < 0:
                continue
            tables = [(first, second) for second in by_profile.get(need, ())]
        else:
            tables = [(first, second) for second in rows]
        for delta in tables:
            if tuple(sorted(delta)) != delta:
                continue
            if not _passes(filt, delta, n):
                continue
            if not _is_canonical(delta, n):
                continue
            yield Dfa(n, letters, delta)


@dataclass
class CensusReport:
    classes: int = 0
    max_rt: int = -1
    attainers: list = field(default_factory=list)

    def absorb(self, other):
        self.classes += other["classes"]
        if other["max_rt"] > self.max_rt:
            self.max_rt = other["max_rt"]
            self.attainers = list(other["attainers"])
        elif other["max_rt"] == self.max_rt:
            self.attainers.extend(other["attainers"])


def census_max_rt(filt, checkpoint=None):
    """Max reset threshold over the filtered census, with its attainers.

    With a checkpoint path, finished shards are written out as they complete
    and an interrupted run resumes where it stopped, reproducing the same
    final report.
    """
    done = {}
    if checkpoint is not None:
        try:
            with open(checkpoint) as fh:
                for line in fh:
                    rec = json.loads(line)
                    done[rec["shard"]] = rec
        except FileNotFoundError:
            pass
    report = CensusReport()
    for shard in range(filt.states):
        if shard in done:
            report.absorb(done[shard])
            continue
        rec = {"shard": shard, "classes": 0, "max_rt": -1, "attainers": []}
        for d in enumerate_automata(filt, shard=shard):
            rec["classes"] += 1
            if engine.is_synchronizing(d):
                rt, _ = engine.exact_reset_threshold(d)
            else:
                rt = -1
            if rt > rec["max_rt"]:
                rec["max_rt"] = rt
                rec["attainers"] = [list(map(list, d.delta))]
            elif rt == rec["max_rt"]:
                rec["attainers"].append(list(map(list, d.delta)))
        if checkpoint is not None:
            with open(checkpoint, "a") as fh:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
        report.absorb(rec)
    return report


# -- random instance sources ---------------------------------------------------

def random_synchronizing(n, k, seed, max_tries=100000):
    """A uniformly sampled transition table, rejection-sampled until it
    synchronizes; deterministic per seed."""
    rng = random.Random(seed)
    for _ in range(max_tries):
        delta = tuple(tuple(rng.randrange(n) for _ in range(n)) for _ in range(k))
        d = Dfa(n, tuple(chr(ord("a") + i) for i in range(k)), delta)
        if engine.is_synchronizing(d):
            return d
    raise CapExceeded(f"no synchronizing table found in {max_tries} tries")


def random_simple_idempotent_binary(n, seed, max_tries=100000):
    """Binary, letter a a random simple idempotent, letter b arbitrary."""
    if n < 2:
        raise DomainError("needs n >= 2")
    rng = random.Random(seed)
    for _ in range(max_tries):
        e = rng.randrange(n)
        dst = rng.choice([q for q in range(n) if q != e])
        arow = tuple(dst if q == e else q for q in range(n))
        brow = tuple(rng.randrange(n) for _ in range(n))
        d = Dfa(n, ("a", "b"), (arow, brow))
        if engine.is_synchronizing(d):
            return d
    raise CapExceeded(f"no synchronizing table found in {max_tries} tries")


def random_all_simple_idempotent(n, k, seed, max_tries=100000):
    """k letters, each a random simple idempotent, until synchronizing.

    Needs k >= n-1: the image of any word keeps every state no letter
    excludes, so fewer letters can never reach a singleton. The first n-1
    letters exclude distinct states to keep the rejection rate workable.
    """
    if n < 2:
        raise DomainError("needs n >= 2")
    if k < n - 1:
        raise DomainError("needs at least n-1 letters to synchronize")
    rng = random.Random(seed)
    for _ in range(max_tries):
        excluded = list(range(n))
        rng.shuffle(excluded)
        excluded = excluded[:n - 1] + [rng.randrange(n) for _ in range(k - n + 1)]
        rows = []
        for e in excluded:
            dst = rng.choice([q for q in range(n) if q != e])
            rows.append(tuple(dst if q == e else q for q in range(n)))
        d = Dfa(n, tuple(f"a{i+1}" for i in range(k)), tuple(rows))
        if engine.is_synchronizing(d):
            return d
    raise CapExceeded(f"no synchronizing table found in {max_tries} tries")


def random_eulerian_binary(n, seed, max_tries=100000):
    """Binary Eulerian synchronizing instance: letter b's in-degree profile
    complements letter a's."""
    rng = random.Random(seed)
    for _ in range(max_tries):
        arow = tuple(rng.randrange(n) for _ in range(n))
        profile = [0] * n
        for t in arow:
            profile[t] += 1
        if max(profile) > 2:
            continue
        targets = [q for q in range(n) for _ in range(2 - profile[q])]
        rng.shuffle(targets)
        brow = tuple(targets)
        d = Dfa(n, ("a", "b"), (arow, brow))
        if classify.is_eulerian(d).status == "in" and engine.is_synchronizing(d):
            return d
    raise CapExceeded(f"no instance found in {max_tries} tries")


def random_completely_reachable_binary(n, seed, max_tries=100000):
    rng = random.Random(seed)
    for _ in range(max_tries):
        delta = tuple(tuple(rng.randrange(n) for _ in range(n)) for _ in range(2))
        d = Dfa(n, ("a", "b"), delta)
        if classify.is_completely_reachable(d).status == "in":
            return d
    raise CapExceeded(f"no instance found in {max_tries} tries")


def random_one_cluster_binary(n, seed, max_tries=100000):
    """Binary one-cluster synchronizing instance, strongly connected.

    Without strong connectivity a state with no incoming edges makes any
    subset containing it non-extensible, so the per-class extension bounds
    are gauged on strongly connected instances only.
    """
    rng = random.Random(seed)
    for _ in range(max_tries):
        delta = tuple(tuple(rng.randrange(n) for _ in range(n)) for _ in range(2))
        d = Dfa(n, ("a", "b"), delta)
        if (classify.one_cluster_letters(d) and engine.is_synchronizing(d)
                and core.is_strongly_connected(d)):
            return d
    raise CapExceeded(f"no instance found in {max_tries} tries")


# -- verification cases ----------------------------------------------------------


@dataclass(frozen=True)
class CaseSpec:
    case_id: str
    description: str
    min_n: int
    fn: object


@dataclass
class CaseResult:
    case_id: str
    description: str
    passed: bool
    detail: str
    seconds: float

    def to_json(self):
        return {"case": self.case_id, "description": self.description,
                "outcome": "PASS" if self.passed else "FAIL",
                "detail": self.detail, "seconds": round(self.seconds, 3)}


def _fail(msgs, text):
    msgs.append(text)


def crit_cerny_formula(max_n, samples=None):
    msgs = []
    count = 0
    for n in range(2, min(10, max_n) + 1):
        count += 1
        inst = families.gen_cerny(n)
        rt, word = engine.exact_reset_threshold(inst.dfa)
        if rt != (n - 1) ** 2:
            _fail(msgs, f"n={n}: threshold {rt} != (n-1)^2")
        if len(word) != (n - 1) ** 2:
            _fail(msgs, f"n={n}: witness length {len(word)}")
        w = inst.notes["witness_word"]
        if len(core.image(inst.dfa, StateSet.full(n), w)) != 1:
            _fail(msgs, f"n={n}: recorded witness word does not reset")
    return not msgs, "; ".join(msgs) or f"{count} sizes checked"


def crit_dnk_formula(max_n, samples=None):
    msgs = []
    pairs = [(n, k) for n, k in [(5, 3), (7, 4), (8, 5), (9, 5), (10, 7)] if n <= max_n]
    for n, k in pairs:
        inst = families.gen_dnk(n, k)
        rt, _ = engine.exact_reset_threshold(inst.dfa)
        if rt != k * (n - 2) + 2:
            _fail(msgs, f"(n,k)=({n},{k}): threshold {rt} != {k * (n - 2) + 2}")
        w = inst.notes["witness_word"]
        if len(core.image(inst.dfa, StateSet.full(n), w)) != 1:
            _fail(msgs, f"(n,k)=({n},{k}): recorded witness word does not reset")
    return not msgs, "; ".join(msgs) or f"{len(pairs)} pairs checked"


def crit_frobenius(max_n, samples=None):
    msgs = []
    top = min(12, max_n)
    import math
    for n in range(3, top + 1):
        for k in range(2, n):
            if math.gcd(n, k) != 1:
                continue
            reachable = {i * n + j * k for i in range(k + 1) for j in range(n + 1)}
            expected = max(x for x in range(n * k) if x not in reachable)
            got = engine.frobenius_largest_gap(n, k)
            if got != expected:
                _fail(msgs, f"({n},{k}): {got} != scan {expected}")
    return not msgs, "; ".join(msgs) or f"coprime pairs up to {top} checked"


def crit_unbounded_alphabet_families(max_n, samples=None):
    msgs = []
    for n in range(3, min(7, max_n) + 1):
        for maker in (families.gen_rystsov, families.gen_v):
            inst = maker(n)
            rt, _ = engine.exact_reset_threshold(inst.dfa)
            if rt != n * (n - 1) // 2:
                _fail(msgs, f"{inst.family} n={n}: {rt} != n(n-1)/2")
    return not msgs, "; ".join(msgs) or "both series checked"


def crit_linear_families(max_n, samples=None):
    msgs = []
    for n in range(2, min(10, max_n) + 1):
        for maker in (families.gen_chain, families.gen_two_idempotent,
                      families.gen_elevator):
            inst = maker(n)
            rt, _ = engine.exact_reset_threshold(inst.dfa)
            if rt != n - 1:
                _fail(msgs, f"{inst.family} n={n}: {rt} != n-1")
    return not msgs, "; ".join(msgs) or "three series checked"


def crit_solver_bounds_random(max_n, samples=500):
    msgs = []
    top = min(8, max_n)
    profiled = 0
    for i in range(samples):
        n = 2 + (i % (top - 1))
        d = random_synchronizing(n, 2, seed=1000 + i)
        rt, _ = engine.exact_reset_threshold(d)
        g = engine.greedy_compression_word(d)
        if not rt <= g.length <= (n ** 3 - n) // 6:
            _fail(msgs, f"greedy bound broken on seed {1000 + i}")
            break
        try:
            prof = engine.extensibility_profile(d)
        except engine.NotExtensible:
            prof = None
        if prof is not None:
            profiled += 1
            ext = engine.reset_word_via_extension(d)
            if not rt <= ext.length <= prof.extension_bound():
                _fail(msgs, f"extension bound broken on seed {1000 + i}")
                break
    detail = f"{samples} seeded instances checked, {profiled} with full profiles"
    return not msgs, "; ".join(msgs) or detail


def crit_a10_solver(max_n, samples=200):
    msgs = []
    for n in range(3, min(10, max_n) + 1):
        res = engine.a10_binary_idempotent_word(families.gen_cerny(n).dfa)
        if res.length > (n - 1) ** 2:
            _fail(msgs, f"cerny n={n}: length {res.length} over the square bound")
    top = min(10, max_n)
    for i in range(samples):
        n = 2 + (i % (top - 1))
        d = random_simple_idempotent_binary(n, seed=2000 + i)
        try:
            res = engine.a10_binary_idempotent_word(d)
        except AssertionError as exc:
            _fail(msgs, f"seed {2000 + i}: solver invariant fired: {exc}")
            break
        if res.length > (n - 1) ** 2:
            _fail(msgs, f"seed {2000 + i}: length {res.length} over the square bound")
            break
    return not msgs, "; ".join(msgs) or f"{samples} seeded instances checked"


def crit_c7_solver(max_n, samples=120):
    msgs = []
    for n in range(2, min(9, max_n) + 1):
        d = families.gen_elevator(n).dfa
        res = engine.c7_height_word(d)
        rt, _ = engine.exact_reset_threshold(d)
        if not res.length == n - 1 == rt:
            _fail(msgs, f"elevator n={n}: {res.length} vs exact {rt}")
    top = min(9, max_n)
    for i in range(samples):
        n = 2 + (i % (top - 1))
        k = n - 1 + (i % 2)
        d = random_all_simple_idempotent(n, k, seed=3000 + i)
        res = engine.c7_height_word(d)
        rt, _ = engine.exact_reset_threshold(d)
        if not res.length == n - 1 == rt:
            _fail(msgs, f"seed {3000 + i}: {res.length} vs exact {rt}")
            break
    return not msgs, "; ".join(msgs) or f"{samples} seeded instances checked"


def crit_eppstein(max_n, samples=None):
    msgs = []
    for n in range(3, min(8, max_n) + 1):
        d = families.gen_cerny(n).dfa
        res = engine.eppstein_orientable_word(d)
        rt, _ = engine.exact_reset_threshold(d)
        if res.length > (n - 1) ** 2 or res.length < rt:
            _fail(msgs, f"n={n}: produced {res.length}, exact {rt}")
        # re-walk the suffix preimages; each must be an arc of the cycle order
        cur = StateSet.singleton(n, res.target)
        for i in range(res.length - 1, -1, -1):
            cur = core.preimage(d, cur, res.word[i:i + 1])
            mask = cur.mask
            if mask in (0, (1 << n) - 1):
                continue
            ends = sum(1 for j in range(n)
                       if (mask >> j) & 1 and not (mask >> ((j + 1) % n)) & 1)
            if ends != 1:
                _fail(msgs, f"n={n}: suffix preimage {sorted(cur)} not an interval")
                break
    return not msgs, "; ".join(msgs) or "backward walks stayed within intervals"


def crit_classifier_ground_truths(max_n, samples=None):
    msgs = []
    for n in range(3, min(10, max_n) + 1):
        d = families.gen_cerny(n).dfa
        if classify.is_circular(d).status != "in":
            _fail(msgs, f"cerny {n} not circular")
        if ("b", n) not in classify.one_cluster_letters(d):
            _fail(msgs, f"cerny {n} cluster missing")
        if classify.is_two_junction(d).status != "in":
            _fail(msgs, f"cerny {n} not 2-junction")
        if classify.is_d6(d).status != "in":
            _fail(msgs, f"cerny {n} not in the transitive-permutation class")
        if classify.is_completely_reachable(d).status != "in":
            _fail(msgs, f"cerny {n} not completely reachable")
        if classify.is_a9(d).status != "in":
            _fail(msgs, f"cerny {n} restricted graph not strongly connected")
        if engine.orientation_violations(d, tuple(range(n))):
            _fail(msgs, f"cerny {n} not orientable under the identity order")
    for n in (4, 5):
        r = families.gen_rystsov(n).dfa
        if classify.has_zero(r).status != "in":
            _fail(msgs, f"rystsov {n} has no zero")
        if monoid.is_in_eds(monoid.transition_monoid(r)).status != "in":
            _fail(msgs, f"rystsov {n} monoid not in the idempotent ideal class")
        m = families.gen_chain(n).dfa
        if classify.order_class_check(m, "monotonic").status != "in":
            _fail(msgs, f"chain {n} not monotonic")
        if monoid.is_aperiodic(m).status != "in":
            _fail(msgs, f"chain {n} not aperiodic")
        if monoid.is_in_ds(monoid.transition_monoid(m)).status != "in":
            _fail(msgs, f"chain {n} monoid not in the regular ideal class")
    c4 = families.gen_cerny(4).dfa
    if classify.is_eulerian(c4).status != "out":
        _fail(msgs, "cerny 4 misreported eulerian")
    if monoid.is_aperiodic(c4).status != "out":
        _fail(msgs, "cerny 4 misreported aperiodic")
    if monoid.is_involution_free(c4).status != "out":
        _fail(msgs, "cerny 4 misreported involution-free")
    if classify.pseudo_eulerian_weights(c4).status != "out":
        _fail(msgs, "cerny 4 misreported weight-feasible")
    return not msgs, "; ".join(msgs) or "all ground truths hold"


def crit_extension_class_properties(max_n, samples=40):
    msgs = []
    top = min(8, max_n)
    cases = []
    for i in range(samples):
        n = 4 + (i % (top - 3))
        cases.append(("eulerian", random_eulerian_binary(n, seed=4000 + i)))
        cases.append(("one-cluster", random_one_cluster_binary(n, seed=5000 + i)))
        if i % 4 == 0:
            cases.append(("completely-reachable",
                          random_completely_reachable_binary(n, seed=6000 + i)))
    for n in range(4, top + 1):
        d = families.gen_cerny(n).dfa
        cases.append(("one-cluster", d))
        cases.append(("completely-reachable", d))
    for kind, d in cases:
        try:
            prof = engine.extensibility_profile(d)
        except engine.NotExtensible as exc:
            _fail(msgs, f"{kind} n={d.n}: subset not extensible: {exc}")
            break
        n = d.n
        if kind == "eulerian" and prof.max_length > n - 1:
            _fail(msgs, f"eulerian n={n}: extension length {prof.max_length} > n-1")
            break
        if kind == "one-cluster" and prof.max_length > 2 * n:
            _fail(msgs, f"one-cluster n={n}: extension length {prof.max_length} > 2n")
            break
        if kind == "completely-reachable":
            import math
            for size, length in prof.by_size.items():
                cap = 2 * n - math.ceil(n / (n - size))
                if length > cap:
                    _fail(msgs, f"reachable n={n}: size {size} took {length} > {cap}")
                    break
    return not msgs, "; ".join(msgs) or f"{len(cases)} instances profiled"


def crit_eulerian_census(max_n, samples=None):
    filt = EnumerationFilter(letters=2, states=5, eulerian=True, synchronizing=True)
    report = census_max_rt(filt)
    ok = report.max_rt == 10 and len(report.attainers) == 1
    detail = (f"max threshold {report.max_rt} across {report.classes} classes, "
              f"{len(report.attainers)} attainer(s)")
    return ok, detail


def crit_bound_registry(max_n, samples=None):
    from fractions import Fraction
    msgs = []
    if bounds.bound_for_class("pin_frankl", 10) != 165:
        _fail(msgs, "pin_frankl(10) != 165")
    if bounds.bound_for_class("kari_eulerian", 5) != 13:
        _fail(msgs, "kari_eulerian(5) != 13")
    expected = Fraction(85059 * 1000 + 90024 * 100 + 196504 * 10 - 10648, 511104)
    if bounds.bound_for_class("szykula", 10) != expected:
        _fail(msgs, "szykula(10) mismatch")
    for entry in bounds.REGISTRY.values():
        if entry.scale != "quadratic":
            continue
        for n in range(max(2, entry.min_n), min(10, max_n) + 1):
            params = {p: 1 for p in entry.params}
            if bounds.bound_for_class(entry.id, n, **params) < (n - 1) ** 2:
                _fail(msgs, f"{entry.id} at n={n} dips below the square")
    for n in range(3, min(7, max_n) + 1):
        rt, _ = engine.exact_reset_threshold(families.gen_rystsov(n).dfa)
        if rt > bounds.bound_for_class("b1", n):
            _fail(msgs, f"b1 bound misses its own family at n={n}")
        rt, _ = engine.exact_reset_threshold(families.gen_chain(n).dfa)
        if rt > bounds.bound_for_class("c1", n):
            _fail(msgs, f"c1 bound misses its own family at n={n}")
    return not msgs, "; ".join(msgs) or "registry checks hold"


PAPER_CASES = [
    CaseSpec("1-cerny-formula", "series threshold (n-1)^2 and its witness word", 2,
             crit_cerny_formula),
    CaseSpec("2-dnk-formula", "one-cluster series threshold k(n-2)+2 and witness", 5,
             crit_dnk_formula),
    CaseSpec("3-frobenius", "largest non-representable integer vs scan", 3,
             crit_frobenius),
    CaseSpec("4-unbounded-alphabet", "zero and coinciding-cycle series at n(n-1)/2", 3,
             crit_unbounded_alphabet_families),
    CaseSpec("5-linear-families", "chain, two-idempotent, elevator series at n-1", 2,
             crit_linear_families),
    CaseSpec("6-solver-bounds", "greedy and extension bounds on seeded instances", 2,
             crit_solver_bounds_random),
    CaseSpec("7-a10-solver", "binary simple-idempotent solver within the square", 2,
             crit_a10_solver),
    CaseSpec("8-c7-solver", "all-simple-idempotent solver exact at n-1", 2,
             crit_c7_solver),
    CaseSpec("9-eppstein", "interval solver within the square, intervals hold", 3,
             crit_eppstein),
    CaseSpec("10-classifier", "classifier ground truths on the families", 3,
             crit_classifier_ground_truths),
    CaseSpec("11-extension-classes", "per-class extension-length guarantees", 4,
             crit_extension_class_properties),
    CaseSpec("12-eulerian-census", "binary eulerian census at five states", 5,
             crit_eulerian_census),
    CaseSpec("13-bound-registry", "registry values and scale relations", 2,
             crit_bound_registry),
]

QUICK_OVERRIDES = {
    "6-solver-bounds": 40,
    "7-a10-solver": 25,
    "8-c7-solver": 20,
    "11-extension-classes": 6,
}

QUICK_SKIP = {"12-eulerian-census"}


def run_case(spec, max_n, samples=None):
    start = time.perf_counter()
    try:
        if samples is None:
            passed, detail = spec.fn(max_n)
        else:
            passed, detail = spec.fn(max_n, samples=samples)
    except Exception as exc:  # a crash is a failure, not a verdict
        passed, detail = False, f"error: {exc}"
    return CaseResult(spec.case_id, spec.description, passed, detail,
                      time.perf_counter() - start)


def run_suite(suite="paper", max_n=10, workers=1, out_path=None):
    """Execute the verification campaign; failures are data, not errors."""
    if suite not in ("paper", "quick"):
        raise DomainError(f"unknown suite {suite!r}")
    specs = [s for s in PAPER_CASES if s.min_n <= max_n]
    if suite == "quick":
        specs = [s for s in specs if s.case_id not in QUICK_SKIP]
    results = []
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [(s.case_id,
                        pool.submit(run_case, s, max_n,
                                    QUICK_OVERRIDES.get(s.case_id) if suite == "quick" else None))
                       for s in specs]
            results = [f.result() for _, f in futures]
    else:
        for s in specs:
            samples = QUICK_OVERRIDES.get(s.case_id) if suite == "quick" else None
            results.append(run_case(s, max_n, samples))
    results.sort(key=lambda r: r.case_id)
    if out_path is not None:
        with open(out_path, "w") as fh:
            for r in results:
                fh.write(json.dumps(r.to_json(), sort_keys=True) + "\n")
    return results
