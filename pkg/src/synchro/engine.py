"""Synchronization testing, exact reset thresholds, and constructive solvers.

All searches are deterministic: letters are expanded in index order and ties
between equal-length words are broken lexicographically, so repeated runs
reproduce the same words bit for bit.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from synchro import core
from synchro.core import (
    CapExceeded,
    DomainError,
    NotSynchronizing,
    StateSet,
    bits,
    image_mask,
    letter_preimage_masks,
    preimage_mask,
)

EXTENSION_CAP = 16   # default cap for exhaustive per-subset extension searches


class NotExtensible(DomainError):
    """Some proper non-singleton subset admits no preimage-growing word."""

    def __init__(self, subset):
        self.subset = subset
        super().__init__(f"subset {sorted(subset)} is not extensible")


@dataclass(frozen=True)
class SolveResult:
    """A verified reset word together with the state it resets to."""

    word: tuple
    method: str
    target: int

    @property
    def length(self):
        return len(self.word)

    def to_json(self, d):
        return {
            "method": self.method,
            "word": core.word_names(d, self.word),
            "length": self.length,
            "target": self.target,
        }


@dataclass(frozen=True)
class ExtensibilityProfile:
    """Shortest extension lengths, keyed by subset size; alpha = max length / n."""

    n: int
    by_size: dict
    max_length: int

    @property
    def alpha(self):
        return Fraction(self.max_length, self.n)

    def extension_bound(self):
        """1 + alpha*n*(n-2), the reset length the extension method guarantees."""
        return 1 + self.max_length * (self.n - 2)


def _check_subset_cap(n, cap):
    if n > core.HARD_STATE_CAP:
        raise CapExceeded(f"n={n} exceeds the hard subset cap {core.HARD_STATE_CAP}")
    if n > cap:
        raise CapExceeded(f"n={n} exceeds the exhaustive-search cap {cap}")


def _finish(d, word, method):
    """Verify a candidate reset word and wrap it up. A failure here is a bug."""
    mask = (1 << d.n) - 1
    for a in word:
        mask = image_mask(d.delta[a], mask)
    if mask.bit_count() != 1:
        raise AssertionError(f"{method} produced a non-reset word {word!r}")
    return SolveResult(tuple(word), method, mask.bit_length() - 1)


def is_synchronizing(d):
    """Decide synchronizability by merging pairs backward; no power-set search."""
    n = d.n
    if n == 1:
        return True
    mergeable = set()
    rev = {}
    queue = deque()
    for p in range(n):
        for q in range(p + 1, n):
            for row in d.delta:
                pp, qq = row[p], row[q]
                if pp == qq:
                    if (p, q) not in mergeable:
                        mergeable.add((p, q))
                        queue.append((p, q))
                else:
                    key = (pp, qq) if pp < qq else (qq, pp)
                    rev.setdefault(key, []).append((p, q))
    while queue:
        pair = queue.popleft()
        for src in rev.get(pair, ()):
            if src not in mergeable:
                mergeable.add(src)
                queue.append(src)
    return len(mergeable) == n * (n - 1) // 2


def merge_probe_target(d):
    """A state the automaton can be reset to, found by repeated pair merging."""
    if not is_synchronizing(d):
        raise NotSynchronizing("automaton is not synchronizing")
    cur = frozenset(range(d.n))
    while len(cur) > 1:
        it = iter(sorted(cur))
        p, q = next(it), next(it)
        u = _pair_merge_word(d, p, q)
        cur = frozenset(core.apply_word(d, s, u) for s in cur)
    return next(iter(cur))


def _pair_merge_word(d, p, q):
    # BFS in the pair automaton from {p,q} to the diagonal
    start = (p, q) if p < q else (q, p)
    parent = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        for a in range(d.k):
            row = d.delta[a]
            pp, qq = row[pair[0]], row[pair[1]]
            if pp == qq:
                word = [a]
                while parent[pair] is not None:
                    pair, b = parent[pair]
                    word.append(b)
                word.reverse()
                return tuple(word)
            key = (pp, qq) if pp < qq else (qq, pp)
            if key not in parent:
                parent[key] = (pair, a)
                queue.append(key)
    raise NotSynchronizing(f"states {p} and {q} cannot be merged")


def exact_reset_threshold(d, cap=core.SUBSET_BFS_CAP):
    """The reset threshold and the lexicographically least shortest reset word.

    Breadth-first search over the images of the full state set; within one
    BFS level subsets are discovered in lexicographic order of their witness
    words, so the first singleton found closes the search.
    """
    _check_subset_cap(d.n, cap)
    if d.n == 1:
        return 0, ()
    if not is_synchronizing(d):
        raise NotSynchronizing("automaton is not synchronizing")
    full = (1 << d.n) - 1
    parent = {full: None}
    queue = deque([full])
    while queue:
        m = queue.popleft()
        for a in range(d.k):
            m2 = image_mask(d.delta[a], m)
            if m2 in parent:
                continue
            parent[m2] = (m, a)
            if m2 & (m2 - 1) == 0:
                word = []
                cur = m2
                while parent[cur] is not None:
                    cur, b = parent[cur]
                    word.append(b)
                word.reverse()
                return len(word), tuple(word)
            queue.append(m2)
    raise AssertionError("synchronizing automaton ran out of subsets")


def greedy_compression_word(d, cap=core.SUBSET_BFS_CAP):
    """Compress the full state set step by step, each step by a shortest word.

    Each step runs a BFS from the current image and stops at the first
    strictly smaller subset (ties broken lexicographically).
    """
    _check_subset_cap(d.n, cap)
    if d.n == 1:
        return _finish(d, (), "greedy")
    if not is_synchronizing(d):
        raise NotSynchronizing("automaton is not synchronizing")
    word = []
    cur = (1 << d.n) - 1
    while cur.bit_count() > 1:
        size = cur.bit_count()
        seen = {cur}
        parent = {cur: None}
        queue = deque([cur])
        step = None
        while queue and step is None:
            m = queue.popleft()
            for a in range(d.k):
                m2 = image_mask(d.delta[a], m)
                if m2 in seen:
                    continue
                seen.add(m2)
                parent[m2] = (m, a)
                if m2.bit_count() < size:
                    step = m2
                    break
                queue.append(m2)
        if step is None:
            raise AssertionError("no compressing word found for a synchronizing automaton")
        part = []
        cur2 = step
        while parent[cur2] is not None:
            cur2, b = parent[cur2]
            part.append(b)
        part.reverse()
        word.extend(part)
        cur = step
    return _finish(d, tuple(word), "greedy")


def _backward_lexmin(d, pre, start_mask, stop, node_check=None):
    """Level-synchronized backward BFS under single-letter preimages.

    Each step prepends a letter to the word, so per level and per subset the
    lexicographically least word is kept before moving on. Returns the least
    (word, mask) among the first level's subsets satisfying stop, or None.
    """
    if stop(start_mask):
        return (), start_mask
    seen = {start_mask}
    level = {start_mask: ()}
    while level:
        nxt = {}
        for m, w in level.items():
            for a in range(d.k):
                t = preimage_mask(pre[a], m)
                if t == 0 or t in seen:
                    # the empty set is a dead end under preimages
                    continue
                cand = (a,) + w
                old = nxt.get(t)
                if old is None or cand < old:
                    nxt[t] = cand
        if not nxt:
            return None
        if node_check is not None:
            for t in nxt:
                node_check(t)
        hits = [(w, t) for t, w in nxt.items() if stop(t)]
        if hits:
            return min(hits)
        seen.update(nxt)
        level = nxt


def shortest_extending_word(d, P, pre=None):
    """The least shortest word v with |P.v^-1| > |P|, or None if none exists."""
    if pre is None:
        pre = letter_preimage_masks(d)
    base = P.mask.bit_count()
    found = _backward_lexmin(d, pre, P.mask, lambda m: m.bit_count() > base)
    if found is None:
        return None
    return found[0]


def extensibility_profile(d, cap=EXTENSION_CAP):
    """Shortest extension lengths for every proper non-singleton subset.

    Raises NotExtensible (carrying the subset) as soon as one subset admits
    no extending word.
    """
    _check_subset_cap(d.n, cap)
    n = d.n
    pre = letter_preimage_masks(d)
    by_size = {}
    for m in range(1, 1 << n):
        size = m.bit_count()
        if size < 2 or size == n:
            continue
        v = shortest_extending_word(d, StateSet(n, m), pre)
        if v is None:
            raise NotExtensible(tuple(bits(m)))
        if len(v) > by_size.get(size, 0):
            by_size[size] = len(v)
    max_len = max(by_size.values(), default=0)
    return ExtensibilityProfile(n, by_size, max_len)


def reset_word_via_extension(d, cap=core.SUBSET_BFS_CAP):
    """Grow a singleton's preimage back to the full state set.

    The start state is the first state (in index order) with a two-or-more
    element preimage under some letter; that letter seeds the word. Each
    later piece is a shortest extending word; pieces are prepended.
    """
    _check_subset_cap(d.n, cap)
    if d.n == 1:
        return _finish(d, (), "extension")
    if not is_synchronizing(d):
        raise NotSynchronizing("automaton is not synchronizing")
    pre = letter_preimage_masks(d)
    seed = None
    for q in range(d.n):
        for a in range(d.k):
            if pre[a][q].bit_count() >= 2:
                seed = (q, a)
                break
        if seed:
            break
    if seed is None:
        raise NotSynchronizing("no letter merges two states")
    q, a = seed
    word = (a,)
    mask = pre[a][q]
    full = (1 << d.n) - 1
    while mask != full:
        v = shortest_extending_word(d, StateSet(d.n, mask), pre)
        if v is None:
            raise NotExtensible(tuple(bits(mask)))
        word = v + word
        for b in reversed(v):
            mask = preimage_mask(pre[b], mask)
    return _finish(d, word, "extension")


# -- orientation-based solving ------------------------------------------------

def properly_oriented(seq, n):
    """True iff seq is a cyclic rotation of a nondecreasing sequence."""
    descents = sum(1 for i in range(n) if seq[i] > seq[(i + 1) % n])
    return descents <= 1


def orientation_violations(d, order):
    """Letters whose image sequence under the given state order is not
    a rotation of a nondecreasing sequence."""
    n = d.n
    if sorted(order) != list(range(n)):
        raise core.InputError("order must be a permutation of the states")
    pos = [0] * n
    for i, q in enumerate(order):
        pos[q] = i
    bad = []
    for a in range(d.k):
        seq = [pos[d.delta[a][order[i]]] for i in range(n)]
        if not properly_oriented(seq, n):
            bad.append(a)
    return bad


def eppstein_orientable_word(d, order=None):
    """Backward search over oriented intervals of an orientable automaton.

    From each singleton, grow the preimage with single-letter steps; every
    set encountered must be an interval of the cyclic arrangement the order
    induces, of which there are (n-1)^2 non-singleton ones, so the result
    has length at most (n-1)^2.
    """
    n = d.n
    if order is None:
        order = tuple(range(n))
    order = tuple(order)
    bad = orientation_violations(d, order)
    if bad:
        raise DomainError(
            f"order is not orientable for this automaton; letter {d.letters[bad[0]]!r} breaks it")
    if n == 1:
        return _finish(d, (), "eppstein")
    if not is_synchronizing(d):
        raise NotSynchronizing("automaton is not synchronizing")
    pos = [0] * n
    for i, q in enumerate(order):
        pos[q] = i
    full = (1 << n) - 1

    def position_mask(mask):
        out = 0
        for q in bits(mask):
            out |= 1 << pos[q]
        return out

    def check_arc(mask):
        pm = position_mask(mask)
        if pm == full:
            return
        ends = sum(1 for i in range(n) if (pm >> i) & 1 and not (pm >> ((i + 1) % n)) & 1)
        if ends != 1:
            raise AssertionError(
                f"preimage {sorted(bits(mask))} is not an oriented interval")

    pre = letter_preimage_masks(d)
    best = None
    for q in range(n):
        found = _backward_lexmin(d, pre, 1 << q, lambda m: m == full, node_check=check_arc)
        if found is None:
            continue
        w, _ = found
        if best is None or (len(w), w) < (len(best), best):
            best = w
    if best is None:
        raise AssertionError("no singleton preimage reaches the full set")
    return _finish(d, best, "eppstein")


# -- all-simple-idempotent solving --------------------------------------------

def _simple_idempotent_letters(d):
    out = []
    for a, row in enumerate(d.delta):
        if core.deficiency(row) == 1 and core.is_idempotent(row):
            out.append(a)
    return out


def c7_height_word(d):
    """Reset an automaton whose letters are all simple idempotents.

    Collapses the state set in exactly n-1 single-letter steps by always
    moving a state of maximum distance from the reset target one step along
    a fixed shortest-path forest. The result's length n-1 is also the exact
    reset threshold for this class: a simple idempotent letter shrinks a
    set by at most one state.
    """
    n = d.n
    if n == 1:
        return _finish(d, (), "c7")
    if len(_simple_idempotent_letters(d)) != d.k:
        raise DomainError("every letter must be a simple idempotent")
    q0 = merge_probe_target(d)
    # heights: BFS over reversed edges from the target
    preds = [set() for _ in range(n)]
    for row in d.delta:
        for q, t in enumerate(row):
            preds[t].add(q)
    dist = [None] * n
    dist[q0] = 0
    queue = deque([q0])
    while queue:
        u = queue.popleft()
        for v in preds[u]:
            if dist[v] is None:
                dist[v] = dist[u] + 1
                queue.append(v)
    if any(x is None for x in dist):
        raise AssertionError("some state cannot reach the reset target")
    first = [None] * n
    for q in range(n):
        if q == q0:
            continue
        for a in range(d.k):
            if dist[d.delta[a][q]] == dist[q] - 1:
                first[q] = a
                break
    cur = set(range(n))
    word = []
    for _ in range(n - 1):
        q = max((x for x in cur if x != q0), key=lambda x: (dist[x], -x))
        a = first[q]
        word.append(a)
        cur = {d.delta[a][x] for x in cur}
    if cur != {q0}:
        raise AssertionError("height compression did not reach the target")
    return _finish(d, tuple(word), "c7")


def a10_binary_idempotent_word(d):
    """Reset a binary automaton one of whose letters is a simple idempotent.

    Case analysis on the cycles of the other letter b. A b-cycle avoiding
    the state dropped by the idempotent forces a zero state (greedy then
    stays within n(n-1)/2). Otherwise the unique b-cycle C has size m:
    m = 1 reduces to b^(n-1); m = n means b is a full cyclic permutation
    and the extension method applies (such automata are 1-extensible, so
    the word stays within 1 + n(n-2)); if the dropped state re-enters C the
    problem restricts to the subautomaton on C; and in the remaining case
    an explicit word b^(n-m) (v b^kk)^(m-1) resets the automaton. Every
    branch keeps the length at most (n-1)^2.
    """
    n = d.n
    if d.k != 2:
        raise DomainError("solver needs a binary automaton")
    idem = _simple_idempotent_letters(d)
    if not idem:
        raise DomainError("neither letter is a simple idempotent")
    ia = idem[0]
    ib = 1 - ia
    if not is_synchronizing(d):
        raise NotSynchronizing("automaton is not synchronizing")
    word = _a10_word(d, ia, ib)
    res = _finish(d, word, "a10")
    if res.length > (n - 1) ** 2:
        raise AssertionError(f"a10 word of length {res.length} exceeds (n-1)^2")
    return res


def _a10_word(d, ia, ib):
    n = d.n
    arow, brow = d.delta[ia], d.delta[ib]
    image = set(arow)
    e = next(q for q in range(n) if q not in image)
    cycles = core.cycles_of(brow)
    off_cycle = [c for c in cycles if e not in c]
    if off_cycle:
        # a cycle avoiding e is fixed by both letters, hence a single zero state
        for c in off_cycle:
            if len(c) != 1 or arow[c[0]] != c[0]:
                raise AssertionError("b-cycle avoiding the dropped state is not a zero")
        return greedy_compression_word(d).word
    (cycle,) = cycles
    m = len(cycle)
    if m == 1:
        return (ib,) * (n - 1)
    if m == n:
        # b is a cyclic permutation of the whole state set; grow a singleton
        # preimage instead (each extension step is at most n letters here)
        return reset_word_via_extension(d).word
    cycle_set = set(cycle)
    dstate = arow[e]
    if dstate in cycle_set:
        sub, states = core.subautomaton(d, StateSet.of(n, sorted(cycle_set)))
        inner = _a10_word(sub, ia, ib)
        return (ib,) * (n - m) + inner
    # walk d along b until the cycle is reached
    kk = 0
    x = dstate
    while x not in cycle_set:
        x = brow[x]
        kk += 1
        if kk > n:
            raise AssertionError("walk along b failed to reach the cycle")
    r = x
    ell = 0
    x = e
    while x != r:
        x = brow[x]
        ell += 1
    if math.gcd(m, kk - ell) != 1:
        raise AssertionError(
            f"cycle length {m} and step {kk - ell} are not coprime on a synchronizing input")
    v = (ia,) if ell == 0 else (ib,) * (m - ell) + (ia,)
    return (ib,) * (n - m) + (v + (ib,) * kk) * (m - 1)


# -- number theory helpers -----------------------------------------------------

def frobenius_largest_gap(n, k):
    """The largest integer not expressible as a non-negative combination of
    two coprime positive integers: nk - n - k."""
    if n < 1 or k < 1:
        raise DomainError("arguments must be positive")
    if math.gcd(n, k) != 1:
        raise DomainError(f"{n} and {k} are not coprime")
    return n * k - n - k


def greatest_prime_below(n):
    """The largest prime strictly below n (trial division; desk scale)."""
    if n < 3:
        raise DomainError("needs n >= 3")
    for p in range(n - 1, 1, -1):
        if all(p % q for q in range(2, int(math.isqrt(p)) + 1)):
            return p
    raise AssertionError("unreachable")
