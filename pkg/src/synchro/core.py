"""Complete deterministic automata and their set dynamics.

States are dense indices 0..n-1; letters are indexed by their position in
the ordered letter-name list. State subsets are fixed-width bit vectors
(hard cap 64 states). Everything here is immutable after construction and
every operation is a pure function of its inputs, so values can be shared
freely between concurrent workers.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass


class AutomatonError(Exception):
    """Base class for toolkit errors."""


class InputError(AutomatonError):
    """Malformed input: bad JSON, bad state or letter index, bad names."""


class PreconditionError(AutomatonError):
    """A checked structural precondition failed."""


class DomainError(AutomatonError):
    """Input lies outside an operation's domain."""


class NotSynchronizing(DomainError):
    """The automaton admits no reset word."""


class CapExceeded(AutomatonError):
    """A configured resource cap would be exceeded."""


HARD_STATE_CAP = 64      # bit-vector subset representation
SUBSET_BFS_CAP = 20      # default cap for power-set searches


def bits(mask):
    """Iterate the set bit positions of a mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Dfa:
    """A complete deterministic automaton.

    delta is letter-major: delta[a][q] is the successor of state q under
    letter index a. Letter names are unique non-empty strings.
    """

    n: int
    letters: tuple
    delta: tuple
    name: str = ""

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "letters", tuple(self.letters))
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        if len(self.letters) < 1:
            raise InputError("at least one letter is required")
        if len(set(self.letters)) != len(self.letters):
            raise InputError("letter names must be distinct")
        for name in self.letters:
            if not isinstance(name, str) or not name:
                raise InputError(f"letter names must be non-empty strings, got {name!r}")
        if len(self.delta) != len(self.letters):
            raise InputError(
                f"delta has {len(self.delta)} rows for {len(self.letters)} letters")
        for a, row in enumerate(self.delta):
            if len(row) != self.n:
                raise InputError(
                    f"delta row for letter {self.letters[a]!r} has {len(row)} entries, expected {self.n}")
            for q, t in enumerate(row):
                if not isinstance(t, int) or not 0 <= t < self.n:
                    raise InputError(
                        f"delta[{self.letters[a]!r}][{q}] = {t!r} is not a state in [0, {self.n})")

    @property
    def k(self):
        return len(self.letters)

    def step(self, q, a):
        return self.delta[a][q]

    def letter_index(self, name):
        try:
            return self.letters.index(name)
        except ValueError:
            raise InputError(f"unknown letter {name!r}") from None

    def full_set(self):
        return StateSet.full(self.n)


@dataclass(frozen=True)
class StateSet:
    """A subset of the states of an n-state automaton, as a bit vector."""

    n: int
    mask: int

    def __post_init__(self):
        if self.n > HARD_STATE_CAP:
            raise CapExceeded(
                f"state count {self.n} exceeds the hard subset cap {HARD_STATE_CAP}")
        if not 0 <= self.mask < (1 << self.n):
            raise InputError(f"mask {self.mask:#x} out of range for n={self.n}")

    @classmethod
    def of(cls, n, states):
        mask = 0
        for q in states:
            if not 0 <= q < n:
                raise InputError(f"state {q} not in [0, {n})")
            mask |= 1 << q
        return cls(n, mask)

    @classmethod
    def full(cls, n):
        if n > HARD_STATE_CAP:
            raise CapExceeded(
                f"state count {n} exceeds the hard subset cap {HARD_STATE_CAP}")
        return cls(n, (1 << n) - 1)

    @classmethod
    def singleton(cls, n, q):
        return cls.of(n, [q])

    def __contains__(self, q):
        return 0 <= q < self.n and (self.mask >> q) & 1

    def __iter__(self):
        return bits(self.mask)

    def __len__(self):
        return self.mask.bit_count()

    def is_empty(self):
        return self.mask == 0

    def is_full(self):
        return self.mask == (1 << self.n) - 1

    def states(self):
        return tuple(bits(self.mask))


# -- words ------------------------------------------------------------------
#
# A word is a tuple of letter indices; the empty tuple is the identity.

def check_word(d, w):
    for a in w:
        if not isinstance(a, int) or not 0 <= a < d.k:
            raise InputError(f"letter index {a!r} not in [0, {d.k})")
    return tuple(w)


def word_from_names(d, names):
    """Build a word from an iterable of letter names (a string iterates chars)."""
    return tuple(d.letter_index(x) for x in names)


def word_names(d, w):
    return [d.letters[a] for a in w]


def apply_word(d, q, w):
    """Run the automaton from state q along word w; the empty word returns q."""
    if not 0 <= q < d.n:
        raise InputError(f"state {q} not in [0, {d.n})")
    for a in check_word(d, w):
        q = d.delta[a][q]
    return q


def image_mask(row, mask):
    out = 0
    for q in bits(mask):
        out |= 1 << row[q]
    return out


def letter_preimage_masks(d):
    """Per letter, per target state: the mask of its single-letter preimages."""
    pre = [[0] * d.n for _ in range(d.k)]
    for a, row in enumerate(d.delta):
        for q, t in enumerate(row):
            pre[a][t] |= 1 << q
    return [tuple(row) for row in pre]


def preimage_mask(pre_row, mask):
    out = 0
    for q in bits(mask):
        out |= pre_row[q]
    return out


def image(d, P, w):
    """The set P.w of states reachable from P along w. P must be non-empty."""
    if P.n != d.n:
        raise InputError("state set does not match the automaton")
    if P.is_empty():
        raise InputError("image of the empty set is not defined")
    mask = P.mask
    for a in check_word(d, w):
        mask = image_mask(d.delta[a], mask)
    return StateSet(d.n, mask)


def preimage(d, P, w):
    """The set P.w^-1 of states that w carries into P."""
    if P.n != d.n:
        raise InputError("state set does not match the automaton")
    mask = P.mask
    pre = letter_preimage_masks(d)
    for a in reversed(check_word(d, w)):
        mask = preimage_mask(pre[a], mask)
    return StateSet(d.n, mask)


# -- transformations --------------------------------------------------------
#
# A transformation is a tuple t of length n with t[q] the image of q.

def letter_transformation(d, a):
    return d.delta[a]


def word_transformation(d, w):
    t = tuple(range(d.n))
    for a in check_word(d, w):
        row = d.delta[a]
        t = tuple(row[q] for q in t)
    return t


def compose(t, u):
    """Apply t, then u."""
    return tuple(u[q] for q in t)


def transformation_image(t):
    return frozenset(t)


def deficiency(t):
    return len(t) - len(set(t))


def is_idempotent(t):
    return all(t[x] == x for x in set(t))


def is_permutation(t):
    return len(set(t)) == len(t)


def cycles_of(t):
    """The cycles of a self-map, each as a tuple starting at its least state."""
    n = len(t)
    # a state is cyclic iff it recurs under iteration
    on_cycle = [False] * n
    seen = [0] * n  # 0 unknown, 1 in progress, 2 done
    for q0 in range(n):
        if seen[q0]:
            continue
        path = []
        q = q0
        while seen[q] == 0:
            seen[q] = 1
            path.append(q)
            q = t[q]
        if seen[q] == 1:
            i = path.index(q)
            for x in path[i:]:
                on_cycle[x] = True
        for x in path:
            seen[x] = 2
    out = []
    used = set()
    for q in range(n):
        if on_cycle[q] and q not in used:
            cyc = [q]
            used.add(q)
            x = t[q]
            while x != q:
                cyc.append(x)
                used.add(x)
                x = t[x]
            out.append(tuple(cyc))
    return out


# -- graphs -----------------------------------------------------------------

@dataclass(frozen=True)
class Multigraph:
    """Directed multigraph with edge multiplicities."""

    n: int
    mult: tuple  # tuple of ((u, v), count), sorted

    def edge_count(self):
        return sum(c for _, c in self.mult)

    def in_degree(self, v):
        return sum(c for (u, w), c in self.mult if w == v)

    def out_degree(self, u):
        return sum(c for (x, v), c in self.mult if x == u)

    def successors(self, u):
        return sorted({v for (x, v), _ in self.mult if x == u})


def underlying_graph(d):
    """The automaton's graph with labels dropped; parallel edges are counted."""
    counts = {}
    for row in d.delta:
        for q, t in enumerate(row):
            counts[(q, t)] = counts.get((q, t), 0) + 1
    return Multigraph(d.n, tuple(sorted(counts.items())))


def _reach(n, succs, start):
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in succs[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def is_strongly_connected(d):
    """True iff every ordered pair of states is joined by a directed path."""
    succs = [sorted({row[q] for row in d.delta}) for q in range(d.n)]
    preds = [[] for _ in range(d.n)]
    for u in range(d.n):
        for v in succs[u]:
            preds[v].append(u)
    return len(_reach(d.n, succs, 0)) == d.n and len(_reach(d.n, preds, 0)) == d.n


def digraph_strongly_connected(n, succs):
    if n == 0:
        return True
    preds = [[] for _ in range(n)]
    for u in range(n):
        for v in succs[u]:
            preds[v].append(u)
    return len(_reach(n, succs, 0)) == n and len(_reach(n, preds, 0)) == n


def strongly_connected_components(n, succs):
    """Component id per vertex (Kosaraju, iterative). Ids are arbitrary but stable."""
    order = []
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        stack = [(s, iter(succs[s]))]
        seen[s] = True
        while stack:
            u, it = stack[-1]
            advanced = False
            for v in it:
                if not seen[v]:
                    seen[v] = True
                    stack.append((v, iter(succs[v])))
                    advanced = True
                    break
            if not advanced:
                order.append(u)
                stack.pop()
    preds = [[] for _ in range(n)]
    for u in range(n):
        for v in succs[u]:
            preds[v].append(u)
    comp = [-1] * n
    cid = 0
    for s in reversed(order):
        if comp[s] != -1:
            continue
        comp[s] = cid
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in preds[u]:
                if comp[v] == -1:
                    comp[v] = cid
                    queue.append(v)
        cid += 1
    return comp


# -- congruences, quotients, subautomata ------------------------------------

def normalize_partition(d, classes):
    classes = tuple(classes)
    if len(classes) != d.n:
        raise InputError(f"partition must assign a class to each of {d.n} states")
    relabel = {}
    out = []
    for c in classes:
        if c not in relabel:
            relabel[c] = len(relabel)
        out.append(relabel[c])
    return tuple(out)


def congruence_violation(d, classes):
    """A triple (p, q, a) witnessing that the partition is not a congruence, or None."""
    classes = normalize_partition(d, classes)
    reps = {}
    for q, c in enumerate(classes):
        reps.setdefault(c, q)
    for p in range(d.n):
        q = reps[classes[p]]
        if q == p:
            continue
        for a in range(d.k):
            if classes[d.delta[a][p]] != classes[d.delta[a][q]]:
                return (p, q, a)
    return None


def is_congruence(d, classes):
    return congruence_violation(d, classes) is None


def quotient(d, classes):
    """The quotient automaton on the classes of a congruence.

    Class indices are renumbered by first occurrence; state q maps to class
    normalize_partition(d, classes)[q].
    """
    classes = normalize_partition(d, classes)
    bad = congruence_violation(d, classes)
    if bad is not None:
        p, q, a = bad
        raise PreconditionError(
            f"partition is not a congruence: states {p} and {q} split under letter {d.letters[a]!r}")
    m = max(classes) + 1
    reps = [0] * m
    for q in range(d.n - 1, -1, -1):
        reps[classes[q]] = q
    delta = tuple(tuple(classes[d.delta[a][reps[c]]] for c in range(m)) for a in range(d.k))
    return Dfa(m, d.letters, delta, name=d.name and d.name + "/quotient")


def subautomaton(d, S):
    """Restrict the automaton to a closed state set.

    Returns (automaton, index_map) where index_map[i] is the original state
    carried by new state i.
    """
    if S.n != d.n:
        raise InputError("state set does not match the automaton")
    if S.is_empty():
        raise InputError("subautomaton needs a non-empty state set")
    states = S.states()
    pos = {q: i for i, q in enumerate(states)}
    for q in states:
        for a in range(d.k):
            if d.delta[a][q] not in pos:
                raise PreconditionError(
                    f"set is not closed: state {q} escapes under letter {d.letters[a]!r}")
    delta = tuple(tuple(pos[d.delta[a][q]] for q in states) for a in range(d.k))
    return Dfa(len(states), d.letters, delta, name=d.name and d.name + "/sub"), states


# -- serialization -----------------------------------------------------------

def dfa_to_json(d):
    obj = {}
    if d.name:
        obj["name"] = d.name
    obj["n"] = d.n
    obj["letters"] = list(d.letters)
    obj["delta"] = {name: list(d.delta[a]) for a, name in enumerate(d.letters)}
    return obj


def dfa_from_json(obj):
    """Parse the canonical JSON automaton object; errors carry a path and reason."""
    if not isinstance(obj, dict):
        raise InputError(f"$: expected an object, got {type(obj).__name__}")
    name = obj.get("name", "")
    if not isinstance(name, str):
        raise InputError(f"name: expected a string, got {type(name).__name__}")
    n = obj.get("n")
    if not isinstance(n, int) or n < 1:
        raise InputError(f"n: expected an integer >= 1, got {n!r}")
    letters = obj.get("letters")
    if not isinstance(letters, list) or not letters:
        raise InputError("letters: expected a non-empty list of strings")
    for i, x in enumerate(letters):
        if not isinstance(x, str) or not x:
            raise InputError(f"letters[{i}]: expected a non-empty string, got {x!r}")
        if x in letters[:i]:
            raise InputError(f"letters[{i}]: duplicate name {x!r}")
    rows = obj.get("delta")
    if not isinstance(rows, dict):
        raise InputError("delta: expected an object keyed by letter")
    for key in rows:
        if key not in letters:
            raise InputError(f"delta.{key}: key is not a declared letter")
    delta = []
    for x in letters:
        if x not in rows:
            raise InputError(f"delta.{x}: missing row")
        row = rows[x]
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"delta.{x}: expected a list of {n} entries")
        for q, t in enumerate(row):
            if not isinstance(t, int) or isinstance(t, bool) or not 0 <= t < n:
                raise InputError(f"delta.{x}[{q}]: expected a state in [0, {n}), got {t!r}")
        delta.append(tuple(row))
    extra = set(obj) - {"name", "n", "letters", "delta"}
    if extra:
        raise InputError(f"$: unknown keys {sorted(extra)}")
    return Dfa(n, tuple(letters), tuple(delta), name=name)


def dfa_dumps(d):
    return json.dumps(dfa_to_json(d), indent=2) + "\n"


def dfa_loads(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"$: invalid JSON ({exc})") from None
    return dfa_from_json(obj)


def load_dfa(path):
    with open(path) as fh:
        return dfa_loads(fh.read())


def save_dfa(d, path):
    with open(path, "w") as fh:
        fh.write(dfa_dumps(d))


def dfa_to_dot(d):
    """DOT text with one edge per (source, target), labels comma-joined."""
    by_pair = {}
    for a, row in enumerate(d.delta):
        for q, t in enumerate(row):
            by_pair.setdefault((q, t), []).append(d.letters[a])
    lines = ["digraph \"%s\" {" % (d.name or "dfa"), "  rankdir=LR;",
             "  node [shape=circle];"]
    for q in range(d.n):
        lines.append(f"  {q};")
    for (q, t), names in sorted(by_pair.items()):
        label = ",".join(names)
        lines.append(f'  {q} -> {t} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a class membership check.

    status is one of "in", "out", "unknown", "not-checked"; "unknown" is
    reserved for checks abandoned at a resource cap and is never a synonym
    for "out". An "in" verdict for an existential class carries a
    machine-checkable witness.
    """

    status: str
    witness: object = None
    note: str = ""

    def to_json(self):
        out = {"status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        return out
