"""Transition-monoid enumeration and the monoid-side class predicates.

Element identity is the transformation array itself; witness words are kept
for diagnostics only. Ideal computations follow the literal principal-ideal
implication over the closure, with interning; no structure theory.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from synchro.core import CapExceeded, Verdict, compose

MONOID_CAP = 200000
DS_CAP = 2000


@dataclass(frozen=True)
class TransitionMonoid:
    """All word-induced transformations, closed under composition.

    elements[0] is the identity; words[i] is a shortest witness word for
    elements[i], lexicographically least at its depth; generators[a] is the
    element index induced by letter a.
    """

    n: int
    elements: tuple
    words: tuple
    generators: tuple

    def __len__(self):
        return len(self.elements)

    def index(self, t):
        return self.elements.index(t)

    def idempotents(self):
        return [i for i, t in enumerate(self.elements) if compose(t, t) == t]


def transition_monoid(d, cap=MONOID_CAP):
    """Breadth-first closure of the letters under composition."""
    ident = tuple(range(d.n))
    index = {ident: 0}
    elements = [ident]
    words = [()]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        t, w = elements[i], words[i]
        for a in range(d.k):
            t2 = compose(t, d.delta[a])
            if t2 in index:
                continue
            index[t2] = len(elements)
            elements.append(t2)
            words.append(w + (a,))
            if len(elements) > cap:
                raise CapExceeded(
                    f"transition monoid passed {cap} elements ({len(elements)} so far)")
            queue.append(index[t2])
    generators = tuple(index[d.delta[a]] for a in range(d.k))
    return TransitionMonoid(d.n, tuple(elements), tuple(words), generators)


def _power_cycle_length(t):
    seen = {t: 0}
    cur = t
    i = 0
    while True:
        cur = compose(cur, t)
        i += 1
        if cur in seen:
            return i - seen[cur]
        seen[cur] = i


def is_aperiodic(d, cap=MONOID_CAP):
    """Every element's power sequence stabilizes (no nontrivial subgroup)."""
    m = transition_monoid(d, cap)
    for i, t in enumerate(m.elements):
        if _power_cycle_length(t) != 1:
            return Verdict("out", witness=list(m.words[i]))
    return Verdict("in", witness=len(m))


def is_involution_free(d, cap=MONOID_CAP):
    """No element squares to the identity on a state it moves."""
    m = transition_monoid(d, cap)
    for i, t in enumerate(m.elements):
        tt = compose(t, t)
        for q in range(d.n):
            if tt[q] == q and t[q] != q:
                return Verdict("out", witness={"word": list(m.words[i]), "state": q})
    return Verdict("in", witness=len(m))


def _ideal_class_ids(elements, generators):
    """Class id per element under equality of principal two-sided ideals.

    The ideal of x is the reachability set of x in the graph with edges
    x -> g.x and x -> x.g over the generators (the identity is reachable by
    the empty product), so two elements have equal ideals exactly when they
    sit in one strongly connected component of that graph.
    """
    from synchro.core import strongly_connected_components

    index = {t: i for i, t in enumerate(elements)}
    gens = [elements[g] for g in generators]
    succs = []
    for x in elements:
        out = set()
        for g in gens:
            out.add(index[compose(g, x)])
            out.add(index[compose(x, g)])
        succs.append(sorted(out))
    return strongly_connected_components(len(elements), succs), index


def _ds_core(elements, generators):
    """The principal-ideal implication over a closed element list."""
    ideal_of, index = _ideal_class_ids(elements, generators)
    by_ideal = {}
    for i in range(len(elements)):
        by_ideal.setdefault(ideal_of[i], []).append(i)
    for ideal_id, members in by_ideal.items():
        if not any(ideal_of[index[compose(elements[x], elements[x])]] == ideal_id
                   for x in members):
            continue
        for y in members:
            for z in members:
                yz = index[compose(elements[y], elements[z])]
                if ideal_of[yz] != ideal_id:
                    return (y, z)
    return None


def is_in_ds(m, cap=DS_CAP):
    """Products inside a shared regular ideal class stay in that class."""
    if len(m) > cap:
        raise CapExceeded(f"monoid of size {len(m)} exceeds the ideal-check cap {cap}")
    bad = _ds_core(m.elements, m.generators)
    if bad is None:
        return Verdict("in", witness=len(m))
    y, z = bad
    return Verdict("out", witness={"y": list(m.words[y]), "z": list(m.words[z])})


def is_in_eds(m, cap=DS_CAP):
    """The idempotent-generated submonoid satisfies the ideal implication."""
    if len(m) > cap:
        raise CapExceeded(f"monoid of size {len(m)} exceeds the ideal-check cap {cap}")
    idem = [m.elements[i] for i in m.idempotents()]
    ident = tuple(range(m.n))
    sub = {ident: 0}
    elements = [ident]
    queue = deque([ident])
    while queue:
        t = queue.popleft()
        for e in idem:
            t2 = compose(t, e)
            if t2 not in sub:
                sub[t2] = len(elements)
                elements.append(t2)
                queue.append(t2)
    generators = tuple(sub[e] for e in idem)
    bad = _ds_core(tuple(elements), generators)
    if bad is None:
        return Verdict("in", witness=len(elements))
    return Verdict("out", witness={"submonoid_size": len(elements)})


def monoid_summary(d, cap=MONOID_CAP, ds_cap=DS_CAP):
    """Size, idempotent count, and the four monoid verdicts for one automaton."""
    m = transition_monoid(d, cap)
    out = {"size": len(m), "idempotents": len(m.idempotents())}
    out["aperiodic"] = is_aperiodic(d, cap).to_json()
    out["involution_free"] = is_involution_free(d, cap).to_json()
    try:
        out["ds"] = is_in_ds(m, ds_cap).to_json()
        out["eds"] = is_in_eds(m, ds_cap).to_json()
    except CapExceeded as exc:
        out["ds"] = Verdict("unknown", note=f"cap: {exc}").to_json()
        out["eds"] = Verdict("unknown", note=f"cap: {exc}").to_json()
    return out
