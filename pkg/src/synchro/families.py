"""Generators for the named automaton families, each with its expected
reset threshold in closed form.

Families defined on residues keep their 0-based numbering; families defined
on 1-based chains are shifted down by one, and each instance records the
shift in its notes so witnesses can be read against the original numbering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from synchro.core import Dfa, DomainError


@dataclass(frozen=True)
class FamilyInstance:
    dfa: Dfa
    family: str
    params: dict
    expected_rt: int
    notes: dict = field(default_factory=dict)

    def meta_json(self):
        out = {"family": self.family, "params": dict(self.params),
               "expected_rt": self.expected_rt}
        if self.notes:
            out["notes"] = {key: list(v) if isinstance(v, tuple) else v
                            for key, v in self.notes.items()}
        return out


def gen_cerny(n):
    """The two-letter series on residues mod n with threshold (n-1)^2.

    Letter a bumps 0 to 1 and fixes everything else; letter b adds 1 mod n.
    """
    if n < 2:
        raise DomainError("needs n >= 2")
    a = tuple(1 if q == 0 else q for q in range(n))
    b = tuple((q + 1) % n for q in range(n))
    dfa = Dfa(n, ("a", "b"), (a, b), name=f"cerny-{n}")
    witness = ((0,) + (1,) * (n - 1)) * (n - 2) + (0,)
    return FamilyInstance(dfa, "cerny", {"n": n}, (n - 1) ** 2,
                          {"states": "residues mod n", "witness_word": witness})


def gen_dnk(n, k):
    """Two-letter one-cluster witnesses on residues mod n.

    Letter b adds 1 mod n; letter a does the same except k-1 goes to 0 and
    n-1 goes to n-k. Needs gcd(n, k) = 1. The a-cycle has length k only
    when k > n/2, so the one-cluster reading is flagged inapplicable below
    that.

    expected_rt records the closed-form target k(n-2)+2 along with the word
    (a b^(k-1))^(n-2) b a said to attain it. Exhaustive search confirms both
    only for k = n-1; for smaller k each (a b^(k-1)) block fixes state k-1
    and the true threshold is k(n-3)+n+1, strictly above the recorded value.
    """
    if not 1 <= k < n:
        raise DomainError("needs 1 <= k < n")
    if math.gcd(n, k) != 1:
        raise DomainError(f"{n} and {k} are not coprime")
    a = []
    for m in range(n):
        if m == k - 1:
            a.append(0)
        elif m == n - 1:
            a.append(n - k)
        else:
            a.append(m + 1)
    b = tuple((m + 1) % n for m in range(n))
    dfa = Dfa(n, ("a", "b"), (tuple(a), b), name=f"dnk-{n}-{k}")
    witness = ((0,) + (1,) * (k - 1)) * (n - 2) + (1, 0)
    notes = {"states": "residues mod n", "witness_word": witness,
             "one_cluster_applicable": k > n / 2}
    return FamilyInstance(dfa, "dnk", {"n": n, "k": k}, k * (n - 2) + 2, notes)


def gen_rystsov(n):
    """Zero automata with n-1 letters and threshold n(n-1)/2.

    Letter a1 sends 1 to 0; letter ai (i >= 2) swaps i-1 and i. State 0 is
    fixed by every letter.
    """
    if n < 2:
        raise DomainError("needs n >= 2")
    rows = [tuple(0 if q == 1 else q for q in range(n))]
    for i in range(2, n):
        rows.append(tuple(i if q == i - 1 else i - 1 if q == i else q
                          for q in range(n)))
    letters = tuple(f"a{i}" for i in range(1, n))
    dfa = Dfa(n, letters, tuple(rows), name=f"rystsov-{n}")
    return FamilyInstance(dfa, "rystsov", {"n": n}, n * (n - 1) // 2,
                          {"zero_state": 0})


def gen_v(n):
    """Coinciding-cycle witnesses with n letters and threshold n(n-1)/2.

    Letter ai (i <= n-1) swaps i-1 and i; letter an sends 1 to 0.
    """
    if n < 3:
        raise DomainError("needs n >= 3")
    rows = []
    for i in range(1, n):
        rows.append(tuple(i if q == i - 1 else i - 1 if q == i else q
                          for q in range(n)))
    rows.append(tuple(0 if q == 1 else q for q in range(n)))
    letters = tuple(f"a{i}" for i in range(1, n + 1))
    dfa = Dfa(n, letters, tuple(rows), name=f"v-{n}")
    return FamilyInstance(dfa, "v", {"n": n}, n * (n - 1) // 2, {})


def gen_chain(n):
    """The single-letter descending chain with threshold n-1."""
    if n < 1:
        raise DomainError("needs n >= 1")
    row = tuple(max(q - 1, 0) for q in range(n))
    dfa = Dfa(n, ("a",), (row,), name=f"chain-{n}")
    return FamilyInstance(dfa, "chain", {"n": n}, n - 1, {})


def gen_two_idempotent(n):
    """Binary automata with both letters idempotent and threshold n-1.

    On states 1..n (stored 0-based): a bumps even states below n, b bumps
    odd states below n, and n is fixed by both.
    """
    if n < 2:
        raise DomainError("needs n >= 2")
    a = []
    b = []
    for q in range(n):
        i = q + 1
        a.append(q if (i % 2 == 1 or i == n) else q + 1)
        b.append(q if (i % 2 == 0 or i == n) else q + 1)
    dfa = Dfa(n, ("a", "b"), (tuple(a), tuple(b)), name=f"two-idem-{n}")
    return FamilyInstance(dfa, "two_idempotent", {"n": n}, n - 1,
                          {"states": "1..n shifted to 0-based"})


def gen_elevator(n):
    """n-1 simple idempotent letters, letter ai moving state i one step up.

    On states 1..n (stored 0-based); threshold n-1.
    """
    if n < 2:
        raise DomainError("needs n >= 2")
    rows = []
    for i in range(n - 1):
        rows.append(tuple(i + 1 if q == i else q for q in range(n)))
    letters = tuple(f"a{i}" for i in range(1, n))
    dfa = Dfa(n, letters, tuple(rows), name=f"elevator-{n}")
    return FamilyInstance(dfa, "elevator", {"n": n}, n - 1,
                          {"states": "1..n shifted to 0-based"})


GENERATORS = {
    "cerny": (gen_cerny, ("n",)),
    "dnk": (gen_dnk, ("n", "k")),
    "rystsov": (gen_rystsov, ("n",)),
    "v": (gen_v, ("n",)),
    "chain": (gen_chain, ("n",)),
    "two-idempotent": (gen_two_idempotent, ("n",)),
    "elevator": (gen_elevator, ("n",)),
}


def generate(family, **params):
    if family not in GENERATORS:
        raise DomainError(f"unknown family {family!r}; choose from {sorted(GENERATORS)}")
    fn, names = GENERATORS[family]
    missing = [x for x in names if x not in params]
    if missing:
        raise DomainError(f"family {family!r} needs parameters {names}")
    extra = set(params) - set(names)
    if extra:
        raise DomainError(f"family {family!r} does not take {sorted(extra)}")
    return fn(**params)
