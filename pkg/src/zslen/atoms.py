"""Minimal zero-sum sequences: atom enumeration and Davenport constants.

The enumerator walks the exponent lattice over a weighted alphabet
depth-first and keeps only Dickson-minimal nonzero zero-sum vectors.  Two
prunes make this tractable: a subtree is discarded as soon as the partial
vector dominates an already-found atom, and as soon as the running sum can
no longer return to zero within the per-letter multiplicity caps.  The cap
v(letter) <= ord(class(letter)) is safe: any vector exceeding it is
divisible by the proper zero-sum power letter^ord.

The same engine serves both B(G0) (letters are group elements) and the
concrete Krull instances of the transfer module (letters are primes with a
class map).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import InvalidArgumentError, ResourceLimitError
from .group import FiniteAbelianGroup, GroupElement, elements, tables
from .sequence import Sequence, canonical_subset, divides, is_zero_sum

DEFAULT_NODE_LIMIT = 10**8


def minimal_nonzero_vectors(
    group: FiniteAbelianGroup,
    letter_classes: tuple[int, ...],
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> tuple[list[tuple[int, ...]], int]:
    """Dickson-minimal nonzero vectors v with sum_i v[i]*class_i = 0.

    letter_classes gives the element index (into elements(group)) of each
    alphabet letter.  Returns the minimal vectors sorted by (total, vector)
    together with the number of lattice nodes visited.
    """
    tab = tables(group)
    add, neg_t, order_t = tab.add, tab.neg, tab.order
    m = len(letter_classes)
    caps = [order_t[c] for c in letter_classes]

    # reach[i] = sums achievable by letters i.. within their caps
    reach: list[set[int]] = [set() for _ in range(m + 1)]
    reach[m] = {0}
    for i in range(m - 1, -1, -1):
        w = letter_classes[i]
        mults = [0]
        x = 0
        for _ in range(caps[i]):
            x = add[x][w]
            mults.append(x)
        reach[i] = {add[s][mu] for s in reach[i + 1] for mu in set(mults)}

    found: list[tuple[int, ...]] = []
    vec = [0] * m
    nodes = 0

    def dominated() -> bool:
        return any(all(u <= v for u, v in zip(f, vec)) for f in found)

    def rec(i: int, s: int):
        nonlocal nodes
        if i == m:
            return
        w = letter_classes[i]
        if neg_t[s] in reach[i + 1]:
            rec(i + 1, s)
        x = s
        for k in range(1, caps[i] + 1):
            nodes += 1
            if nodes > node_limit:
                raise ResourceLimitError("lattice node", node_limit)
            x = add[x][w]
            vec[i] = k
            if x == 0:
                if not dominated():
                    found.append(tuple(vec))
                break  # larger k and any extension dominate this atom
            if dominated():
                break  # larger k only grows the vector further
            if neg_t[x] in reach[i + 1]:
                rec(i + 1, x)
        vec[i] = 0

    if 0 in reach[0]:
        rec(0, 0)
    found.sort(key=lambda v: (sum(v), v))
    return found, nodes


@dataclass(frozen=True)
class AtomSet:
    """The finite set A(G0) of minimal zero-sum sequences over G0."""

    group: FiniteAbelianGroup
    subset: tuple[GroupElement, ...]
    atoms: tuple[Sequence, ...]
    nodes_visited: int = field(default=0, compare=False)

    def __len__(self):
        return len(self.atoms)

    def vectors(self) -> tuple[tuple[int, ...], ...]:
        """Dense exponent vectors of the atoms over the subset order."""
        return tuple(a.dense(self.subset) for a in self.atoms)

    def max_length(self) -> int:
        return max((a.length for a in self.atoms), default=0)


def enumerate_atoms(
    group: FiniteAbelianGroup,
    subset=None,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> AtomSet:
    """Enumerate A(G0) for G0 a subset of the group (default: all of it).

    Results are cached per (group, subset, node limit); atom sets are
    immutable, so sharing them is safe.
    """
    alphabet = canonical_subset(
        group, elements(group) if subset is None else subset
    )
    if not alphabet:
        raise InvalidArgumentError("subset must be nonempty")
    return _enumerate_atoms_cached(group, alphabet, node_limit)


@lru_cache(maxsize=None)
def _enumerate_atoms_cached(
    group: FiniteAbelianGroup,
    alphabet: tuple[GroupElement, ...],
    node_limit: int,
) -> AtomSet:
    tab = tables(group)
    classes = tuple(tab.index[g] for g in alphabet)
    vectors, nodes = minimal_nonzero_vectors(group, classes, node_limit)
    atoms = tuple(
        Sequence.make(group, {alphabet[i]: m for i, m in enumerate(v) if m})
        for v in vectors
    )
    return AtomSet(group, alphabet, atoms, nodes)


def is_atom(s: Sequence) -> bool:
    """Exact atomicity test by scanning the exponent lattice below s.

    Cost is the product of (multiplicity+1) over the support, so keep this
    to sequences of modest length; enumeration should use enumerate_atoms.
    """
    if s.length == 0 or not is_zero_sum(s):
        return False
    items = s.items
    k = len(items)
    sub = [0] * k

    def rec(i: int) -> bool:
        # True iff a proper nonempty zero-sum divisor exists below items[i:]
        if i == k:
            total = sum(sub)
            if total == 0 or total == s.length:
                return False
            t = Sequence.make(s.group, {items[j][0]: sub[j] for j in range(k) if sub[j]})
            return is_zero_sum(t)
        for c in range(items[i][1] + 1):
            sub[i] = c
            if rec(i + 1):
                return True
        sub[i] = 0
        return False

    return not rec(0)


def davenport(
    group: FiniteAbelianGroup,
    atoms: AtomSet | None = None,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> tuple[int, Sequence]:
    """D(G) = max atom length, with a witness atom of that length."""
    if atoms is None:
        atoms = enumerate_atoms(group, node_limit=node_limit)
    # every nonempty G0 carries at least the atom g^ord(g)
    best = max(atoms.atoms, key=lambda a: a.length)
    return best.length, best


def davenport_star(group: FiniteAbelianGroup) -> int:
    """D*(G) = 1 + sum over invariant factors of (n_i - 1); trivial group -> 1."""
    return 1 + sum(n - 1 for n in group.invariant_factors)


def davenport_star_witness(group: FiniteAbelianGroup) -> Sequence:
    """The classical extremal atom (e1+...+er) * prod e_i^(n_i - 1)."""
    if group.rank == 0:
        raise InvalidArgumentError("trivial group has no nonzero atoms")
    basis = [
        group.element(tuple(1 if j == i else 0 for j in range(group.rank)))
        for i in range(group.rank)
    ]
    exps: dict[GroupElement, int] = {}
    for e, n in zip(basis, group.invariant_factors):
        exps[e] = exps.get(e, 0) + (n - 1)
    s = group.element(tuple(1 for _ in range(group.rank)))
    exps[s] = exps.get(s, 0) + 1
    return Sequence.make(group, exps)


def antichain_violations(atoms: AtomSet) -> list[tuple[Sequence, Sequence]]:
    """Pairs (u, v) of distinct atoms with u | v; empty for a valid atom set."""
    out = []
    for i, u in enumerate(atoms.atoms):
        for v in atoms.atoms[i + 1 :]:
            if divides(u, v):
                out.append((u, v))
            elif divides(v, u):
                out.append((v, u))
    return out
