"""Concrete reduced Krull monoids H inside a free abelian monoid of primes,
the class-replacement map beta: H -> B(G0), and randomized checks that beta
preserves sets of lengths.

The direct engine never consults beta: atoms of H are the Dickson-minimal
nonzero solutions of the class-sum-zero condition over the prime-exponent
lattice (the same enumerator as for B(G0), with the primes as alphabet),
and factorization lengths are computed by the same memoized recursion.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .atoms import DEFAULT_NODE_LIMIT, enumerate_atoms, minimal_nonzero_vectors
from .errors import InvalidArgumentError
from .group import FiniteAbelianGroup, GroupElement, elements, tables
from .lengths import DEFAULT_MEMO_LIMIT, FactorizationEngine, LengthSet, length_set
from .sequence import Sequence, canonical_subset


@dataclass(frozen=True)
class KrullInstance:
    """A finite prime set P with a class map onto G0; H = class-sum-zero words."""

    group: FiniteAbelianGroup
    subset: tuple[GroupElement, ...]  # G0, in canonical order
    primes: tuple[str, ...]
    classes: tuple[GroupElement, ...]  # class of each prime, aligned with primes

    def __post_init__(self):
        if len(self.primes) != len(self.classes):
            raise InvalidArgumentError("one class per prime required")
        if len(set(self.primes)) != len(self.primes):
            raise InvalidArgumentError("prime labels must be distinct")
        if any(g.group != self.group for g in self.classes):
            raise InvalidArgumentError("class from a different group")
        if set(self.classes) != set(self.subset):
            raise InvalidArgumentError("class map must be surjective onto G0")

    def class_of(self, prime: str) -> GroupElement:
        return self.classes[self.primes.index(prime)]


def make_instance(
    group: FiniteAbelianGroup,
    subset=None,
    primes_per_class: int = 2,
) -> KrullInstance:
    """An instance with the given number of primes over every class of G0."""
    if primes_per_class < 1:
        raise InvalidArgumentError("need at least one prime per class")
    g0 = canonical_subset(group, elements(group) if subset is None else subset)
    primes: list[str] = []
    classes: list[GroupElement] = []
    for i, g in enumerate(g0):
        for j in range(primes_per_class):
            primes.append(f"p{i}.{j}")
            classes.append(g)
    return KrullInstance(group, g0, tuple(primes), tuple(classes))


@dataclass(frozen=True)
class PrimeWord:
    """An element of F(P), stored as sorted (prime, multiplicity) pairs."""

    items: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if any(m <= 0 for _, m in self.items):
            raise InvalidArgumentError("multiplicities must be positive")
        if tuple(sorted(self.items)) != self.items:
            raise InvalidArgumentError("items not sorted")
        if len({p for p, _ in self.items}) != len(self.items):
            raise InvalidArgumentError("duplicate prime")

    @classmethod
    def make(cls, exponents: Mapping[str, int]) -> "PrimeWord":
        return cls(tuple(sorted((p, m) for p, m in exponents.items() if m != 0)))

    @property
    def length(self) -> int:
        return sum(m for _, m in self.items)

    def dense(self, primes: tuple[str, ...]) -> tuple[int, ...]:
        pos = {p: i for i, p in enumerate(primes)}
        vec = [0] * len(primes)
        for p, m in self.items:
            if p not in pos:
                raise InvalidArgumentError(f"unknown prime {p!r}")
            vec[pos[p]] = m
        return tuple(vec)

    @classmethod
    def from_dense(cls, primes: tuple[str, ...], vec) -> "PrimeWord":
        return cls.make({p: m for p, m in zip(primes, vec) if m})

    def __mul__(self, other: "PrimeWord") -> "PrimeWord":
        exps = dict(self.items)
        for p, m in other.items:
            exps[p] = exps.get(p, 0) + m
        return PrimeWord.make(exps)

    def __str__(self):
        return "[" + ",".join(f"{p}:{m}" for p, m in self.items) + "]"


def class_sum(instance: KrullInstance, word: PrimeWord) -> GroupElement:
    facs = instance.group.invariant_factors
    total = [0] * len(facs)
    cls_by_prime = dict(zip(instance.primes, instance.classes))
    for p, m in word.items:
        g = cls_by_prime[p]
        for i, a in enumerate(g.coords):
            total[i] = (total[i] + m * a) % facs[i]
    return GroupElement(instance.group, tuple(total))


def in_monoid(instance: KrullInstance, word: PrimeWord) -> bool:
    return class_sum(instance, word) == instance.group.zero()


def beta(instance: KrullInstance, word: PrimeWord) -> Sequence:
    """Replace every prime by its class; defined exactly on H."""
    if not in_monoid(instance, word):
        raise InvalidArgumentError(f"word {word} is not in the Krull monoid")
    cls_by_prime = dict(zip(instance.primes, instance.classes))
    exps: dict[GroupElement, int] = {}
    for p, m in word.items:
        g = cls_by_prime[p]
        exps[g] = exps.get(g, 0) + m
    return Sequence.make(instance.group, exps)


@lru_cache(maxsize=None)
def instance_atoms(
    instance: KrullInstance, node_limit: int = DEFAULT_NODE_LIMIT
) -> tuple[PrimeWord, ...]:
    """Atoms of H: Dickson-minimal nonzero class-sum-zero prime vectors."""
    tab = tables(instance.group)
    letter_classes = tuple(tab.index[g] for g in instance.classes)
    vectors, _ = minimal_nonzero_vectors(instance.group, letter_classes, node_limit)
    return tuple(PrimeWord.from_dense(instance.primes, v) for v in vectors)


@lru_cache(maxsize=None)
def _instance_engine(
    instance: KrullInstance,
    node_limit: int = DEFAULT_NODE_LIMIT,
    memo_limit: int = DEFAULT_MEMO_LIMIT,
) -> FactorizationEngine:
    vectors = tuple(w.dense(instance.primes) for w in instance_atoms(instance, node_limit))
    return FactorizationEngine(vectors, memo_limit)


def direct_length_set(
    instance: KrullInstance,
    word: PrimeWord,
    node_limit: int = DEFAULT_NODE_LIMIT,
    memo_limit: int = DEFAULT_MEMO_LIMIT,
) -> LengthSet:
    """L_H(word) computed inside H, with no use of beta."""
    if not in_monoid(instance, word):
        raise InvalidArgumentError(f"word {word} is not in the Krull monoid")
    mask = _instance_engine(instance, node_limit, memo_limit).lengths_mask(
        word.dense(instance.primes)
    )
    return LengthSet.from_mask(mask)


def random_word(instance: KrullInstance, rng: random.Random, max_length: int) -> PrimeWord:
    """A random element of H of length at most max_length: draw primes
    uniformly, then append one prime fixing the class sum.  When no class
    can fix the sum (possible for proper subsets G0) the draw is retried;
    the empty word is the final fallback."""
    cls_by_prime = dict(zip(instance.primes, instance.classes))
    for _ in range(64):
        target = rng.randint(0, max(0, max_length - 1))
        exps: dict[str, int] = {}
        total = instance.group.zero()
        for _ in range(target):
            p = rng.choice(instance.primes)
            exps[p] = exps.get(p, 0) + 1
            total = total + cls_by_prime[p]
        if total == instance.group.zero():
            return PrimeWord.make(exps)
        fixers = [p for p in instance.primes if cls_by_prime[p] == -total]
        if fixers:
            p = rng.choice(fixers)
            exps[p] = exps.get(p, 0) + 1
            return PrimeWord.make(exps)
    return PrimeWord.make({})


@dataclass(frozen=True)
class TransferCheckReport:
    instance: KrullInstance
    samples: int
    seed: int
    max_word_length: int
    failures: tuple[tuple[PrimeWord, LengthSet, LengthSet], ...]

    @property
    def passes(self) -> int:
        return self.samples - len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_transfer(
    instance: KrullInstance,
    sample_count: int = 100,
    max_word_length: int = 10,
    seed: int = 0,
    node_limit: int = DEFAULT_NODE_LIMIT,
    memo_limit: int = DEFAULT_MEMO_LIMIT,
) -> TransferCheckReport:
    """Sample words of H and compare the direct length set against the length
    set of the class image; any mismatch is an implementation bug."""
    rng = random.Random(seed)
    b_atoms = enumerate_atoms(instance.group, instance.subset, node_limit)
    failures = []
    for _ in range(sample_count):
        a = random_word(instance, rng, max_word_length)
        direct = direct_length_set(instance, a, node_limit, memo_limit)
        transferred = length_set(beta(instance, a), b_atoms, memo_limit)
        if direct != transferred:
            failures.append((a, direct, transferred))
    return TransferCheckReport(
        instance, sample_count, seed, max_word_length, tuple(failures)
    )


@dataclass(frozen=True)
class AtomCorrespondenceReport:
    instance: KrullInstance
    h_atom_count: int
    b_atom_count: int
    image_mismatch: tuple[Sequence, ...]  # beta images that are not atoms of B(G0)
    unlifted: tuple[Sequence, ...]  # atoms of B(G0) missed by beta(atoms of H)

    @property
    def ok(self) -> bool:
        return not self.image_mismatch and not self.unlifted


def check_atom_correspondence(
    instance: KrullInstance, node_limit: int = DEFAULT_NODE_LIMIT
) -> AtomCorrespondenceReport:
    """Cross-enumerate: beta maps atoms of H exactly onto A(G0)."""
    h_atoms = instance_atoms(instance, node_limit)
    b_atoms = enumerate_atoms(instance.group, instance.subset, node_limit)
    b_set = set(b_atoms.atoms)
    images = {beta(instance, w) for w in h_atoms}
    mismatch = tuple(sorted((s for s in images - b_set), key=str))
    unlifted = tuple(sorted((s for s in b_set - images), key=str))
    return AtomCorrespondenceReport(
        instance, len(h_atoms), len(b_atoms.atoms), mismatch, unlifted
    )


def split_word(
    instance: KrullInstance, word: PrimeWord, part: Sequence
) -> tuple[PrimeWord, PrimeWord]:
    """Lift a zero-sum divisor of beta(word): greedily assign, class by
    class, enough primes of the word to cover the divisor's multiplicities.
    Returns (b, c) with word = b*c and beta(b) = part."""
    image = beta(instance, word)
    need = dict(part.items)
    have = dict(image.items)
    if any(need.get(g, 0) > have.get(g, 0) for g in need):
        raise InvalidArgumentError("part does not divide the class image")
    cls_by_prime = dict(zip(instance.primes, instance.classes))
    b_exps: dict[str, int] = {}
    c_exps: dict[str, int] = {}
    for p, m in word.items:
        g = cls_by_prime[p]
        take = min(m, need.get(g, 0))
        if take:
            b_exps[p] = take
            need[g] = need[g] - take
        if m - take:
            c_exps[p] = m - take
    return PrimeWord.make(b_exps), PrimeWord.make(c_exps)
