"""Whole-monoid invariants of B(G0): systems of length sets, unions U_k,
elasticities, distance sets, half-factoriality and the small-group closed
forms used as oracles.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .atoms import AtomSet, davenport, enumerate_atoms, DEFAULT_NODE_LIMIT
from .errors import InvalidArgumentError, ResourceLimitError
from .group import FiniteAbelianGroup, GroupElement, elements, order_of
from .lengths import (
    DEFAULT_MEMO_LIMIT,
    LengthSet,
    engine_for,
    length_set,
)
from .sequence import Sequence, canonical_subset, enumerate_zero_sum, sigma

DEFAULT_PRODUCT_LIMIT = 10**8
DEFAULT_SUBSET_SCAN_MAX_ORDER = 12


# -- systems of sets of lengths ------------------------------------------------


@dataclass(frozen=True)
class SystemOfLengthSets:
    """Deduplicated { L(B) : |B| <= bound } with one witness per entry.

    Witnesses are the first sequences found in the deterministic
    enumeration order, hence of minimal length for their length set.
    """

    group: FiniteAbelianGroup
    subset: tuple[GroupElement, ...]
    bound: int
    entries: tuple[tuple[LengthSet, Sequence], ...]

    def length_sets(self) -> tuple[LengthSet, ...]:
        return tuple(ls for ls, _ in self.entries)

    def witness(self, ls: LengthSet) -> Sequence:
        for cand, wit in self.entries:
            if cand == ls:
                return wit
        raise KeyError(str(ls))

    def __contains__(self, ls: LengthSet) -> bool:
        return any(cand == ls for cand, _ in self.entries)

    def __len__(self):
        return len(self.entries)


def system(
    group: FiniteAbelianGroup,
    subset=None,
    bound: int = 8,
    atoms: AtomSet | None = None,
    memo_limit: int = DEFAULT_MEMO_LIMIT,
) -> SystemOfLengthSets:
    """Exact { L(B) : B in B(G0), |B| <= bound }."""
    if bound < 0:
        raise InvalidArgumentError(f"bound must be nonnegative: {bound}")
    alphabet = canonical_subset(group, elements(group) if subset is None else subset)
    if atoms is None:
        atoms = enumerate_atoms(group, alphabet)
    engine = engine_for(atoms, memo_limit)
    found: dict[LengthSet, Sequence] = {}
    for b in enumerate_zero_sum(group, alphabet, bound):
        ls = LengthSet.from_mask(engine.lengths_mask(b.dense(alphabet)))
        if ls not in found:
            found[ls] = b
    entries = tuple(sorted(found.items(), key=lambda kv: kv[0].values))
    return SystemOfLengthSets(group, alphabet, bound, entries)


# -- closed-form systems for the five small groups ------------------------------


def _intervals(lo: int, hi: int) -> LengthSet:
    return LengthSet.of(range(lo, hi + 1))


def closed_form_system(group: FiniteAbelianGroup, max_element: int) -> frozenset[LengthSet]:
    """Every length set of the named small group whose maximum is at most
    max_element, generated from the explicit parametrizations.

    Supported groups: C3, C2+C2, C4, C2^3, C3+C3.  Overlapping families are
    deduplicated by construction of the result set.
    """
    if max_element < 0:
        raise InvalidArgumentError("max_element must be nonnegative")
    facs = group.invariant_factors
    out: set[LengthSet] = set()
    if facs in ((3,), (2, 2)):
        # { y + 2k + [0, k] }
        for k in range(max_element // 3 + 1):
            for y in range(max_element - 3 * k + 1):
                out.add(LengthSet.of(range(y + 2 * k, y + 3 * k + 1)))
    elif facs == (4,):
        # { y + k+1 + [0, k] }  and  { y + 2k + 2*[0, k] }
        for k in range((max_element + 1) // 2 + 1):
            for y in range(max_element - (2 * k + 1) + 1):
                out.add(LengthSet.of(range(y + k + 1, y + 2 * k + 2)))
        for k in range(max_element // 4 + 1):
            for y in range(max_element - 4 * k + 1):
                out.add(LengthSet.of(y + 2 * k + 2 * nu for nu in range(k + 1)))
    elif facs == (2, 2, 2):
        # { y + k+1 + [0, k] : k in [0, 2] }, { y + k + [0, k] : k >= 3 },
        # and { y + 2k + 2*[0, k] }
        for k in range(3):
            for y in range(max_element - (2 * k + 1) + 1):
                out.add(LengthSet.of(range(y + k + 1, y + 2 * k + 2)))
        for k in range(3, max_element // 2 + 1):
            for y in range(max_element - 2 * k + 1):
                out.add(LengthSet.of(range(y + k, y + 2 * k + 1)))
        for k in range(max_element // 4 + 1):
            for y in range(max_element - 4 * k + 1):
                out.add(LengthSet.of(y + 2 * k + 2 * nu for nu in range(k + 1)))
    elif facs == (3, 3):
        # { [2k, l] : l in [2k, 5k] } + { [2k+1, l] : k >= 1, l in [2k+1, 5k+2] }
        # + { {1} }
        out.add(LengthSet.of([1]))
        for k in range(max_element // 2 + 1):
            for l in range(2 * k, min(5 * k, max_element) + 1):
                out.add(_intervals(2 * k, l))
        for k in range(1, (max_element - 1) // 2 + 1):
            for l in range(2 * k + 1, min(5 * k + 2, max_element) + 1):
                out.add(_intervals(2 * k + 1, l))
    else:
        raise InvalidArgumentError(
            f"no closed-form system for {group}; supported: C3, C2+C2, C4, C2^3, C3+C3"
        )
    return frozenset(ls for ls in out if ls.max <= max_element)


@dataclass(frozen=True)
class SystemComparison:
    """Result of checking brute force against a closed-form system."""

    group: FiniteAbelianGroup
    bound: int
    frontier: int  # closed-form sets with D(G)*min L <= frontier must appear
    computed_not_in_family: tuple[LengthSet, ...]
    missing_at_frontier: tuple[LengthSet, ...]

    @property
    def ok(self) -> bool:
        return not self.computed_not_in_family and not self.missing_at_frontier


def compare_with_closed_form(
    group: FiniteAbelianGroup,
    bound: int,
    atoms: AtomSet | None = None,
    sys: SystemOfLengthSets | None = None,
) -> SystemComparison:
    """Two-sided check of system(G, bound) against the closed form.

    Soundness needs no frontier: each computed L(B) is complete, so it must
    be a member of the family.  Completeness is only demanded of family
    sets guaranteed a witness within the bound: a set L has a witness of
    length at most D(G)*min L, and a D(G) margin is kept to stay clear of
    the truncation frontier.
    """
    if atoms is None:
        atoms = enumerate_atoms(group)
    if sys is None:
        sys = system(group, None, bound, atoms)
    dav, _ = davenport(group, atoms)
    computed = set(sys.length_sets())
    family = closed_form_system(group, max(bound, max((ls.max for ls in computed), default=0)))
    frontier = bound - dav
    not_in_family = tuple(
        sorted((ls for ls in computed if ls not in family), key=lambda ls: ls.values)
    )
    missing = tuple(
        sorted(
            (
                ls
                for ls in family
                if dav * ls.min <= frontier and ls not in computed
            ),
            key=lambda ls: ls.values,
        )
    )
    return SystemComparison(group, bound, frontier, not_in_family, missing)


# -- unions of sets of lengths ---------------------------------------------------


@dataclass(frozen=True)
class UnionOfLengths:
    """U_k with its extremes rho_k = max and lambda_k = min."""

    k: int
    values: tuple[int, ...]

    @property
    def rho(self) -> int:
        return self.values[-1]

    @property
    def lam(self) -> int:
        return self.values[0]

    def is_interval(self) -> bool:
        return self.rho - self.lam + 1 == len(self.values)


def unions_range(
    group: FiniteAbelianGroup,
    k_max: int,
    atoms: AtomSet | None = None,
    product_limit: int = DEFAULT_PRODUCT_LIMIT,
    memo_limit: int = DEFAULT_MEMO_LIMIT,
) -> dict[int, UnionOfLengths]:
    """U_k for all k in [1, k_max].

    U_k is the union of L(B) over products B of exactly k atoms, which is
    complete because any B with k in L(B) is such a product.  Products are
    built level by level and deduplicated by canonical exponent vector
    before hitting the factorization engine.
    """
    if k_max < 1:
        raise InvalidArgumentError(f"k must be positive: {k_max}")
    if atoms is None:
        atoms = enumerate_atoms(group)
    n_atoms = len(atoms)
    if math.comb(n_atoms + k_max - 1, k_max) > product_limit:
        raise ResourceLimitError("atom multiset count", product_limit)
    engine = engine_for(atoms, memo_limit)
    atom_vectors = atoms.vectors()
    out: dict[int, UnionOfLengths] = {}
    level: set[tuple[int, ...]] = {(0,) * len(atoms.subset)}
    for k in range(1, k_max + 1):
        level = {
            tuple(x + y for x, y in zip(b, a)) for b in level for a in atom_vectors
        }
        if len(level) > product_limit:
            raise ResourceLimitError("distinct atom products", product_limit)
        union_mask = 0
        for vec in level:
            union_mask |= engine.lengths_mask(vec)
        out[k] = UnionOfLengths(k, LengthSet.from_mask(union_mask).values)
    return out


def union_k(group: FiniteAbelianGroup, k: int, atoms: AtomSet | None = None, **kw) -> UnionOfLengths:
    return unions_range(group, k, atoms, **kw)[k]


def rho_k(group: FiniteAbelianGroup, k: int, atoms: AtomSet | None = None, **kw) -> int:
    return union_k(group, k, atoms, **kw).rho


def lambda_k(group: FiniteAbelianGroup, k: int, atoms: AtomSet | None = None, **kw) -> int:
    return union_k(group, k, atoms, **kw).lam


def elasticity(
    group: FiniteAbelianGroup,
    atoms: AtomSet | None = None,
    cross_check: bool = False,
) -> Fraction:
    """rho(G) = D(G)/2 for |G| >= 3; half-factorial groups have elasticity 1.

    With cross_check the closed form is validated by brute force: the
    witness (-U)U for a longest atom U must attain the value, and no
    length set of a bounded scan may exceed it.
    """
    if group.order <= 2:
        return Fraction(1)
    if atoms is None:
        atoms = enumerate_atoms(group)
    dav, longest = davenport(group, atoms)
    value = Fraction(dav, 2)
    if cross_check:
        from .sequence import mul, negate  # local import avoids a cycle

        engine = engine_for(atoms)
        witness = mul(longest, negate(longest))
        attained = LengthSet.from_mask(
            engine.lengths_mask(witness.dense(atoms.subset))
        )
        if Fraction(attained.max, attained.min) != value:
            raise RuntimeError(
                f"elasticity witness {witness} gives {attained}, not {value}"
            )
        for b in enumerate_zero_sum(group, atoms.subset, min(2 * dav, 10)):
            if b.length == 0:
                continue
            ls = LengthSet.from_mask(engine.lengths_mask(b.dense(atoms.subset)))
            if ls.min and Fraction(ls.max, ls.min) > value:
                raise RuntimeError(f"{b} exceeds the closed-form elasticity")
    return value


# -- distance sets ----------------------------------------------------------------


@dataclass(frozen=True)
class DeltaReport:
    """Observed distances of B(G0) up to a bound, with a stability flag."""

    group: FiniteAbelianGroup
    subset: tuple[GroupElement, ...]
    bound: int
    distances: tuple[int, ...]
    exact: bool  # interval starting at 1 and stable across a D(G)-wide window


def delta_of_group(
    group: FiniteAbelianGroup,
    subset=None,
    bound: int = 8,
    atoms: AtomSet | None = None,
    memo_limit: int = DEFAULT_MEMO_LIMIT,
) -> DeltaReport:
    """Union of Delta(L(B)) over |B| <= bound; a lower approximation of the
    distance set, flagged exact only under the stability heuristic."""
    alphabet = canonical_subset(group, elements(group) if subset is None else subset)
    if atoms is None:
        atoms = enumerate_atoms(group, alphabet)
    engine = engine_for(atoms, memo_limit)
    dav, _ = davenport(group)
    margin = max(bound - dav, 0)
    acc: set[int] = set()
    acc_margin: set[int] = set()
    for b in enumerate_zero_sum(group, alphabet, bound):
        vals = LengthSet.from_mask(engine.lengths_mask(b.dense(alphabet))).values
        gaps = {y - x for x, y in zip(vals, vals[1:])}
        acc |= gaps
        if b.length <= margin:
            acc_margin |= gaps
    distances = tuple(sorted(acc))
    full_group = alphabet == elements(group)
    is_interval_from_1 = bool(distances) and distances == tuple(range(1, distances[-1] + 1))
    stable = bool(distances) and acc_margin and max(acc_margin) == distances[-1]
    exact = full_group and ((not distances and group.order <= 2) or (is_interval_from_1 and stable))
    return DeltaReport(group, alphabet, bound, distances, exact)


@dataclass(frozen=True)
class DeltaStarReport:
    """Approximation of the set of minimal distances over all subsets."""

    group: FiniteAbelianGroup
    bound: int
    values: tuple[int, ...]
    subsets_scanned: int


def delta_star(
    group: FiniteAbelianGroup,
    bound: int = 8,
    max_group_order: int = DEFAULT_SUBSET_SCAN_MAX_ORDER,
    node_limit: int = DEFAULT_NODE_LIMIT,
    memo_limit: int = DEFAULT_MEMO_LIMIT,
) -> DeltaStarReport:
    """For every subset G0 with a nonempty observed distance set, record the
    gcd of its observed distances (min Delta = gcd Delta), and aggregate.

    The scan is 2^|G|, so the group order is capped.
    """
    els = elements(group)
    if len(els) > max_group_order:
        raise ResourceLimitError("subset scan group order", max_group_order, len(els))
    values: set[int] = set()
    scanned = 0
    for mask in range(1, 1 << len(els)):
        subset = tuple(g for i, g in enumerate(els) if mask >> i & 1)
        scanned += 1
        atoms = enumerate_atoms(group, subset, node_limit=node_limit)
        engine = engine_for(atoms, memo_limit)
        acc: set[int] = set()
        for b in enumerate_zero_sum(group, subset, bound):
            vals = LengthSet.from_mask(engine.lengths_mask(b.dense(subset))).values
            acc.update(y - x for x, y in zip(vals, vals[1:]))
        if acc:
            values.add(math.gcd(*acc))
    return DeltaStarReport(group, bound, tuple(sorted(values)), scanned)


# -- half-factoriality and the {2, D(G)} criterion --------------------------------


@dataclass(frozen=True)
class HalfFactorialVerdict:
    kind: str  # "yes-exact" | "no-with-witness" | "yes-up-to-bound"
    witness: Sequence | None = None
    witness_lengths: LengthSet | None = None

    @property
    def is_half_factorial(self) -> bool:
        return self.kind != "no-with-witness"


def is_half_factorial(
    group: FiniteAbelianGroup,
    subset=None,
    bound: int = 8,
    memo_limit: int = DEFAULT_MEMO_LIMIT,
) -> HalfFactorialVerdict:
    """Exact for G0 = G via the |G| <= 2 criterion, with the classical
    witness relation otherwise; bounded scan for proper subsets."""
    alphabet = canonical_subset(group, elements(group) if subset is None else subset)
    full = alphabet == elements(group)
    if full:
        if group.order <= 2:
            return HalfFactorialVerdict("yes-exact")
        g = next((h for h in alphabet if order_of(h) >= 3), None)
        if g is not None:
            n = order_of(g)
            witness = Sequence.make(group, {g: n, -g: n})  # (-U)U = V^n
        else:
            e1, e2 = [h for h in alphabet if order_of(h) == 2][:2]
            witness = Sequence.make(group, {e1: 2, e2: 2, e1 + e2: 2})  # U^2 = V0V1V2
        atoms = enumerate_atoms(group, alphabet)
        ls = length_set(witness, atoms, memo_limit)
        return HalfFactorialVerdict("no-with-witness", witness, ls)
    atoms = enumerate_atoms(group, alphabet)
    engine = engine_for(atoms, memo_limit)
    for b in enumerate_zero_sum(group, alphabet, bound):
        mask = engine.lengths_mask(b.dense(alphabet))
        if mask.bit_count() > 1:
            return HalfFactorialVerdict(
                "no-with-witness", b, LengthSet.from_mask(mask)
            )
    return HalfFactorialVerdict("yes-up-to-bound")


@dataclass(frozen=True)
class TwoDavenportReport:
    """Search result for a length set equal to {2, D(G)}."""

    group: FiniteAbelianGroup
    davenport: int
    found: bool
    witness: Sequence | None
    pairs_scanned: int


def has_two_D_lengthset(
    group: FiniteAbelianGroup,
    atoms: AtomSet | None = None,
    memo_limit: int = DEFAULT_MEMO_LIMIT,
) -> TwoDavenportReport:
    """Scan products of two atoms for L = {2, D(G)} exactly.

    The scan is complete: min {2, D} = 2 forces any witness to be a product
    of two atoms.  Pairs are tried longest first so positive cases exit
    early; exhausting the scan certifies a negative answer.
    """
    if atoms is None:
        atoms = enumerate_atoms(group)
    dav, _ = davenport(group, atoms)
    engine = engine_for(atoms, memo_limit)
    target = LengthSet.of([2, dav]).to_mask()
    ordered = sorted(atoms.vectors(), key=lambda v: -sum(v))
    seen: set[tuple[int, ...]] = set()
    scanned = 0
    for i, u in enumerate(ordered):
        for v in ordered[i:]:
            prod = tuple(x + y for x, y in zip(u, v))
            if prod in seen:
                continue
            seen.add(prod)
            scanned += 1
            if engine.lengths_mask(prod) == target:
                witness = Sequence.make(
                    group, {atoms.subset[j]: m for j, m in enumerate(prod) if m}
                )
                return TwoDavenportReport(group, dav, True, witness, scanned)
    return TwoDavenportReport(group, dav, False, None, scanned)


# -- interval criterion sampling (subgroup support) --------------------------------


def all_subgroups(group: FiniteAbelianGroup) -> list[tuple[GroupElement, ...]]:
    """All subgroups, found by closing generator sets upward from {0}."""
    els = elements(group)
    zero = group.zero()

    def closure(gens: frozenset[GroupElement]) -> frozenset[GroupElement]:
        out = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    s = h + g
                    if s not in out:
                        out.add(s)
                        nxt.append(s)
            frontier = nxt
        return frozenset(out)

    subgroups = {frozenset([zero])}
    frontier = [frozenset([zero])]
    while frontier:
        nxt = []
        for sub in frontier:
            for g in els:
                if g not in sub:
                    bigger = closure(frozenset(sub | {g}))
                    if bigger not in subgroups:
                        subgroups.add(bigger)
                        nxt.append(bigger)
        frontier = nxt
    return [tuple(sorted(s, key=lambda g: g.coords)) for s in sorted(subgroups, key=lambda s: (len(s), sorted(g.coords for g in s)))]


@dataclass(frozen=True)
class IntervalSupportReport:
    group: FiniteAbelianGroup
    samples: int
    seed: int
    failures: tuple[tuple[Sequence, LengthSet], ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def interval_support_check(
    group: FiniteAbelianGroup,
    samples: int = 100,
    seed: int = 0,
    max_extra_length: int = 8,
    memo_limit: int = DEFAULT_MEMO_LIMIT,
) -> IntervalSupportReport:
    """Sample zero-sum sequences whose support together with 0 is a subgroup
    and check every L(A) is an interval.  A failure would expose an
    implementation bug, not a gap in the underlying theory."""
    rng = random.Random(seed)
    subgroups = [s for s in all_subgroups(group) if len(s) >= 2]
    if not subgroups:
        subgroups = [tuple([group.zero()])]
    atoms = enumerate_atoms(group)
    failures: list[tuple[Sequence, LengthSet]] = []
    for _ in range(samples):
        sub = rng.choice(subgroups)
        nonzero = [g for g in sub if g != group.zero()]
        exps = {g: rng.randint(1, 3) for g in nonzero}
        if rng.random() < 0.5:
            exps[group.zero()] = rng.randint(1, 2)
        for _ in range(rng.randint(0, max_extra_length)):
            g = rng.choice(list(sub))
            if g != group.zero():
                exps[g] = exps.get(g, 0) + 1
        a = Sequence.make(group, exps)
        s = sigma(a)
        if s != group.zero():
            exps[-s] = exps.get(-s, 0) + 1
            a = Sequence.make(group, exps)
        ls = length_set(a, atoms, memo_limit)
        if not ls.is_interval():
            failures.append((a, ls))
    return IntervalSupportReport(group, samples, seed, tuple(failures))
